#include "misere/StarAlgebra.hpp"

#include <algorithm>
#include <mutex>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "misere/Quotient.hpp"

namespace misere {

namespace {

class StarBuiltCache {
  public:
    const bool* find(PositionId key) const {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = map_.find(key);
        return it == map_.end() ? nullptr : &it->second;
    }
    void insert(PositionId key, bool value) {
        std::lock_guard<std::mutex> lock(mutex_);
        map_.emplace(key, value);
    }

  private:
    mutable std::mutex mutex_;
    std::unordered_map<PositionId, bool> map_;
};

bool star_built_impl(PositionId p) {
    static StarBuiltCache cache;
    if (const bool* hit = cache.find(p)) return *hit;

    bool result = false;
    if (p == star()) {
        result = true;
    } else {
        const Position& pos = fetch(p);
        switch (misere_outcome(p)) {
            case Outcome::P: {
                result = !pos.left.empty() && !pos.right.empty();
                for (const auto* side : {&pos.left, &pos.right}) {
                    for (PositionId opt : *side) {
                        if (misere_outcome(opt) != Outcome::N ||
                            (opt != zero() && !star_built_impl(opt))) {
                            result = false;
                        }
                    }
                }
                break;
            }
            case Outcome::N: {
                result = p != zero() && (!pos.left.empty() || !pos.right.empty());
                for (const auto* side : {&pos.left, &pos.right}) {
                    for (PositionId opt : *side) {
                        if (misere_outcome(opt) != Outcome::P || !star_built_impl(opt)) {
                            result = false;
                        }
                    }
                }
                break;
            }
            default:
                result = false;
        }
    }
    cache.insert(p, result);
    return result;
}

}  // namespace

bool is_star_built(PositionId p) { return star_built_impl(p); }

StarImage star_image(PositionId p) {
    if (p != zero() && !is_star_built(p)) {
        throw std::invalid_argument("position is neither 0 nor star-built");
    }
    return misere_outcome(p) == Outcome::N ? StarImage::One : StarImage::A;
}

Outcome sum_outcome_via_star(const std::vector<PositionId>& components) {
    bool odd = false;
    for (PositionId p : components) {
        if (star_image(p) == StarImage::A) {
            odd = !odd;
        }
    }
    return odd ? Outcome::P : Outcome::N;
}

std::vector<PositionId> enumerate_star_built(int day, int cap) {
    if (day > cap) {
        throw std::length_error("enumeration beyond the day cap is not feasible");
    }
    if (day < 1) {
        return {};
    }

    // option pool: 0 plus every star-built position of earlier days
    std::vector<PositionId> pool = {zero(), star()};
    std::set<PositionId> found = {star()};
    for (int birthday = 2; birthday <= day; ++birthday) {
        if (pool.size() > 20) {
            throw std::length_error("option pool too large to enumerate");
        }
        std::set<PositionId> born;
        const std::size_t masks = std::size_t{1} << pool.size();
        for (std::size_t lmask = 0; lmask < masks; ++lmask) {
            for (std::size_t rmask = 0; rmask < masks; ++rmask) {
                if (lmask == 0 && rmask == 0) continue;
                std::vector<PositionId> left, right;
                for (std::size_t i = 0; i < pool.size(); ++i) {
                    if (lmask & (std::size_t{1} << i)) left.push_back(pool[i]);
                    if (rmask & (std::size_t{1} << i)) right.push_back(pool[i]);
                }
                const PositionId candidate = build(left, right);
                if (profile(candidate).birthday == birthday && is_star_built(candidate)) {
                    born.insert(candidate);
                }
            }
        }
        for (PositionId p : born) {
            pool.push_back(p);
            found.insert(p);
        }
    }

    std::vector<PositionId> result;
    for (PositionId p : found) {
        if (profile(p).birthday == day) {
            result.push_back(p);
        }
    }
    std::sort(result.begin(), result.end(), structural_less);
    return result;
}

StarIsoReport star_iso_check(const std::vector<PositionId>& generators, int sum_bound) {
    StarIsoReport rep;
    bool nonzero = false;
    for (PositionId g : generators) {
        if (g != zero()) {
            nonzero = true;
            break;
        }
    }
    if (!nonzero) {
        rep.violation = StarIsoViolation{1, SumPosition{}, std::nullopt};
        return rep;
    }

    const ClosureBase cb = option_closure(generators);
    for (const SumPosition& element : enumerate_sums(cb, sum_bound)) {
        const Outcome o = misere_outcome(element);
        if (o != Outcome::N && o != Outcome::P) {
            rep.violation = StarIsoViolation{2, element, std::nullopt};
            return rep;
        }
        if (o == Outcome::N) {
            for (bool left : {true, false}) {
                for (const SumPosition& option : sum_options(element, left)) {
                    if (misere_outcome(option) == Outcome::N) {
                        rep.violation = StarIsoViolation{3, element, option};
                        return rep;
                    }
                }
            }
        }
    }
    rep.passes = true;
    return rep;
}

}  // namespace misere
