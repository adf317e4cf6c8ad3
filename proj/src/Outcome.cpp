#include "misere/Outcome.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace misere {

char outcome_char(Outcome o) {
    switch (o) {
        case Outcome::L: return 'L';
        case Outcome::R: return 'R';
        case Outcome::N: return 'N';
        case Outcome::P: return 'P';
    }
    throw std::invalid_argument("unknown outcome");
}

Outcome swap_lr(Outcome o) {
    switch (o) {
        case Outcome::L: return Outcome::R;
        case Outcome::R: return Outcome::L;
        default: return o;
    }
}

OrderRel outcome_cmp(Outcome a, Outcome b) {
    if (a == b) return OrderRel::Equal;
    if (a == Outcome::L || b == Outcome::R) return OrderRel::Greater;
    if (a == Outcome::R || b == Outcome::L) return OrderRel::Less;
    return OrderRel::Incomparable;
}

bool outcome_geq(Outcome a, Outcome b) {
    const OrderRel rel = outcome_cmp(a, b);
    return rel == OrderRel::Equal || rel == OrderRel::Greater;
}

std::size_t SumPositionHash::operator()(const SumPosition& s) const {
    std::size_t h = 1469598103934665603ull;
    for (PositionId id : s.components) {
        h ^= id + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
}

SumPosition make_sum(std::vector<PositionId> components) {
    const PositionId z = zero();
    components.erase(std::remove(components.begin(), components.end(), z), components.end());
    std::sort(components.begin(), components.end());
    return SumPosition{std::move(components)};
}

SumPosition sum_add(const SumPosition& s, PositionId extra) {
    if (extra == zero()) return s;
    SumPosition result = s;
    result.components.insert(
        std::upper_bound(result.components.begin(), result.components.end(), extra), extra);
    return result;
}

SumPosition sum_concat(const SumPosition& a, const SumPosition& b) {
    std::vector<PositionId> components(a.components);
    components.insert(components.end(), b.components.begin(), b.components.end());
    std::sort(components.begin(), components.end());
    return SumPosition{std::move(components)};
}

SumPosition conjugate_sum(const SumPosition& s) {
    std::vector<PositionId> components;
    components.reserve(s.components.size());
    for (PositionId p : s.components) components.push_back(conjugate(p));
    return make_sum(std::move(components));
}

std::vector<SumPosition> sum_options(const SumPosition& s, bool left_to_move) {
    std::vector<SumPosition> out;
    for (std::size_t i = 0; i < s.components.size(); ++i) {
        if (i > 0 && s.components[i] == s.components[i - 1]) continue;
        const Position& pos = fetch(s.components[i]);
        const std::vector<PositionId>& options = left_to_move ? pos.left : pos.right;
        for (PositionId option : options) {
            SumPosition next = s;
            next.components.erase(next.components.begin() + static_cast<std::ptrdiff_t>(i));
            next = sum_add(next, option);
            out.push_back(std::move(next));
        }
    }
    return out;
}

namespace {

class OutcomeCache {
  public:
    const Outcome* find(const SumPosition& key) const {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = map_.find(key);
        return it == map_.end() ? nullptr : &it->second;
    }
    void insert(const SumPosition& key, Outcome value) {
        std::lock_guard<std::mutex> lock(mutex_);
        map_.emplace(key, value);
    }

  private:
    mutable std::mutex mutex_;
    std::unordered_map<SumPosition, Outcome, SumPositionHash> map_;
};

template <bool Misere>
Outcome sum_outcome(const SumPosition& s);

// Whether the mover wins the sum. A move replaces one component by one of
// the mover's options in it; the mover wins by reaching a position the
// opponent loses moving from, an L one if Left just moved or an R one if
// Right did, or a P one either way.
template <bool Misere, bool LeftToMove>
bool mover_wins(const SumPosition& s) {
    bool any_move = false;
    const PositionId z = zero();
    for (std::size_t i = 0; i < s.components.size(); ++i) {
        if (i > 0 && s.components[i] == s.components[i - 1]) continue;
        const Position& pos = fetch(s.components[i]);
        const std::vector<PositionId>& options = LeftToMove ? pos.left : pos.right;
        for (PositionId option : options) {
            any_move = true;
            SumPosition next = s;
            next.components.erase(next.components.begin() + static_cast<std::ptrdiff_t>(i));
            if (option != z) {
                next.components.insert(
                    std::upper_bound(next.components.begin(), next.components.end(), option),
                    option);
            }
            const Outcome o = sum_outcome<Misere>(next);
            if (o == Outcome::P || o == (LeftToMove ? Outcome::L : Outcome::R)) return true;
        }
    }
    if (!any_move) return Misere;
    return false;
}

template <bool Misere>
Outcome sum_outcome(const SumPosition& s) {
    static OutcomeCache cache;
    if (const Outcome* hit = cache.find(s)) return *hit;
    const bool left_wins = mover_wins<Misere, true>(s);
    const bool right_wins = mover_wins<Misere, false>(s);
    Outcome result;
    if (left_wins && right_wins) {
        result = Outcome::N;
    } else if (left_wins) {
        result = Outcome::L;
    } else if (right_wins) {
        result = Outcome::R;
    } else {
        result = Outcome::P;
    }
    cache.insert(s, result);
    return result;
}

}  // namespace

Outcome misere_outcome(const SumPosition& s) { return sum_outcome<true>(s); }

Outcome misere_outcome(PositionId p) { return sum_outcome<true>(make_sum({p})); }

Outcome normal_outcome(const SumPosition& s) { return sum_outcome<false>(s); }

Outcome normal_outcome(PositionId p) { return sum_outcome<false>(make_sum({p})); }

}  // namespace misere
