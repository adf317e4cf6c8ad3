#include "misere/Position.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <shared_mutex>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace misere {

namespace {

std::uint64_t hash_options(const std::vector<PositionId>& left,
                           const std::vector<PositionId>& right) {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](std::uint64_t v) {
        h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    };
    mix(left.size());
    for (PositionId id : left) mix(id);
    mix(0xabcdefull);
    for (PositionId id : right) mix(id);
    return h;
}

// Append-only interned store. Insertions are linearized by the mutex; reads
// of already-interned entries need no lock because deque elements never move.
struct Store {
    std::deque<Position> positions;
    std::unordered_multimap<std::uint64_t, PositionId> index;
    mutable std::shared_mutex mutex;
};

Store& store() {
    static Store s;
    return s;
}

void canonicalize(std::vector<PositionId>& options) {
    std::sort(options.begin(), options.end());
    options.erase(std::unique(options.begin(), options.end()), options.end());
}

template <typename K, typename V>
class Cache {
  public:
    std::optional<V> find(const K& key) const {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = map_.find(key);
        if (it == map_.end()) return std::nullopt;
        return it->second;
    }
    void insert(const K& key, const V& value) {
        std::lock_guard<std::mutex> lock(mutex_);
        map_.emplace(key, value);
    }

  private:
    mutable std::mutex mutex_;
    std::unordered_map<K, V> map_;
};

std::uint64_t pair_key(PositionId a, PositionId b) {
    return (static_cast<std::uint64_t>(a) << 32) | b;
}

}  // namespace

PositionId build(std::vector<PositionId> left, std::vector<PositionId> right) {
    canonicalize(left);
    canonicalize(right);
    Store& s = store();
    std::unique_lock<std::shared_mutex> lock(s.mutex);
    const std::size_t size = s.positions.size();
    for (PositionId id : left) {
        if (id >= size) throw std::out_of_range("unknown Left option id");
    }
    for (PositionId id : right) {
        if (id >= size) throw std::out_of_range("unknown Right option id");
    }
    const std::uint64_t h = hash_options(left, right);
    auto [lo, hi] = s.index.equal_range(h);
    for (auto it = lo; it != hi; ++it) {
        const Position& p = s.positions[it->second];
        if (p.left == left && p.right == right) return it->second;
    }
    const PositionId id = static_cast<PositionId>(size);
    s.positions.push_back(Position{std::move(left), std::move(right)});
    s.index.emplace(h, id);
    return id;
}

const Position& fetch(PositionId id) {
    Store& s = store();
    std::shared_lock<std::shared_mutex> lock(s.mutex);
    if (id >= s.positions.size()) throw std::out_of_range("unknown position id");
    return s.positions[id];
}

std::size_t store_size() {
    Store& s = store();
    std::shared_lock<std::shared_mutex> lock(s.mutex);
    return s.positions.size();
}

PositionId zero() { return build({}, {}); }

PositionId star() {
    const PositionId z = zero();
    return build({z}, {z});
}

PositionId named(NamedPosition name, int k) {
    const bool indexed = name == NamedPosition::StarN || name == NamedPosition::TauN;
    if (!indexed && k != 0) throw std::invalid_argument("index given for a non-indexed name");
    switch (name) {
        case NamedPosition::Zero:
            return zero();
        case NamedPosition::Star:
            return star();
        case NamedPosition::StarN: {
            if (k < 1) throw std::invalid_argument("star index must be at least 1");
            std::vector<PositionId> options{zero()};
            for (int i = 1; i < k; ++i) options.push_back(named(NamedPosition::StarN, i));
            return build(options, options);
        }
        case NamedPosition::One:
            return build({zero()}, {});
        case NamedPosition::OneBar:
            return build({}, {zero()});
        case NamedPosition::Sigma:
            return build({star()}, {});
        case NamedPosition::SigmaBar:
            return build({}, {star()});
        case NamedPosition::Rho:
            return build({star()}, {zero()});
        case NamedPosition::RhoBar:
            return build({zero()}, {star()});
        case NamedPosition::Tau:
            return build({star()}, {star()});
        case NamedPosition::TauN: {
            if (k < 0) throw std::invalid_argument("tau index must be at least 0");
            if (k == 0) return star();
            const PositionId prev = named(NamedPosition::TauN, k - 1);
            return build({prev}, {prev});
        }
        case NamedPosition::Eta: {
            const PositionId inner = build({zero()}, {named(NamedPosition::Rho)});
            return build({inner}, {star()});
        }
        case NamedPosition::Theta: {
            const PositionId l = build({star()}, {named(NamedPosition::Rho)});
            const PositionId r = build({named(NamedPosition::RhoBar)}, {star()});
            return build({l}, {r});
        }
    }
    throw std::invalid_argument("unknown position name");
}

PositionId conjugate(PositionId p) {
    static Cache<PositionId, PositionId> cache;
    if (auto hit = cache.find(p)) return *hit;
    const Position& pos = fetch(p);
    std::vector<PositionId> left, right;
    left.reserve(pos.right.size());
    right.reserve(pos.left.size());
    for (PositionId r : pos.right) left.push_back(conjugate(r));
    for (PositionId l : pos.left) right.push_back(conjugate(l));
    const PositionId result = build(std::move(left), std::move(right));
    cache.insert(p, result);
    return result;
}

PositionId adjoint(PositionId p) {
    static Cache<PositionId, PositionId> cache;
    if (auto hit = cache.find(p)) return *hit;
    const Position& pos = fetch(p);
    PositionId result;
    if (pos.left.empty() && pos.right.empty()) {
        result = star();
    } else if (pos.left.empty()) {
        std::vector<PositionId> left;
        for (PositionId r : pos.right) left.push_back(adjoint(r));
        result = build(std::move(left), {zero()});
    } else if (pos.right.empty()) {
        std::vector<PositionId> right;
        for (PositionId l : pos.left) right.push_back(adjoint(l));
        result = build({zero()}, std::move(right));
    } else {
        std::vector<PositionId> left, right;
        for (PositionId r : pos.right) left.push_back(adjoint(r));
        for (PositionId l : pos.left) right.push_back(adjoint(l));
        result = build(std::move(left), std::move(right));
    }
    cache.insert(p, result);
    return result;
}

namespace {

// Longest alternating move path starting with a Left (resp. Right) move.
int alt_path_from_left(PositionId p);
int alt_path_from_right(PositionId p);

int alt_path_from_left(PositionId p) {
    static Cache<PositionId, int> cache;
    if (auto hit = cache.find(p)) return *hit;
    int best = 0;
    for (PositionId l : fetch(p).left) best = std::max(best, 1 + alt_path_from_right(l));
    cache.insert(p, best);
    return best;
}

int alt_path_from_right(PositionId p) {
    static Cache<PositionId, int> cache;
    if (auto hit = cache.find(p)) return *hit;
    int best = 0;
    for (PositionId r : fetch(p).right) best = std::max(best, 1 + alt_path_from_left(r));
    cache.insert(p, best);
    return best;
}

}  // namespace

const StructuralProfile& profile(PositionId p) {
    static std::mutex mutex;
    static std::unordered_map<PositionId, StructuralProfile> cache;
    {
        std::lock_guard<std::mutex> lock(mutex);
        auto it = cache.find(p);
        if (it != cache.end()) return it->second;
    }
    const Position& pos = fetch(p);
    StructuralProfile result;
    result.left_end = pos.left.empty();
    result.right_end = pos.right.empty();
    result.impartial = pos.left == pos.right;
    result.all_small = pos.left.empty() == pos.right.empty();
    result.binary = pos.left.size() <= 1 && pos.right.size() <= 1;
    int birthday = 0;
    for (PositionId option : pos.left) {
        const StructuralProfile& child = profile(option);
        birthday = std::max(birthday, child.birthday + 1);
        result.impartial = result.impartial && child.impartial;
        result.all_small = result.all_small && child.all_small;
        result.binary = result.binary && child.binary;
    }
    for (PositionId option : pos.right) {
        const StructuralProfile& child = profile(option);
        birthday = std::max(birthday, child.birthday + 1);
        result.all_small = result.all_small && child.all_small;
        result.binary = result.binary && child.binary;
    }
    result.birthday = birthday;
    if (result.all_small && result.binary) {
        // Longest alternating path anywhere in the tree, not only from the
        // root, so every option of an ab-n position is again ab-n.
        int rank = std::max(alt_path_from_left(p), alt_path_from_right(p));
        for (PositionId option : pos.left) rank = std::max(rank, *profile(option).ab_rank);
        for (PositionId option : pos.right) rank = std::max(rank, *profile(option).ab_rank);
        result.ab_rank = rank;
    }
    std::lock_guard<std::mutex> lock(mutex);
    return cache.emplace(p, result).first->second;
}

PositionId alt_sum(SumKind kind, PositionId a, PositionId b) {
    if (kind == SumKind::Disjunctive) {
        throw std::invalid_argument("disjunctive sums are multisets, not compiled trees");
    }
    static Cache<std::uint64_t, PositionId> cache;
    const std::uint64_t key =
        (static_cast<std::uint64_t>(kind) << 58) ^ (static_cast<std::uint64_t>(a) << 29) ^ b;
    if (auto hit = cache.find(key)) return *hit;

    const Position& pa = fetch(a);
    const Position& pb = fetch(b);
    std::vector<PositionId> left, right;

    // One side of the compound, built from the mover's option sets sa (in a)
    // and sb (in b). The rules differ only in how a moveless component is
    // treated, so each operator is expressed through this helper.
    auto fill = [&](const std::vector<PositionId>& sa, const std::vector<PositionId>& sb,
                    std::vector<PositionId>& out) {
        switch (kind) {
            case SumKind::And:
                for (PositionId x : sa)
                    for (PositionId y : sb) out.push_back(alt_sum(kind, x, y));
                break;
            case SumKind::Or:
                // Play ends as soon as one component offers the mover
                // nothing, so a half-dead compound has no moves at all.
                if (sa.empty() || sb.empty()) break;
                for (PositionId x : sa) out.push_back(alt_sum(kind, x, b));
                for (PositionId y : sb) out.push_back(alt_sum(kind, a, y));
                for (PositionId x : sa)
                    for (PositionId y : sb) out.push_back(alt_sum(kind, x, y));
                break;
            case SumKind::DisAnd:
                if (sa.empty()) {
                    out = sb;
                } else if (sb.empty()) {
                    out = sa;
                } else {
                    for (PositionId x : sa) out.push_back(alt_sum(kind, x, b));
                    for (PositionId y : sb) out.push_back(alt_sum(kind, a, y));
                }
                break;
            case SumKind::DisOr:
                if (sa.empty()) {
                    out = sb;
                } else if (sb.empty()) {
                    out = sa;
                } else {
                    for (PositionId x : sa) out.push_back(alt_sum(kind, x, b));
                    for (PositionId y : sb) out.push_back(alt_sum(kind, a, y));
                    for (PositionId x : sa)
                        for (PositionId y : sb) out.push_back(alt_sum(kind, x, y));
                }
                break;
            case SumKind::SeqJoin:
                if (sa.empty()) {
                    out = sb;
                } else {
                    for (PositionId x : sa) out.push_back(alt_sum(kind, x, b));
                }
                break;
            case SumKind::Ordinal:
                out = sa;
                for (PositionId y : sb) out.push_back(alt_sum(kind, a, y));
                break;
            case SumKind::Disjunctive:
                break;
        }
    };
    fill(pa.left, pb.left, left);
    fill(pa.right, pb.right, right);
    const PositionId result = build(std::move(left), std::move(right));
    cache.insert(key, result);
    return result;
}

PositionId compile_disjunctive(PositionId a, PositionId b) {
    if (a == zero()) return b;
    if (b == zero()) return a;
    static Cache<std::uint64_t, PositionId> cache;
    const std::uint64_t key = pair_key(std::min(a, b), std::max(a, b));
    if (auto hit = cache.find(key)) return *hit;
    const Position& pa = fetch(a);
    const Position& pb = fetch(b);
    std::vector<PositionId> left, right;
    for (PositionId x : pa.left) left.push_back(compile_disjunctive(x, b));
    for (PositionId y : pb.left) left.push_back(compile_disjunctive(a, y));
    for (PositionId x : pa.right) right.push_back(compile_disjunctive(x, b));
    for (PositionId y : pb.right) right.push_back(compile_disjunctive(a, y));
    const PositionId result = build(std::move(left), std::move(right));
    cache.insert(key, result);
    return result;
}

const std::string& structural_key(PositionId p) {
    static std::mutex mutex;
    static std::unordered_map<PositionId, std::string> cache;
    {
        std::lock_guard<std::mutex> lock(mutex);
        auto it = cache.find(p);
        if (it != cache.end()) return it->second;
    }
    const Position& pos = fetch(p);
    auto render = [](std::vector<PositionId> options) {
        std::sort(options.begin(), options.end(), structural_less);
        std::string out;
        for (std::size_t i = 0; i < options.size(); ++i) {
            if (i > 0) out += ',';
            out += structural_key(options[i]);
        }
        return out;
    };
    std::string key = "{" + render(pos.left) + "|" + render(pos.right) + "}";
    std::lock_guard<std::mutex> lock(mutex);
    return cache.emplace(p, std::move(key)).first->second;
}

bool structural_less(PositionId a, PositionId b) {
    if (a == b) return false;
    const int ba = profile(a).birthday;
    const int bb = profile(b).birthday;
    if (ba != bb) return ba < bb;
    return structural_key(a) < structural_key(b);
}

std::string to_dot(PositionId p) {
    std::vector<PositionId> order;
    std::unordered_map<PositionId, int> index;
    // Depth-first walk with children in structural order, so the node
    // numbering does not depend on interning history.
    auto visit = [&](auto&& self, PositionId node) -> void {
        if (index.count(node)) return;
        index[node] = static_cast<int>(order.size());
        order.push_back(node);
        const Position& pos = fetch(node);
        std::vector<PositionId> children;
        children.insert(children.end(), pos.left.begin(), pos.left.end());
        children.insert(children.end(), pos.right.begin(), pos.right.end());
        std::sort(children.begin(), children.end(), structural_less);
        children.erase(std::unique(children.begin(), children.end()), children.end());
        for (PositionId child : children) self(self, child);
    };
    visit(visit, p);

    std::ostringstream out;
    out << "digraph position {\n";
    for (PositionId node : order) {
        std::string label = structural_key(node);
        if (label.size() > 60) label = label.substr(0, 57) + "...";
        out << "  n" << index[node] << " [label=\"" << label << "\"];\n";
    }
    for (PositionId node : order) {
        const Position& pos = fetch(node);
        for (PositionId l : pos.left) {
            out << "  n" << index[node] << " -> n" << index[l] << " [label=\"L\"];\n";
        }
        for (PositionId r : pos.right) {
            out << "  n" << index[node] << " -> n" << index[r] << " [label=\"R\"];\n";
        }
    }
    out << "}\n";
    return out.str();
}

}  // namespace misere
