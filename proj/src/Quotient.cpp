#include "misere/Quotient.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace misere {

namespace {

// Multisets over {0, ..., symbol_count-1} of the given size, as
// non-decreasing index sequences in lexicographic order.
void collect_multisets(std::size_t symbol_count, int size, std::size_t min_index,
                       std::vector<std::size_t>& cur, std::vector<std::vector<std::size_t>>& out) {
    if (size == 0) {
        out.push_back(cur);
        return;
    }
    for (std::size_t i = min_index; i < symbol_count; ++i) {
        cur.push_back(i);
        collect_multisets(symbol_count, size - 1, i, cur, out);
        cur.pop_back();
    }
}

std::vector<std::vector<std::size_t>> multisets_up_to(std::size_t symbol_count, int bound) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur;
    for (int size = 0; size <= bound; ++size) {
        collect_multisets(symbol_count, size, 0, cur, out);
    }
    return out;
}

SumPosition sum_of(const std::vector<PositionId>& symbols, const std::vector<std::size_t>& indices) {
    std::vector<PositionId> parts;
    parts.reserve(indices.size());
    for (std::size_t i : indices) {
        parts.push_back(symbols[i]);
    }
    return make_sum(parts);
}

std::string word_from_indices(const std::vector<std::size_t>& indices) {
    if (indices.empty()) {
        return "1";
    }
    std::string out;
    std::size_t i = 0;
    while (i < indices.size()) {
        std::size_t j = i;
        while (j < indices.size() && indices[j] == indices[i]) {
            ++j;
        }
        out += symbol_name(indices[i]);
        if (j - i > 1) {
            out += '^';
            out += std::to_string(j - i);
        }
        i = j;
    }
    return out;
}

Outcome outcome_with_context(const SumPosition& element, const SumPosition& context) {
    return misere_outcome(sum_concat(element, context));
}

// Both sequences are sorted; true when every entry of small occurs in big
// with at least the same multiplicity.
bool submultiset(const std::vector<std::size_t>& small, const std::vector<std::size_t>& big) {
    std::size_t j = 0;
    for (std::size_t v : small) {
        while (j < big.size() && big[j] < v) {
            ++j;
        }
        if (j == big.size() || big[j] != v) {
            return false;
        }
        ++j;
    }
    return true;
}

void require_over_base(const ClosureBase& cb, const SumPosition& s, const char* what) {
    for (PositionId id : s.components) {
        if (std::find(cb.base.begin(), cb.base.end(), id) == cb.base.end()) {
            throw std::invalid_argument(std::string(what) +
                                        " has a component outside the closure base");
        }
    }
}

OrderRel compare_profiles(const std::vector<Outcome>& a, const std::vector<Outcome>& b) {
    bool geq = true;
    bool leq = true;
    for (std::size_t i = 0; i < a.size(); ++i) {
        switch (outcome_cmp(a[i], b[i])) {
            case OrderRel::Equal:
                break;
            case OrderRel::Greater:
                leq = false;
                break;
            case OrderRel::Less:
                geq = false;
                break;
            case OrderRel::Incomparable:
                return OrderRel::Incomparable;
        }
        if (!geq && !leq) {
            return OrderRel::Incomparable;
        }
    }
    if (geq && leq) {
        return OrderRel::Equal;
    }
    return geq ? OrderRel::Greater : OrderRel::Less;
}

std::vector<Outcome> profile_of(const SumPosition& element, const std::vector<SumPosition>& contexts) {
    std::vector<Outcome> prof;
    prof.reserve(contexts.size());
    for (const SumPosition& c : contexts) {
        prof.push_back(outcome_with_context(element, c));
    }
    return prof;
}

}  // namespace

ClosureBase option_closure(const std::vector<PositionId>& generators) {
    std::vector<PositionId> stack(generators.begin(), generators.end());
    std::unordered_set<PositionId> seen(stack.begin(), stack.end());
    while (!stack.empty()) {
        PositionId id = stack.back();
        stack.pop_back();
        const Position& pos = fetch(id);
        for (const auto* side : {&pos.left, &pos.right}) {
            for (PositionId opt : *side) {
                if (seen.insert(opt).second) {
                    stack.push_back(opt);
                }
            }
        }
    }
    seen.insert(zero());

    ClosureBase cb;
    cb.generators.assign(generators.begin(), generators.end());
    std::sort(cb.generators.begin(), cb.generators.end(), structural_less);
    cb.generators.erase(std::unique(cb.generators.begin(), cb.generators.end()),
                        cb.generators.end());
    cb.base.assign(seen.begin(), seen.end());
    std::sort(cb.base.begin(), cb.base.end(), structural_less);
    return cb;
}

std::vector<PositionId> base_symbols(const ClosureBase& cb) {
    std::vector<PositionId> symbols;
    symbols.reserve(cb.base.size());
    for (PositionId id : cb.base) {
        if (id != zero()) {
            symbols.push_back(id);
        }
    }
    return symbols;
}

std::string symbol_name(std::size_t symbol_index) {
    if (symbol_index < 26) {
        return std::string(1, static_cast<char>('a' + symbol_index));
    }
    return "g" + std::to_string(symbol_index);
}

std::vector<SumPosition> enumerate_sums(const ClosureBase& cb, int bound) {
    if (bound < 0) {
        throw std::invalid_argument("sum size bound must be non-negative");
    }
    std::vector<PositionId> symbols = base_symbols(cb);
    std::vector<SumPosition> out;
    for (const auto& indices : multisets_up_to(symbols.size(), bound)) {
        out.push_back(sum_of(symbols, indices));
    }
    return out;
}

std::string word_for(const ClosureBase& cb, const SumPosition& s) {
    std::vector<PositionId> symbols = base_symbols(cb);
    std::vector<std::size_t> indices;
    indices.reserve(s.components.size());
    for (PositionId id : s.components) {
        auto it = std::find(symbols.begin(), symbols.end(), id);
        if (it == symbols.end()) {
            throw std::invalid_argument("sum has a component outside the closure base");
        }
        indices.push_back(static_cast<std::size_t>(it - symbols.begin()));
    }
    std::sort(indices.begin(), indices.end());
    return word_from_indices(indices);
}

std::optional<SumPosition> distinguish(const SumPosition& a, const SumPosition& b,
                                       const ClosureBase& cb, int context_bound) {
    if (context_bound < 0) {
        throw std::invalid_argument("context bound must be non-negative");
    }
    require_over_base(cb, a, "left element");
    require_over_base(cb, b, "right element");
    std::vector<PositionId> symbols = base_symbols(cb);
    for (const auto& indices : multisets_up_to(symbols.size(), context_bound)) {
        SumPosition c = sum_of(symbols, indices);
        if (outcome_with_context(a, c) != outcome_with_context(b, c)) {
            return c;
        }
    }
    return std::nullopt;
}

OrderRel compare_elements(const SumPosition& a, const SumPosition& b, const ClosureBase& cb,
                          int context_bound) {
    if (context_bound < 0) {
        throw std::invalid_argument("context bound must be non-negative");
    }
    require_over_base(cb, a, "left element");
    require_over_base(cb, b, "right element");
    std::vector<PositionId> symbols = base_symbols(cb);
    std::vector<SumPosition> contexts;
    for (const auto& indices : multisets_up_to(symbols.size(), context_bound)) {
        contexts.push_back(sum_of(symbols, indices));
    }
    return compare_profiles(profile_of(a, contexts), profile_of(b, contexts));
}

VerifyResult verify_relation(const SumPosition& lhs, const SumPosition& rhs,
                             const ClosureBase& cb, int context_bound) {
    VerifyResult res;
    res.witness = distinguish(lhs, rhs, cb, context_bound);
    res.holds = !res.witness.has_value();
    return res;
}

QuotientReport compute_quotient(const std::vector<PositionId>& generators, int sum_bound,
                                int context_bound) {
    if (sum_bound < 1) {
        throw std::invalid_argument("sum bound must be at least 1");
    }
    if (context_bound < 0) {
        throw std::invalid_argument("context bound must be non-negative");
    }

    QuotientReport rep;
    rep.closure = option_closure(generators);
    rep.sum_bound = sum_bound;
    rep.context_bound = context_bound;

    std::vector<PositionId> symbols = base_symbols(rep.closure);
    for (const auto& indices : multisets_up_to(symbols.size(), context_bound)) {
        rep.contexts.push_back(sum_of(symbols, indices));
    }

    std::map<std::vector<Outcome>, std::size_t> class_by_profile;
    std::vector<std::vector<std::size_t>> relation_lhs;

    for (int size = 0; size <= sum_bound; ++size) {
        std::vector<std::vector<std::size_t>> layer;
        std::vector<std::size_t> cur;
        collect_multisets(symbols.size(), size, 0, cur, layer);
        for (const auto& indices : layer) {
            SumPosition element = sum_of(symbols, indices);
            std::vector<Outcome> prof = profile_of(element, rep.contexts);
            auto it = class_by_profile.find(prof);
            if (it == class_by_profile.end()) {
                std::size_t idx = rep.classes.size();
                rep.classes.push_back({element, word_from_indices(indices), prof.front()});
                rep.profiles.push_back(prof);
                class_by_profile.emplace(std::move(prof), idx);
            } else {
                bool reducible = false;
                for (const auto& lhs : relation_lhs) {
                    if (submultiset(lhs, indices)) {
                        reducible = true;
                        break;
                    }
                }
                if (!reducible) {
                    rep.relations.emplace_back(word_from_indices(indices),
                                               rep.classes[it->second].word);
                    relation_lhs.push_back(indices);
                }
            }
        }
        rep.layer_class_counts.push_back(rep.classes.size());
    }

    bool stable = rep.layer_class_counts.back() ==
                  rep.layer_class_counts[rep.layer_class_counts.size() - 2];
    bool closed = stable;
    if (stable) {
        for (const QuotientClass& cls : rep.classes) {
            for (PositionId s : symbols) {
                std::vector<Outcome> prof = profile_of(sum_add(cls.representative, s), rep.contexts);
                if (class_by_profile.find(prof) == class_by_profile.end()) {
                    closed = false;
                    break;
                }
            }
            if (!closed) {
                break;
            }
        }
    }
    rep.status = closed ? QuotientStatus::FiniteVerifiedAtBound : QuotientStatus::NotStabilized;

    for (std::size_t i = 0; i < rep.classes.size(); ++i) {
        rep.tetrapartition[static_cast<std::size_t>(rep.classes[i].outcome)].push_back(i);
    }

    for (std::size_t i = 0; i < rep.classes.size(); ++i) {
        for (std::size_t j = i + 1; j < rep.classes.size(); ++j) {
            for (std::size_t k = 0; k < rep.contexts.size(); ++k) {
                if (rep.profiles[i][k] != rep.profiles[j][k]) {
                    rep.witnesses.push_back({rep.classes[i].representative,
                                             rep.classes[j].representative, rep.contexts[k]});
                    break;
                }
            }
        }
    }
    return rep;
}

PosetReport compute_poset(const QuotientReport& q) {
    if (q.status != QuotientStatus::FiniteVerifiedAtBound) {
        throw std::invalid_argument("poset computation requires a quotient verified finite at its bound");
    }
    const std::size_t k = q.classes.size();
    PosetReport rep;
    std::vector<std::vector<bool>> above(k, std::vector<bool>(k, false));

    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
            bool geq = true;
            bool leq = true;
            std::optional<std::size_t> np_ctx, gt_ctx, lt_ctx;
            for (std::size_t c = 0; c < q.contexts.size(); ++c) {
                switch (outcome_cmp(q.profiles[i][c], q.profiles[j][c])) {
                    case OrderRel::Equal:
                        break;
                    case OrderRel::Greater:
                        leq = false;
                        if (!gt_ctx) {
                            gt_ctx = c;
                        }
                        break;
                    case OrderRel::Less:
                        geq = false;
                        if (!lt_ctx) {
                            lt_ctx = c;
                        }
                        break;
                    case OrderRel::Incomparable:
                        geq = false;
                        leq = false;
                        if (!np_ctx) {
                            np_ctx = c;
                        }
                        break;
                }
            }
            if (geq && !leq) {
                above[i][j] = true;
            } else if (leq && !geq) {
                above[j][i] = true;
            } else if (!geq && !leq) {
                IncomparabilityWitness w;
                w.a = i;
                w.b = j;
                if (np_ctx) {
                    w.single_context = true;
                    w.contexts.push_back(q.contexts[*np_ctx]);
                } else {
                    w.single_context = false;
                    w.contexts.push_back(q.contexts[*gt_ctx]);
                    w.contexts.push_back(q.contexts[*lt_ctx]);
                }
                rep.incomparability_witnesses.push_back(std::move(w));
            }
            // geq && leq would mean equal profiles, impossible for distinct classes
        }
    }

    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            if (above[i][j]) {
                rep.order.emplace_back(i, j);
                bool cover = true;
                for (std::size_t m = 0; m < k && cover; ++m) {
                    if (above[i][m] && above[m][j]) {
                        cover = false;
                    }
                }
                if (cover) {
                    rep.covers.emplace_back(i, j);
                }
            }
        }
    }

    auto lower_eq = [&](std::size_t z, std::size_t x) { return z == x || above[x][z]; };
    auto upper_eq = [&](std::size_t z, std::size_t x) { return z == x || above[z][x]; };

    rep.down_directed = true;
    rep.up_directed = true;
    rep.lattice = true;
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
            std::vector<std::size_t> lows, highs;
            for (std::size_t z = 0; z < k; ++z) {
                if (lower_eq(z, i) && lower_eq(z, j)) {
                    lows.push_back(z);
                }
                if (upper_eq(z, i) && upper_eq(z, j)) {
                    highs.push_back(z);
                }
            }
            if (lows.empty()) {
                rep.down_directed = false;
            }
            if (highs.empty()) {
                rep.up_directed = false;
            }
            bool has_meet = false;
            for (std::size_t z : lows) {
                bool greatest = true;
                for (std::size_t w : lows) {
                    if (!lower_eq(w, z)) {
                        greatest = false;
                        break;
                    }
                }
                if (greatest) {
                    has_meet = true;
                    break;
                }
            }
            bool has_join = false;
            for (std::size_t z : highs) {
                bool least = true;
                for (std::size_t w : highs) {
                    if (!upper_eq(w, z)) {
                        least = false;
                        break;
                    }
                }
                if (least) {
                    has_join = true;
                    break;
                }
            }
            if (!has_meet || !has_join) {
                rep.lattice = false;
            }
        }
    }

    for (std::size_t j = 0; j < k; ++j) {
        bool is_bottom = true;
        bool is_top = true;
        for (std::size_t i = 0; i < k; ++i) {
            if (i == j) {
                continue;
            }
            if (!above[i][j]) {
                is_bottom = false;
            }
            if (!above[j][i]) {
                is_top = false;
            }
        }
        if (is_bottom) {
            rep.bottom = j;
        }
        if (is_top) {
            rep.top = j;
        }
    }
    return rep;
}

bool conjugate_order_check(const QuotientReport& q) {
    std::set<PositionId> gens(q.closure.generators.begin(), q.closure.generators.end());
    for (PositionId g : gens) {
        if (gens.find(conjugate(g)) == gens.end()) {
            throw std::invalid_argument("generator set is not closed under conjugation");
        }
    }
    const std::size_t k = q.classes.size();
    std::vector<std::vector<Outcome>> conj_profiles(k);
    for (std::size_t i = 0; i < k; ++i) {
        conj_profiles[i] = profile_of(conjugate_sum(q.classes[i].representative), q.contexts);
    }
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
            OrderRel plain = compare_profiles(q.profiles[i], q.profiles[j]);
            OrderRel conj = compare_profiles(conj_profiles[i], conj_profiles[j]);
            OrderRel expected = plain;
            if (plain == OrderRel::Greater) {
                expected = OrderRel::Less;
            } else if (plain == OrderRel::Less) {
                expected = OrderRel::Greater;
            }
            if (conj != expected) {
                return false;
            }
        }
    }
    return true;
}

std::string poset_to_dot(const QuotientReport& q, const PosetReport& p) {
    std::ostringstream out;
    out << "digraph poset {\n";
    out << "  rankdir=BT;\n";
    for (std::size_t i = 0; i < q.classes.size(); ++i) {
        out << "  c" << i << " [label=\"" << q.classes[i].word << "\"];\n";
    }
    for (const auto& [upper, lower] : p.covers) {
        out << "  c" << lower << " -> c" << upper << ";\n";
    }
    out << "}\n";
    return out.str();
}

}  // namespace misere
