#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "misere/Outcome.hpp"
#include "misere/Position.hpp"

namespace misere {

// The ground set a quotient is computed over: the option closure of the
// generators. base is sorted structurally and always starts with 0; symbols
// (letters a, b, ...) are assigned to the nonzero base elements in order.
struct ClosureBase {
    std::vector<PositionId> generators;
    std::vector<PositionId> base;
};

ClosureBase option_closure(const std::vector<PositionId>& generators);

// Nonzero base elements, in symbol order.
std::vector<PositionId> base_symbols(const ClosureBase& cb);

std::string symbol_name(std::size_t symbol_index);

// Renders a multiset over the base as a monomial, e.g. "ab^3"; the empty
// sum renders as "1". Throws std::invalid_argument if a component is not a
// base element.
std::string word_for(const ClosureBase& cb, const SumPosition& s);

// All multisets over the nonzero base elements of sizes 0..bound, smallest
// first and lexicographic within a size.
std::vector<SumPosition> enumerate_sums(const ClosureBase& cb, int bound);

// First context (smallest multiset over the base, sizes 0..context_bound,
// lexicographic within a size) whose misère outcome separates a and b;
// nullopt when they are indistinguishable at the bound.
std::optional<SumPosition> distinguish(const SumPosition& a, const SumPosition& b,
                                       const ClosureBase& cb, int context_bound);

// Pointwise comparison of outcome profiles over the same context sweep.
OrderRel compare_elements(const SumPosition& a, const SumPosition& b, const ClosureBase& cb,
                          int context_bound);

struct VerifyResult {
    bool holds = false;
    std::optional<SumPosition> witness;  // a separating context when refuted
};

VerifyResult verify_relation(const SumPosition& lhs, const SumPosition& rhs,
                             const ClosureBase& cb, int context_bound);

enum class QuotientStatus {
    // Class count unchanged over the last two layers and every
    // representative stays inside the found classes after adding one base
    // element. An empirical certificate at the bound, not a proof.
    FiniteVerifiedAtBound,
    NotStabilized,
};

struct QuotientClass {
    SumPosition representative;  // graded-lex least member
    std::string word;
    Outcome outcome;
};

struct DistinguishWitness {
    SumPosition a, b;
    SumPosition context;
};

struct QuotientReport {
    ClosureBase closure;
    int sum_bound = 0;
    int context_bound = 0;
    QuotientStatus status = QuotientStatus::NotStabilized;
    std::vector<QuotientClass> classes;
    // (word of a merged element, word of its class) in discovery order,
    // skipping merges already implied by an earlier pair.
    std::vector<std::pair<std::string, std::string>> relations;
    // Class indices by outcome, indexed by static_cast<size_t>(Outcome).
    std::array<std::vector<std::size_t>, 4> tetrapartition;
    // One separating context for every class pair.
    std::vector<DistinguishWitness> witnesses;
    // The context sweep and each class's outcome profile over it, kept for
    // poset and order computations.
    std::vector<SumPosition> contexts;
    std::vector<std::vector<Outcome>> profiles;
    // Cumulative class count after each completed layer.
    std::vector<std::size_t> layer_class_counts;
};

QuotientReport compute_quotient(const std::vector<PositionId>& generators, int sum_bound = 6,
                                int context_bound = 6);

struct IncomparabilityWitness {
    std::size_t a = 0, b = 0;  // class indices
    // Either one context where the outcomes are N versus P, or two
    // contexts comparing strictly in opposite directions.
    std::vector<SumPosition> contexts;
    bool single_context = false;
};

struct PosetReport {
    // (x, y) meaning class x is strictly above class y; transitive.
    std::vector<std::pair<std::size_t, std::size_t>> order;
    // The covering pairs of the same order (Hasse diagram edges).
    std::vector<std::pair<std::size_t, std::size_t>> covers;
    std::vector<IncomparabilityWitness> incomparability_witnesses;
    bool down_directed = false;
    bool up_directed = false;
    bool lattice = false;
    std::optional<std::size_t> bottom;
    std::optional<std::size_t> top;
};

// Requires q.status == FiniteVerifiedAtBound; throws std::invalid_argument
// otherwise.
PosetReport compute_poset(const QuotientReport& q);

// Checks that conjugation reverses the element order (and preserves
// incomparability) on all tested class pairs. Requires a conjugation-closed
// generator set; throws std::invalid_argument otherwise.
bool conjugate_order_check(const QuotientReport& q);

// Hasse diagram of a computed poset in DOT form, labeled by class words.
std::string poset_to_dot(const QuotientReport& q, const PosetReport& p);

}  // namespace misere
