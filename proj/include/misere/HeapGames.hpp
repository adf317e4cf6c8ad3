#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "misere/Outcome.hpp"
#include "misere/Position.hpp"
#include "misere/Quotient.hpp"

namespace misere {

// A partizan subtraction game: Left removes any s in left_set tokens from a
// single heap, Right any s in right_set. Heaps larger than max_heap are
// outside the tracked universe.
struct SubtractionGameSpec {
    std::vector<int> left_set;
    std::vector<int> right_set;
    int max_heap = 6;
};

// A position as heap counts: counts[i] heaps of size i+1, trailing zeros
// dropped. The empty vector is the terminal position.
struct HeapVector {
    std::vector<int> counts;

    HeapVector() = default;
    explicit HeapVector(std::vector<int> c);

    bool operator==(const HeapVector&) const = default;
};

// "x1,x2,..." rendering and parsing; the empty vector renders as "0".
std::string heap_vector_text(const HeapVector& v);
HeapVector parse_heap_vector(const std::string& text);

// Misère outcome of a heap-count position, memoized per game.
// Throws std::invalid_argument when a heap size exceeds spec.max_heap.
Outcome heap_outcome(const SubtractionGameSpec& spec, const HeapVector& v);

// Dense outcome table over 0..limits[i] per coordinate, cells laid out in
// colexicographic order (first coordinate varies fastest). No limits means
// the single terminal cell.
struct OutcomeTable {
    std::vector<int> limits;
    std::vector<Outcome> cells;

    Outcome at(const std::vector<int>& v) const;
};

OutcomeTable outcome_table(const SubtractionGameSpec& spec, const std::vector<int>& limits);

// Aligned text, one row per combination of the coordinates beyond the first.
std::string format_outcome_table(const OutcomeTable& t);

struct PeriodicitySearch {
    int r_bound = 4;  // largest pre-period tried per coordinate
    int d_bound = 4;  // largest period tried per coordinate
    int u_bound = 4;  // extra layers swept when validating an agreement
};

struct CoordinatePeriodicity {
    int heap_size = 0;
    bool verified = false;
    int r = 0;
    int d = 0;
    // cumulative (r_1..r_i) and (d_1..d_i) through this coordinate
    std::vector<int> pre_period;
    std::vector<int> period;
    // set when no (r, d) survives the sweep but outcomes are invariant
    // under adding one heap of this size and one of the partner size
    std::optional<int> diagonal_partner;
};

// Presentation read off the periodicity alone: one symbol per coordinate,
// the relation symbol^(r+d) = symbol^r per verified coordinate, and a
// product relation per detected diagonal.
struct CandidatePresentation {
    std::vector<std::string> symbols;
    std::vector<std::pair<std::string, std::string>> relations;
};

struct PeriodicityReport {
    SubtractionGameSpec spec;
    PeriodicitySearch search;
    // entries ascend by heap size and stop at the first coordinate whose
    // search exhausts its bounds
    std::vector<CoordinatePeriodicity> coordinates;
    CandidatePresentation candidate_monoid;
};

// Searches each coordinate ascending for the least (r, d) such that
// outcomes at layers r..r+u_bound agree with the layers one period up,
// across the verified ranges of the earlier coordinates, and every earlier
// periodicity stays intact once the new coordinate is added.
PeriodicityReport detect_periodicity(const SubtractionGameSpec& spec,
                                     const PeriodicitySearch& search = {});

// The indistinguishability quotient of the game's heap universe. Heap sizes
// are staged ascending: a size indistinguishable from a word in the earlier
// sizes is recorded in heap_map and gets no symbol of its own; the rest
// carry symbols a, b, ... and the final quotient is computed over them.
struct HeapQuotientReport {
    SubtractionGameSpec spec;
    PeriodicityReport periodicity;
    // heap sizes that received their own symbol, ascending
    std::vector<int> symbol_sizes;
    // class word for every heap size 1..max_heap
    std::vector<std::pair<int, std::string>> heap_map;
    // quotient over the symbol sizes; representatives, contexts, and
    // witnesses hold compiled game positions
    QuotientReport quotient;
};

HeapQuotientReport heap_quotient(const SubtractionGameSpec& spec, int sum_bound = 6,
                                 int context_bound = 6);

// The game tree of a single heap of size n: Left options are heaps n-s for
// s in left_set with s <= n, Right options analogous.
// Throws std::invalid_argument when n is negative or exceeds spec.max_heap.
PositionId compile_heap_position(const SubtractionGameSpec& spec, int n);

}  // namespace misere
