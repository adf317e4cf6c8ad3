#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace misere {

// Handle into the interned position store. Two handles are equal exactly when
// the positions are structurally identical after canonicalization (option
// sets sorted by id, duplicates removed). The store is append-only, so a
// handle never dangles.
using PositionId = std::uint32_t;

// A game position: a set of Left options and a set of Right options.
// Both vectors are sorted ascending by id and contain no duplicates.
struct Position {
    std::vector<PositionId> left;
    std::vector<PositionId> right;
};

// The seven ways of combining two games into one.
enum class SumKind {
    Disjunctive,
    And,
    Or,
    DisAnd,
    DisOr,
    SeqJoin,
    Ordinal,
};

// Structural facts about a position, computed by memoized recursion.
// ab_rank is defined only for positions that are both all-small and binary;
// it is the maximum length of an alternating move path in the game tree.
struct StructuralProfile {
    int birthday = 0;
    bool impartial = false;
    bool all_small = false;
    bool binary = false;
    std::optional<int> ab_rank;
    bool left_end = false;
    bool right_end = false;
};

// Catalogue of frequently used positions. StarN and TauN take an index.
enum class NamedPosition {
    Zero,
    Star,
    StarN,
    One,
    OneBar,
    Sigma,
    SigmaBar,
    Rho,
    RhoBar,
    Tau,
    TauN,
    Eta,
    Theta,
};

// Interns the position with the given option sets and returns its id.
// Idempotent: building the same sets twice yields the same id.
// Throws std::out_of_range if any referenced id is unknown.
PositionId build(std::vector<PositionId> left, std::vector<PositionId> right);

// Read access to an interned position. The reference stays valid forever.
const Position& fetch(PositionId id);

// Number of positions interned so far.
std::size_t store_size();

// Builds a catalogue position. k is the index for StarN (k >= 1) and
// TauN (k >= 0) and must be 0 for every other name.
// Throws std::invalid_argument on a bad name or index.
PositionId named(NamedPosition name, int k = 0);

// Convenience shorthands for the catalogue.
PositionId zero();
PositionId star();

// Swaps Left and Right options recursively. An involution.
PositionId conjugate(PositionId p);

// The adjoint construction: 0 maps to star; a Left end maps to
// {(right options)* | 0}; a Right end maps to {0 | (left options)*};
// anything else maps to {(right options)* | (left options)*}.
PositionId adjoint(PositionId p);

// Structural classification of p.
const StructuralProfile& profile(PositionId p);

// Compiles the compound of a and b under the given operator into a plain
// position. Disjunctive is rejected here; disjunctive sums are handled as
// multisets by the outcome engine, and compile_disjunctive materializes one
// when a single tree is required.
PositionId alt_sum(SumKind kind, PositionId a, PositionId b);

// Expands the disjunctive sum of a and b into a single game tree.
PositionId compile_disjunctive(PositionId a, PositionId b);

// DOT rendering of the game DAG below p. Left edges are labeled L and Right
// edges R; node ordering is deterministic.
std::string to_dot(PositionId p);

// Total order on positions that depends only on structure, never on the
// order in which positions were interned. Used wherever enumeration order
// must be reproducible.
bool structural_less(PositionId a, PositionId b);

// Canonical brace serialization backing structural_less, e.g. "{{|}|{|}}".
const std::string& structural_key(PositionId p);

}  // namespace misere
