#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "misere/Position.hpp"

namespace misere {

// Who wins a position under best play: Left regardless of mover (L), Right
// regardless of mover (R), the player who moves next (N), or the player who
// moved last (P).
enum class Outcome : std::uint8_t { L, R, N, P };

char outcome_char(Outcome o);
Outcome swap_lr(Outcome o);

enum class OrderRel : std::uint8_t { Less, Equal, Greater, Incomparable };

// Partial order by favourability to Left: L above both N and P, R below
// both, N and P incomparable.
OrderRel outcome_cmp(Outcome a, Outcome b);
bool outcome_geq(Outcome a, Outcome b);

// A disjunctive sum of interned positions, kept as a canonical multiset:
// components sorted ascending with copies of 0 removed. The empty sum is 0.
struct SumPosition {
    std::vector<PositionId> components;

    bool operator==(const SumPosition&) const = default;
};

struct SumPositionHash {
    std::size_t operator()(const SumPosition& s) const;
};

SumPosition make_sum(std::vector<PositionId> components);
SumPosition sum_add(const SumPosition& s, PositionId extra);
SumPosition sum_concat(const SumPosition& a, const SumPosition& b);
SumPosition conjugate_sum(const SumPosition& s);

// Sums reachable in one move: each replaces a single component by one of
// the moving player's options in it.
std::vector<SumPosition> sum_options(const SumPosition& s, bool left_to_move);

// Winner of the sum when the player unable to move wins.
Outcome misere_outcome(const SumPosition& s);
Outcome misere_outcome(PositionId p);

// Winner of the sum when the player unable to move loses.
Outcome normal_outcome(const SumPosition& s);
Outcome normal_outcome(PositionId p);

}  // namespace misere
