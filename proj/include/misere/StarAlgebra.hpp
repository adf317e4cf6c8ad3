#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "misere/Outcome.hpp"
#include "misere/Position.hpp"

namespace misere {

// The two-element monoid {1, a} with a^2 = 1 that star generates: One is
// the class of 0 and A the class of *.
enum class StarImage : std::uint8_t { One, A };

// Structural test for positions whose generated monoid is the star monoid:
// star itself; a previous-player win with options on both sides, each
// option 0 or star-built and a next-player win; or a nonzero next-player
// win with at least one option, every option star-built and a
// previous-player win. Positions Left or Right wins outright never qualify.
bool is_star_built(PositionId p);

// Which of the two classes p collapses onto. Requires p = 0 or star-built;
// throws std::invalid_argument otherwise.
StarImage star_image(PositionId p);

// Outcome of a sum of star-built components by multiplying their images:
// an even number of A factors gives N, an odd number P. Requires every
// component to be 0 or star-built; throws std::invalid_argument otherwise.
Outcome sum_outcome_via_star(const std::vector<PositionId>& components);

// All star-built positions born exactly on the given day, structurally
// sorted. Candidates draw their options from 0 and the star-built positions
// of earlier days. Days beyond the cap are combinatorially explosive and
// throw std::length_error.
std::vector<PositionId> enumerate_star_built(int day, int cap = 3);

struct StarIsoViolation {
    // 1: no nonzero generator; 2: an element is not a next- or
    // previous-player win; 3: a next-player-win element has a next-player-win
    // option.
    int condition = 0;
    SumPosition element;
    std::optional<SumPosition> option;
};

struct StarIsoReport {
    bool passes = false;
    std::optional<StarIsoViolation> violation;
};

// Checks the three conditions for the generated monoid to be isomorphic to
// the star monoid, over every sum of at most sum_bound closure elements.
// Reports the first violation found, smallest element first.
StarIsoReport star_iso_check(const std::vector<PositionId>& generators, int sum_bound);

}  // namespace misere
