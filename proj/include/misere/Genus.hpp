#pragma once

#include <string>
#include <vector>

#include "misere/Position.hpp"

namespace misere {

// Genus symbol g^{d0 d1 ...}: the normal-play Grundy value of an impartial
// position together with the misère Grundy values of the position plus
// 0, 1, 2, ... copies of {0,*|0,*}. Digits are stored truncated so the last
// two are the pair that repeats forever.
struct Genus {
    int g_plus = 0;
    std::vector<int> digits;

    bool operator==(const Genus&) const = default;
};

// Least nonnegative integer not present in values.
int mex(const std::vector<int>& values);

// Computes the genus of an impartial position. Throws std::invalid_argument
// for a non-impartial position and std::runtime_error if the repeating tail
// has not shown itself twice within max_digits digits.
Genus genus(PositionId p, int max_digits = 40);

// Closed form for a single heap of n tokens in the take-any-number game.
Genus nim_heap_genus(int n);

// True when the genus of p is a heap genus or one of the two heap-sum
// symbols 0^{02} and 1^{13}, and every option is tame as well. Throws
// std::invalid_argument for a non-impartial position.
bool is_tame(PositionId p);

// Renders e.g. "0^{120}".
std::string format_genus(const Genus& g);

}  // namespace misere
