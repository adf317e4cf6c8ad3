#pragma once

#include <string>

#include "misere/Outcome.hpp"
#include "misere/Position.hpp"

namespace misere {

// Parses the position expression language:
//
//   expr := term ('+' term)*
//   term := [INT '*'] atom
//   atom := '0' | 'star' | 'star(' INT ')' | 'one' | 'sigma' | 'rho'
//         | 'tau' | 'tau(' INT ')' | 'eta' | 'theta'
//         | 'conj(' expr ')' | 'L(' expr ')' | 'R(' expr ')' | 'adj(' expr ')'
//         | 'and(' expr ',' expr ')' | 'or(' expr ',' expr ')'
//         | 'disand(' expr ',' expr ')' | 'disor(' expr ',' expr ')'
//         | 'seq(' expr ',' expr ')' | 'ord(' expr ',' expr ')'
//         | '{' options '|' options '}'
//
// Whitespace is insignificant. '{|}' is 0 and '{0|}' is one. Throws
// std::invalid_argument with a readable message on malformed input.
SumPosition parse_expression(const std::string& text);

// Folds a sum into a single interned position (the empty sum becomes 0).
PositionId compile_sum(const SumPosition& s);

PositionId parse_position(const std::string& text);

// Renders a position so that parse_position(format_position(p)) == p.
// Recognised constants fold to their names; everything else prints as
// braces with options in a fixed structural order.
std::string format_position(PositionId p);

// Renders a sum as '+'-joined terms with repeated components grouped into
// multiplier form, e.g. "2*rho + star".
std::string format_sum(const SumPosition& s);

}  // namespace misere
