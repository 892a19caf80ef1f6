#pragma once

// Intersection-number expressions such as "(-K)^3", "E1.E1.E2", "(-K).l_1_2"
// on the blown-up double solid, or "(3l - a1)^2", "A1.D1" on the degree-2
// del Pezzo surface.
//
//   product := factor (('.' | '*') factor)*
//   factor  := primary ('^' INT)?
//   primary := '(' linear ')' | ['-'] [INT] SYMBOL
//   linear  := ['+' | '-'] term (('+' | '-') term)*
//   term    := INT ['*'] SYMBOL | SYMBOL | INT '*'? '(' linear ')'

#include <cstdint>
#include <string>

namespace amv::cli {

enum class Space { Amx, Dp2 };

Space parse_space(const std::string& name);

// Throws amv::InvalidArgument on malformed input or a product that is not a
// number (wrong count of divisor/curve factors).
std::int64_t evaluate_intersection(const std::string& expr, Space space);

}  // namespace amv::cli
