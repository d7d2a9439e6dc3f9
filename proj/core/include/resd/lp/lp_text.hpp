#pragma once

#include <iosfwd>

#include "resd/lp/linear_program.hpp"

namespace resd::lp {

// Plain-text dump for debugging:
//
//   lp <num_vars> <num_eq> <num_ub>
//   obj <offset> <c_0> ... <c_{n-1}>
//   eq <name> <rhs> <j>:<coef> ...
//   le <name> <rhs> <j>:<coef> ...
//   var <name> <lower> <upper>
//
// Values use max_digits10 so read_lp_text(write_lp_text(lp)) round-trips.
void write_lp_text(std::ostream& os, const LinearProgram& lp);
LinearProgram read_lp_text(std::istream& is);

}  // namespace resd::lp
