#pragma once

#include "resd/lp/linear_program.hpp"

namespace resd::lp {

inline constexpr std::size_t kOracleMaxVars = 10;

// Exact LP solve by enumerating every vertex of the feasible polytope.
// Infinite bounds are replaced by a box of half-width big_m; the optimum is
// recomputed with 2 big_m and reported Unbounded if it moves. Primal only:
// dual fields are left empty. Throws Error(kTooLarge) above kOracleMaxVars.
LpSolution lp_bruteforce_oracle(const LinearProgram& lp, double big_m = 1e6);

}  // namespace resd::lp
