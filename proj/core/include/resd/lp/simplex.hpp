#pragma once

#include "resd/lp/linear_program.hpp"

namespace resd::lp {

// Two-phase bounded-variable revised simplex on a dense explicit basis
// inverse. Dantzig pricing with a Harris ratio test; switches to Bland's rule
// after `degenerate_pivots_before_bland` consecutive degenerate pivots and
// back once a pivot makes progress.
//
// Throws Error on malformed input; every solver outcome is a status.
LpSolution solve_lp(const LinearProgram& lp, const SolverTolerances& tol = {});

}  // namespace resd::lp
