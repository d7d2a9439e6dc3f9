#pragma once

#include "resd/sip/problem.hpp"

namespace resd::models {

// min 2 x1 + x2 over x in [0, 100]^2 such that for every y1 in [0, 100] and
// b in {0, 1} with y1 - 0.2 x2 - 100 b <= 0 some z in [0, 100]^2 with
// z <= x gives y1 - z1 - b z2 <= 0. Uncertainty vector y = (y1, b).
sip::EsipProblem build_milp_example();

}  // namespace resd::models
