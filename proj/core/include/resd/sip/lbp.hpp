#pragma once

#include "resd/lp/milp.hpp"
#include "resd/sip/problem.hpp"

namespace resd::sip {

// Lower bounding problem: the base scenario model plus one operational block
// per discretization entry. Without coupling rows each block requires
// value <= 0, as does every realized entry. With coupling rows a binary b_u selects between value <= 0 and
// -g(x, y_k) <= 0; products with b_u are linearized on interval bounds.
// Variables of the base model keep their indices.
lp::MixedIntegerLinearProgram build_lbp(const EsipProblem& problem, const DiscretizationSet& disc);

}  // namespace resd::sip
