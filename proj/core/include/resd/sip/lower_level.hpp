#pragma once

#include <vector>

#include "resd/lp/linear_program.hpp"
#include "resd/sip/problem.hpp"

namespace resd::sip {

// Binding of one variable kind when turning a Poly into an affine expression:
// ids[i] >= 0 makes variable i a model variable, otherwise values[i] is used.
struct Binding {
  const std::vector<double>* values = nullptr;
  const std::vector<int>* ids = nullptr;

  bool is_var(int i) const { return ids != nullptr && (*ids)[i] >= 0; }
};

// Throws Error(kNonlinearLowerLevel) when a product of two model variables remains.
lp::LinearExpr to_affine(const Poly& p, const Binding& x, const Binding& y, const Binding& z);

// Operational LP at fixed (x, y): min value s.t. template rows, z bounds.
// Variables are exactly the template's z vars in order; rows keep template
// order split into eq and ub blocks.
lp::LinearProgram build_llp(const EsipProblem& problem, const std::vector<double>& x, const std::vector<double>& y);

struct GapEvaluation {
  double value = 0.0;        // min(llp_value, -g_j(x, y)); the existence-constraint gap
  double llp_value = 0.0;    // operational optimum (supply gap)
  double coupling = lp::kInf;  // min_j -g_j(x, y), +inf without coupling rows
  lp::LinearProgram llp;
  lp::LpSolution solution;
};

// Throws Error(kLlpInfeasible) when the operational LP is not solved to optimality.
GapEvaluation evaluate_gap(const EsipProblem& problem, const std::vector<double>& x, const std::vector<double>& y,
                           const lp::SolverTolerances& tol = {});

}  // namespace resd::sip
