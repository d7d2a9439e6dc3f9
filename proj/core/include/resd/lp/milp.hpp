#pragma once

#include <utility>
#include <vector>

#include "resd/lp/linear_program.hpp"

namespace resd::lp {

struct MixedIntegerLinearProgram {
  LinearProgram lp;
  std::vector<bool> integer;  // binary when true

  // Throws Error(kInvalidBounds) when a binary is not boxed in [0, 1].
  void validate() const;
};

enum class MilpStatus { kOptimal, kInfeasible, kUnbounded, kNodeLimit, kIterationLimit, kNumericalBreakdown };

const char* to_string(MilpStatus status);

struct MilpSolution {
  MilpStatus status = MilpStatus::kInfeasible;
  std::vector<double> primal;
  double objective = kInf;
  double best_bound = -kInf;
  double root_bound = -kInf;
  int nodes = 0;
  int lp_iterations = 0;

  bool optimal() const { return status == MilpStatus::kOptimal; }
};

// Best-bound branch and bound (ties by node creation order), most-fractional
// branching with lowest-index ties. Each node is solved from scratch.
MilpSolution solve_milp(const MixedIntegerLinearProgram& milp, const SolverTolerances& tol = {});

// Interval bounds of expr over the builder's current variable box.
std::pair<double, double> interval_bounds(const ModelBuilder& builder, const LinearExpr& expr);

// Adds aux = b * expr with the four standard rows
//   aux <= U b,  aux >= L b,  aux <= expr - L (1 - b),  aux >= expr - U (1 - b)
// and returns the id of aux. Throws Error(kInvalidBounds) when L > U.
int linearize_binary_product(ModelBuilder& builder, int b, const LinearExpr& expr, double lower,
                             double upper, const std::string& name);

MixedIntegerLinearProgram build_milp(const ModelBuilder& builder);

}  // namespace resd::lp
