#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace resd::lp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// min c'x  s.t.  A_eq x = b_eq,  A_ub x <= b_ub,  lower <= x <= upper.
struct LinearProgram {
  std::vector<double> objective;
  double objective_offset = 0.0;
  Eigen::MatrixXd a_eq;
  std::vector<double> b_eq;
  Eigen::MatrixXd a_ub;
  std::vector<double> b_ub;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<std::string> var_names;
  std::vector<std::string> eq_names;
  std::vector<std::string> ub_names;

  std::size_t num_vars() const { return objective.size(); }
  std::size_t num_eq() const { return b_eq.size(); }
  std::size_t num_ub() const { return b_ub.size(); }

  // Throws Error(kDimensionMismatch / kInvalidBounds / kInvalidArgument).
  void validate() const;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit, kNumericalBreakdown };

const char* to_string(LpStatus status);

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<double> primal;
  double objective = 0.0;
  // Lagrangian convention L = c'x + eq_duals'(A_eq x - b_eq) + ub_duals'(A_ub x - b_ub):
  // ub_duals >= 0 at a minimum, eq_duals are free.
  std::vector<double> eq_duals;
  std::vector<double> ub_duals;
  // c + A_eq' eq_duals + A_ub' ub_duals; positive at an active lower bound,
  // negative at an active upper bound.
  std::vector<double> reduced_costs;
  int iterations = 0;

  bool optimal() const { return status == LpStatus::kOptimal; }
  // -eq_duals'b_eq - ub_duals'b_ub + sum of bound terms, plus the offset.
  double dual_objective(const LinearProgram& lp) const;
};

struct SolverTolerances {
  double feasibility = 1e-7;
  double duality = 1e-8;
  double optimality = 1e-9;  // reduced-cost threshold for pricing
  double pivot = 1e-11;
  double integrality = 1e-6;
  // Nodes are pruned once both gaps hold; a zero relative gap is ignored.
  double mip_abs_gap = 1e-6;
  double mip_rel_gap = 0.0;
  int max_iterations = 200000;
  int max_nodes = 200000;
  int degenerate_pivots_before_bland = 50;
  int refactor_interval = 100;
  bool scale = true;
};

// Affine expression over builder variables.
struct LinearExpr {
  std::vector<std::pair<int, double>> terms;
  double constant = 0.0;

  LinearExpr& add(int var, double coef) {
    if (coef != 0.0) terms.emplace_back(var, coef);
    return *this;
  }
};

enum class RowSense { kLessEqual, kEqual, kGreaterEqual };

// Incremental sparse model construction that materializes a dense LinearProgram.
class ModelBuilder {
 public:
  int add_var(std::string name, double lower, double upper, double cost = 0.0);
  int add_binary(std::string name, double cost = 0.0);
  void add_row(const LinearExpr& expr, RowSense sense, double rhs, std::string name);
  void add_objective(int var, double coef);
  void add_objective_offset(double value) { offset_ += value; }
  void set_bounds(int var, double lower, double upper);

  int num_vars() const { return static_cast<int>(lower_.size()); }
  int num_rows() const { return static_cast<int>(rows_.size()); }
  double lower(int var) const { return lower_[var]; }
  double upper(int var) const { return upper_[var]; }
  const std::vector<bool>& integer_mask() const { return integer_; }

  LinearProgram build() const;

 private:
  struct Row {
    std::vector<std::pair<int, double>> terms;
    bool equality;
    double rhs;
    std::string name;
  };
  std::vector<double> cost_;
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<bool> integer_;
  std::vector<std::string> names_;
  std::vector<Row> rows_;
  double offset_ = 0.0;
};

// Max primal infeasibility of x for lp (rows and bounds).
double primal_infeasibility(const LinearProgram& lp, const std::vector<double>& x);

double objective_value(const LinearProgram& lp, const std::vector<double>& x);

}  // namespace resd::lp
