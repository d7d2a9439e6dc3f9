#include "resd/lp/linear_program.hpp"

#include <algorithm>
#include <cmath>

#include "resd/errors.hpp"

namespace resd {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kInvalidBounds: return "InvalidBounds";
    case ErrorCode::kTooLarge: return "TooLarge";
    case ErrorCode::kNotOptimal: return "NotOptimal";
    case ErrorCode::kSchemaError: return "SchemaError";
    case ErrorCode::kGapError: return "GapError";
    case ErrorCode::kRangeError: return "RangeError";
    case ErrorCode::kConstantSeries: return "ConstantSeries";
    case ErrorCode::kMissingYear: return "MissingYear";
    case ErrorCode::kNegativeIrradiance: return "NegativeIrradiance";
    case ErrorCode::kInfeasibleDesignSpace: return "InfeasibleDesignSpace";
    case ErrorCode::kLlpInfeasible: return "LlpInfeasible";
    case ErrorCode::kNonlinearLowerLevel: return "NonlinearLowerLevel";
    case ErrorCode::kInternal: return "Internal";
  }
  return "Unknown";
}

}  // namespace resd

namespace resd::lp {

const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal: return "Optimal";
    case LpStatus::kInfeasible: return "Infeasible";
    case LpStatus::kUnbounded: return "Unbounded";
    case LpStatus::kIterationLimit: return "IterationLimit";
    case LpStatus::kNumericalBreakdown: return "NumericalBreakdown";
  }
  return "Unknown";
}

void LinearProgram::validate() const {
  const auto n = static_cast<Eigen::Index>(num_vars());
  if (lower.size() != num_vars() || upper.size() != num_vars()) {
    throw Error(ErrorCode::kDimensionMismatch, "bound vectors must have one entry per variable");
  }
  if ((a_eq.rows() != 0 && a_eq.cols() != n) || (a_ub.rows() != 0 && a_ub.cols() != n)) {
    throw Error(ErrorCode::kDimensionMismatch, "row coefficient vectors must have one entry per variable");
  }
  if (static_cast<std::size_t>(a_eq.rows()) != b_eq.size() ||
      static_cast<std::size_t>(a_ub.rows()) != b_ub.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "row count and right-hand side length differ");
  }
  for (std::size_t j = 0; j < num_vars(); ++j) {
    if (std::isnan(lower[j]) || std::isnan(upper[j]) || lower[j] > upper[j]) {
      throw Error(ErrorCode::kInvalidBounds, "variable " + std::to_string(j) + " has lower > upper");
    }
    if (!std::isfinite(objective[j])) {
      throw Error(ErrorCode::kInvalidArgument, "objective coefficients must be finite");
    }
  }
  if (!a_eq.allFinite() || !a_ub.allFinite()) {
    throw Error(ErrorCode::kInvalidArgument, "constraint coefficients must be finite");
  }
  for (double b : b_eq) {
    if (!std::isfinite(b)) throw Error(ErrorCode::kInvalidArgument, "rhs must be finite");
  }
  for (double b : b_ub) {
    if (!std::isfinite(b)) throw Error(ErrorCode::kInvalidArgument, "rhs must be finite");
  }
}

double LpSolution::dual_objective(const LinearProgram& lp) const {
  double value = lp.objective_offset;
  for (std::size_t i = 0; i < lp.num_eq(); ++i) value -= eq_duals[i] * lp.b_eq[i];
  for (std::size_t i = 0; i < lp.num_ub(); ++i) value -= ub_duals[i] * lp.b_ub[i];
  for (std::size_t j = 0; j < lp.num_vars(); ++j) {
    const double d = reduced_costs[j];
    if (d > 0.0 && std::isfinite(lp.lower[j])) value += d * lp.lower[j];
    if (d < 0.0 && std::isfinite(lp.upper[j])) value += d * lp.upper[j];
  }
  return value;
}

int ModelBuilder::add_var(std::string name, double lower, double upper, double cost) {
  if (std::isnan(lower) || std::isnan(upper) || lower > upper) {
    throw Error(ErrorCode::kInvalidBounds, "variable '" + name + "' has lower > upper");
  }
  cost_.push_back(cost);
  lower_.push_back(lower);
  upper_.push_back(upper);
  integer_.push_back(false);
  names_.push_back(std::move(name));
  return num_vars() - 1;
}

int ModelBuilder::add_binary(std::string name, double cost) {
  const int id = add_var(std::move(name), 0.0, 1.0, cost);
  integer_[id] = true;
  return id;
}

void ModelBuilder::set_bounds(int var, double lower, double upper) {
  if (lower > upper) throw Error(ErrorCode::kInvalidBounds, "set_bounds: lower > upper");
  lower_[var] = lower;
  upper_[var] = upper;
}

void ModelBuilder::add_objective(int var, double coef) { cost_[var] += coef; }

void ModelBuilder::add_row(const LinearExpr& expr, RowSense sense, double rhs, std::string name) {
  Row row;
  row.equality = sense == RowSense::kEqual;
  const double sign = sense == RowSense::kGreaterEqual ? -1.0 : 1.0;
  for (const auto& [var, coef] : expr.terms) {
    if (var < 0 || var >= num_vars()) {
      throw Error(ErrorCode::kInvalidArgument, "row '" + name + "' references an undeclared variable");
    }
    row.terms.emplace_back(var, sign * coef);
  }
  row.rhs = sign * (rhs - expr.constant);
  row.name = std::move(name);
  rows_.push_back(std::move(row));
}

LinearProgram ModelBuilder::build() const {
  LinearProgram lp;
  const auto n = static_cast<Eigen::Index>(num_vars());
  lp.objective = cost_;
  lp.objective_offset = offset_;
  lp.lower = lower_;
  lp.upper = upper_;
  lp.var_names = names_;
  Eigen::Index n_eq = 0;
  Eigen::Index n_ub = 0;
  for (const Row& row : rows_) (row.equality ? n_eq : n_ub)++;
  lp.a_eq = Eigen::MatrixXd::Zero(n_eq, n);
  lp.a_ub = Eigen::MatrixXd::Zero(n_ub, n);
  Eigen::Index ie = 0;
  Eigen::Index iu = 0;
  for (const Row& row : rows_) {
    if (row.equality) {
      for (const auto& [var, coef] : row.terms) lp.a_eq(ie, var) += coef;
      lp.b_eq.push_back(row.rhs);
      lp.eq_names.push_back(row.name);
      ++ie;
    } else {
      for (const auto& [var, coef] : row.terms) lp.a_ub(iu, var) += coef;
      lp.b_ub.push_back(row.rhs);
      lp.ub_names.push_back(row.name);
      ++iu;
    }
  }
  return lp;
}

double primal_infeasibility(const LinearProgram& lp, const std::vector<double>& x) {
  double worst = 0.0;
  const Eigen::Map<const Eigen::VectorXd> xv(x.data(), static_cast<Eigen::Index>(x.size()));
  if (lp.num_eq() > 0) {
    const Eigen::VectorXd r = lp.a_eq * xv;
    for (std::size_t i = 0; i < lp.num_eq(); ++i) {
      worst = std::max(worst, std::abs(r(static_cast<Eigen::Index>(i)) - lp.b_eq[i]));
    }
  }
  if (lp.num_ub() > 0) {
    const Eigen::VectorXd r = lp.a_ub * xv;
    for (std::size_t i = 0; i < lp.num_ub(); ++i) {
      worst = std::max(worst, r(static_cast<Eigen::Index>(i)) - lp.b_ub[i]);
    }
  }
  for (std::size_t j = 0; j < lp.num_vars(); ++j) {
    worst = std::max(worst, lp.lower[j] - x[j]);
    worst = std::max(worst, x[j] - lp.upper[j]);
  }
  return worst;
}

double objective_value(const LinearProgram& lp, const std::vector<double>& x) {
  double value = lp.objective_offset;
  for (std::size_t j = 0; j < lp.num_vars(); ++j) value += lp.objective[j] * x[j];
  return value;
}

}  // namespace resd::lp
