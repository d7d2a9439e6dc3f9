#include "resd/lp/milp.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "resd/errors.hpp"
#include "resd/lp/simplex.hpp"

namespace resd::lp {
namespace {

struct Node {
  double bound;
  int id;
  std::vector<double> lower;
  std::vector<double> upper;
};

struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    return a.id > b.id;
  }
};

MilpStatus from_lp(LpStatus s) {
  switch (s) {
    case LpStatus::kOptimal: return MilpStatus::kOptimal;
    case LpStatus::kInfeasible: return MilpStatus::kInfeasible;
    case LpStatus::kUnbounded: return MilpStatus::kUnbounded;
    case LpStatus::kIterationLimit: return MilpStatus::kIterationLimit;
    case LpStatus::kNumericalBreakdown: return MilpStatus::kNumericalBreakdown;
  }
  return MilpStatus::kNumericalBreakdown;
}

}  // namespace

void MixedIntegerLinearProgram::validate() const {
  lp.validate();
  if (integer.size() != lp.num_vars()) {
    throw Error(ErrorCode::kDimensionMismatch, "integrality mask must have one entry per variable");
  }
  for (std::size_t j = 0; j < integer.size(); ++j) {
    if (integer[j] && (lp.lower[j] < 0.0 || lp.upper[j] > 1.0)) {
      throw Error(ErrorCode::kInvalidBounds, "binary variable " + std::to_string(j) + " not within [0, 1]");
    }
  }
}

const char* to_string(MilpStatus status) {
  switch (status) {
    case MilpStatus::kOptimal: return "Optimal";
    case MilpStatus::kInfeasible: return "Infeasible";
    case MilpStatus::kUnbounded: return "Unbounded";
    case MilpStatus::kNodeLimit: return "NodeLimit";
    case MilpStatus::kIterationLimit: return "IterationLimit";
    case MilpStatus::kNumericalBreakdown: return "NumericalBreakdown";
  }
  return "Unknown";
}

MilpSolution solve_milp(const MixedIntegerLinearProgram& milp, const SolverTolerances& tol) {
  milp.validate();
  const std::size_t n = milp.lp.num_vars();
  MilpSolution result;
  LinearProgram work = milp.lp;
  for (std::size_t j = 0; j < n; ++j) {
    if (milp.integer[j]) {
      work.lower[j] = std::ceil(work.lower[j] - tol.integrality);
      work.upper[j] = std::floor(work.upper[j] + tol.integrality);
      if (work.lower[j] > work.upper[j]) return result;
    }
  }

  std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
  int next_id = 0;
  open.push(Node{-kInf, next_id++, work.lower, work.upper});
  double incumbent = kInf;
  auto gap = [&](double inc) {
    return tol.mip_rel_gap > 0.0 ? std::min(tol.mip_abs_gap, tol.mip_rel_gap * std::abs(inc)) : tol.mip_abs_gap;
  };

  while (!open.empty()) {
    if (open.top().bound >= incumbent - gap(incumbent)) break;
    if (result.nodes >= tol.max_nodes) {
      result.status = MilpStatus::kNodeLimit;
      result.best_bound = std::min(incumbent, open.top().bound);
      return result;
    }
    Node node = open.top();
    open.pop();
    ++result.nodes;
    work.lower = node.lower;
    work.upper = node.upper;
    const LpSolution rel = solve_lp(work, tol);
    result.lp_iterations += rel.iterations;
    if (rel.status == LpStatus::kInfeasible) continue;
    if (rel.status != LpStatus::kOptimal) {
      result.status = from_lp(rel.status);
      result.best_bound = -kInf;
      return result;
    }
    if (node.id == 0) result.root_bound = rel.objective;
    if (rel.objective >= incumbent - gap(incumbent)) continue;

    int branch = -1;
    double best_frac = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (!milp.integer[j]) continue;
      const double v = rel.primal[j];
      const double frac = std::abs(v - std::round(v));
      if (frac > tol.integrality && frac > best_frac + 1e-12) {
        best_frac = frac;
        branch = static_cast<int>(j);
      }
    }
    if (branch < 0) {
      incumbent = rel.objective;
      result.primal = rel.primal;
      for (std::size_t j = 0; j < n; ++j) {
        if (milp.integer[j]) result.primal[j] = std::round(result.primal[j]);
      }
      result.objective = objective_value(milp.lp, result.primal);
      continue;
    }
    const double v = rel.primal[branch];
    Node down{rel.objective, next_id++, node.lower, node.upper};
    down.upper[branch] = std::floor(v);
    Node up{rel.objective, next_id++, std::move(node.lower), std::move(node.upper)};
    up.lower[branch] = std::ceil(v);
    open.push(std::move(down));
    open.push(std::move(up));
  }
  if (!std::isfinite(incumbent)) {
    result.status = MilpStatus::kInfeasible;
    return result;
  }
  result.status = MilpStatus::kOptimal;
  result.best_bound = open.empty() ? result.objective : std::min(result.objective, open.top().bound);
  return result;
}

std::pair<double, double> interval_bounds(const ModelBuilder& builder, const LinearExpr& expr) {
  double lo = expr.constant;
  double hi = expr.constant;
  for (const auto& [var, coef] : expr.terms) {
    const double l = builder.lower(var);
    const double u = builder.upper(var);
    if (coef > 0.0) {
      lo += coef * l;
      hi += coef * u;
    } else if (coef < 0.0) {
      lo += coef * u;
      hi += coef * l;
    }
  }
  return {lo, hi};
}

int linearize_binary_product(ModelBuilder& builder, int b, const LinearExpr& expr, double lower,
                             double upper, const std::string& name) {
  if (!(lower <= upper)) throw Error(ErrorCode::kInvalidBounds, "product '" + name + "' has L > U");
  if (!std::isfinite(lower) || !std::isfinite(upper)) {
    throw Error(ErrorCode::kInvalidBounds, "product '" + name + "' needs finite bounds");
  }
  const int aux = builder.add_var(name, std::min(lower, 0.0), std::max(upper, 0.0));
  {
    LinearExpr e;
    e.add(aux, 1.0).add(b, -upper);
    builder.add_row(e, RowSense::kLessEqual, 0.0, name + "_ub");
  }
  {
    LinearExpr e;
    e.add(aux, 1.0).add(b, -lower);
    builder.add_row(e, RowSense::kGreaterEqual, 0.0, name + "_lb");
  }
  {
    // aux - expr - L b <= -L
    LinearExpr e;
    e.add(aux, 1.0);
    for (const auto& [var, coef] : expr.terms) e.add(var, -coef);
    e.add(b, -lower);
    builder.add_row(e, RowSense::kLessEqual, expr.constant - lower, name + "_on_ub");
  }
  {
    // aux - expr - U b >= -U
    LinearExpr e;
    e.add(aux, 1.0);
    for (const auto& [var, coef] : expr.terms) e.add(var, -coef);
    e.add(b, -upper);
    builder.add_row(e, RowSense::kGreaterEqual, expr.constant - upper, name + "_on_lb");
  }
  return aux;
}

MixedIntegerLinearProgram build_milp(const ModelBuilder& builder) {
  MixedIntegerLinearProgram milp;
  milp.lp = builder.build();
  milp.integer = builder.integer_mask();
  return milp;
}

}  // namespace resd::lp
