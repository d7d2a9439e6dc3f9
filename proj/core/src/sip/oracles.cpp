#include "resd/sip/oracles.hpp"

#include <algorithm>
#include <cmath>

#include "parallel.hpp"
#include "resd/errors.hpp"
#include "resd/lp/milp.hpp"
#include "resd/sip/lower_level.hpp"

namespace resd::sip {

namespace {

OracleResult max_over(const EsipProblem& problem, const std::vector<std::vector<double>>& points,
                      const std::vector<double>& x, const ToleranceSettings& tol) {
  if (points.empty()) throw Error(ErrorCode::kInvalidArgument, "oracle needs at least one realization");
  const int n = static_cast<int>(points.size());
  std::vector<GapEvaluation> evals(static_cast<std::size_t>(n));
  std::vector<double> seconds(static_cast<std::size_t>(n), 0.0);
  detail::parallel_for(n, tol.threads, [&](int i) {
    const detail::Stopwatch sw(tol.record_timing);
    evals[i] = evaluate_gap(problem, x, points[i], tol.lp);
    seconds[i] = sw.seconds();
  });
  int best = 0;
  for (int i = 1; i < n; ++i) {
    if (evals[i].value > evals[best].value) best = i;
  }
  OracleResult r;
  r.y = points[best];
  r.value = evals[best].value;
  r.upper_bound = r.value;
  r.source = best;
  r.llp = std::move(evals[best].llp);
  r.llp_solution = std::move(evals[best].solution);
  r.llp_solves = n;
  for (double s : seconds) r.subproblem_seconds += s;
  return r;
}

}  // namespace

OracleResult maxmin_vertex_enum(const EsipProblem& problem, const std::vector<double>& x,
                                const ToleranceSettings& tol) {
  const auto* hull = std::get_if<LatentHull>(&problem.uncertainty);
  if (hull == nullptr) throw Error(ErrorCode::kInvalidArgument, "vertex enumeration needs a latent hull");
  const Eigen::MatrixXd& g = hull->bundle.generators.points;
  std::vector<std::vector<double>> points;
  for (Eigen::Index v = 0; v < g.rows(); ++v) points.push_back(hull_point_to_y(*hull, g.row(v).transpose()));
  return max_over(problem, points, x, tol);
}

OracleResult maxmin_finite(const EsipProblem& problem, const std::vector<std::vector<double>>& points,
                           const std::vector<double>& x, const ToleranceSettings& tol) {
  return max_over(problem, points, x, tol);
}

OracleResult maxmin_discretization(const EsipProblem& problem, const std::vector<double>& x,
                                   const ToleranceSettings& tol, double value_bound) {
  const auto* ex = std::get_if<ExplicitSet>(&problem.uncertainty);
  if (ex == nullptr) throw Error(ErrorCode::kInvalidArgument, "discretization oracle needs an explicit set");
  if (!(value_bound > 0.0)) throw Error(ErrorCode::kInvalidArgument, "value bound must be positive");

  OracleResult best;
  std::vector<std::vector<double>>& responses = best.responses;
  lp::SolverTolerances mlp_tol = tol.lp;
  mlp_tol.mip_abs_gap = tol.oracle_abs * 0.1;
  mlp_tol.mip_rel_gap = 0.0;

  for (int it = 0; it < tol.max_oracle_iterations; ++it) {
    lp::ModelBuilder b;
    std::vector<int> yid;
    for (const UncertainVar& v : ex->vars) {
      yid.push_back(v.binary ? b.add_binary(v.name) : b.add_var(v.name, v.lower, v.upper));
    }
    const int t = b.add_var("mlpobj", -value_bound, value_bound, -1.0);
    const std::vector<double> none;
    const Binding bx{&x, nullptr};
    const Binding by{&none, &yid};
    for (const PolyRow& r : ex->rows) {
      b.add_row(to_affine(r.expr, bx, by, Binding{&none, nullptr}),
                r.equality ? lp::RowSense::kEqual : lp::RowSense::kLessEqual, 0.0, r.name);
    }
    for (std::size_t l = 0; l < responses.size(); ++l) {
      lp::LinearExpr row = to_affine(problem.op.value, bx, by, Binding{&responses[l], nullptr});
      for (auto& term : row.terms) term.second = -term.second;
      row.constant = -row.constant;
      row.add(t, 1.0);
      b.add_row(row, lp::RowSense::kLessEqual, 0.0, "response" + std::to_string(l));
    }
    for (const PolyRow& r : problem.coupling) {
      lp::LinearExpr row = to_affine(r.expr, bx, by, Binding{&none, nullptr});
      row.add(t, 1.0);
      b.add_row(row, lp::RowSense::kLessEqual, 0.0, "coupling_" + r.name);
    }
    const detail::Stopwatch sw(tol.record_timing);
    const lp::MilpSolution mlp = lp::solve_milp(lp::build_milp(b), mlp_tol);
    best.subproblem_seconds += sw.seconds();
    ++best.mlp_solves;
    if (!mlp.optimal()) {
      throw Error(ErrorCode::kInternal, std::string("medial problem returned ") + lp::to_string(mlp.status));
    }
    const double upper = -mlp.best_bound;
    best.upper_bound = std::min(best.upper_bound, upper);

    std::vector<double> y(ex->vars.size());
    for (std::size_t k = 0; k < y.size(); ++k) {
      const double v = mlp.primal[yid[k]];
      y[k] = ex->vars[k].binary ? std::round(v) + 0.0 : std::clamp(v, ex->vars[k].lower, ex->vars[k].upper);
    }
    const detail::Stopwatch sw_llp(tol.record_timing);
    GapEvaluation g = evaluate_gap(problem, x, y, tol.lp);
    best.subproblem_seconds += sw_llp.seconds();
    ++best.llp_solves;
    if (g.value > best.value) {
      best.value = g.value;
      best.y = y;
      best.source = it;
      best.llp = std::move(g.llp);
      best.llp_solution = g.solution;
    }
    const double gap = best.upper_bound - best.value;
    if (gap <= tol.oracle_abs || gap <= tol.oracle_rel * std::abs(best.value)) break;
    const std::vector<double>& z = g.solution.primal;
    if (std::find(responses.begin(), responses.end(), z) != responses.end()) break;
    responses.push_back(z);
  }
  return best;
}

std::unique_ptr<MaxMinOracle> default_oracle(const EsipProblem& problem) {
  if (std::holds_alternative<LatentHull>(problem.uncertainty)) return std::make_unique<VertexEnumerationOracle>();
  if (std::holds_alternative<ExplicitSet>(problem.uncertainty)) return std::make_unique<DiscretizationOracle>();
  return std::make_unique<FiniteSetOracle>(std::get<FiniteSet>(problem.uncertainty).points);
}

}  // namespace resd::sip
