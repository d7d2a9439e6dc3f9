#include "resd/sip/esip.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "parallel.hpp"
#include "resd/errors.hpp"
#include "resd/lp/milp.hpp"
#include "resd/sip/lbp.hpp"
#include "resd/sip/lower_level.hpp"

namespace resd::sip {

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::kFeasible: return "Feasible";
    case SolveStatus::kIterationLimit: return "IterationLimit";
    case SolveStatus::kTimeLimit: return "TimeLimit";
    case SolveStatus::kStalled: return "Stalled";
  }
  return "Unknown";
}

std::string SolveLog::to_jsonl() const {
  std::ostringstream os;
  for (const IterationRecord& r : records) {
    nlohmann::ordered_json j;
    j["method"] = method;
    j["iteration"] = r.iteration;
    j["lower_bound"] = r.lower_bound;
    j["oracle_value"] = r.oracle_value;
    j["disc_size"] = r.disc_size;
    j["lbp_solves"] = r.lbp_solves;
    j["lbp_nodes"] = r.lbp_nodes;
    j["llp_solves"] = r.llp_solves;
    j["mlp_solves"] = r.mlp_solves;
    j["elapsed_s"] = r.elapsed_s;
    j["subproblem_s"] = r.subproblem_s;
    os << j.dump() << '\n';
  }
  return os.str();
}

namespace {


lp::SolverTolerances lbp_tolerances(const ToleranceSettings& tol) {
  lp::SolverTolerances t = tol.lp;
  t.mip_abs_gap = tol.lbp_abs;
  t.mip_rel_gap = tol.lbp_rel;
  return t;
}

// Shared outer loop; `separate` returns the entries to add (empty when the
// design is feasible) and reports the oracle value through `value`.
template <class Separate>
SolveResult outer_loop(const EsipProblem& problem, const ToleranceSettings& tol, const std::string& method,
                       DiscretizationSet disc, Separate separate) {
  problem.validate();
  tol.validate();
  const detail::Stopwatch clock(true);
  const detail::Stopwatch reported(tol.record_timing);
  const lp::SolverTolerances lbp_tol = lbp_tolerances(tol);
  const lp::LinearProgram base_lp = problem.base.build();
  const int n_base = problem.base.num_vars();

  SolveResult out;
  out.log.method = method;
  RobustDesign& d = out.design;
  d.names.assign(base_lp.var_names.begin(), base_lp.var_names.begin() + problem.num_design);
  IterationRecord acc;
  double lower = -lp::kInf;

  for (int it = 1; it <= tol.max_iterations; ++it) {
    const detail::Stopwatch sw(tol.record_timing);
    const lp::MilpSolution lbp = lp::solve_milp(build_lbp(problem, disc), lbp_tol);
    acc.subproblem_s += sw.seconds();
    ++acc.lbp_solves;
    acc.lbp_nodes += lbp.nodes;
    if (lbp.status == lp::MilpStatus::kInfeasible) {
      throw Error(ErrorCode::kInfeasibleDesignSpace, "lower bounding problem infeasible at iteration " + std::to_string(it));
    }
    if (!lbp.optimal()) {
      throw Error(ErrorCode::kInternal, std::string("lower bounding problem returned ") + lp::to_string(lbp.status));
    }
    lower = std::max(lower, lbp.best_bound);
    d.x.assign(lbp.primal.begin(), lbp.primal.begin() + problem.num_design);
    d.base_primal.assign(lbp.primal.begin(), lbp.primal.begin() + n_base);
    d.objective = lp::objective_value(base_lp, d.base_primal);
    d.investment = 0.0;
    for (int i = 0; i < problem.num_design; ++i) d.investment += base_lp.objective[i] * d.x[i];
    d.operational = d.objective - d.investment;

    double value = 0.0;
    std::vector<double> worst;
    std::vector<DiscretizationEntry> add = separate(d.x, value, worst, acc);
    d.maxmin_value = value;
    d.worst_y = worst;
    d.iterations = it;

    acc.iteration = it;
    acc.lower_bound = lower;
    acc.oracle_value = value;
    acc.disc_size = static_cast<int>(disc.size());
    acc.elapsed_s = reported.seconds();
    out.log.records.push_back(acc);

    if (add.empty()) {
      d.status = SolveStatus::kFeasible;
      d.disc = disc;
      return out;
    }
    bool grew = false;
    for (auto& e : add) grew = disc.add(std::move(e)) || grew;
    if (!grew) {
      d.status = SolveStatus::kStalled;
      d.disc = disc;
      return out;
    }
    if (clock.seconds() >= tol.max_time_s) {
      d.status = SolveStatus::kTimeLimit;
      d.disc = disc;
      return out;
    }
  }
  d.status = SolveStatus::kIterationLimit;
  d.disc = disc;
  return out;
}

}  // namespace

SolveResult solve_esip(const EsipProblem& problem, const MaxMinOracle& oracle, const ToleranceSettings& tol,
                       DiscretizationSet initial) {
  return outer_loop(problem, tol, oracle.name(), std::move(initial),
                    [&](const std::vector<double>& x, double& value, std::vector<double>& worst, IterationRecord& acc) {
                      OracleResult r = oracle.evaluate(problem, x, tol);
                      acc.llp_solves += r.llp_solves;
                      acc.mlp_solves += r.mlp_solves;
                      acc.subproblem_s += r.subproblem_seconds;
                      value = r.value;
                      worst = r.y;
                      std::vector<DiscretizationEntry> add;
                      if (r.value > tol.feas_tol) add.push_back({r.y, r.value, r.source});
                      return add;
                    });
}

SolveResult feasibility_timestep_heuristic(const EsipProblem& problem, const std::vector<std::vector<double>>& points,
                                           const ToleranceSettings& tol, int batch) {
  if (batch < 1) throw Error(ErrorCode::kInvalidArgument, "batch must be at least 1");
  if (points.empty()) throw Error(ErrorCode::kInvalidArgument, "no realizations given");
  const int n = static_cast<int>(points.size());
  return outer_loop(problem, tol, "heuristic", {},
                    [&](const std::vector<double>& x, double& value, std::vector<double>& worst, IterationRecord& acc) {
                      const detail::Stopwatch sw(tol.record_timing);
                      const SupplyGapReport rep = operational_gaps(problem, x, points, tol);
                      acc.subproblem_s += sw.seconds();
                      acc.llp_solves += n;
                      value = rep.max_gap;
                      worst = points[rep.worst_day];
                      std::vector<int> order(static_cast<std::size_t>(n));
                      std::iota(order.begin(), order.end(), 0);
                      std::stable_sort(order.begin(), order.end(),
                                       [&](int a, int b) { return rep.gaps[a] > rep.gaps[b]; });
                      std::vector<DiscretizationEntry> add;
                      for (int i = 0; i < batch && i < n; ++i) {
                        if (rep.gaps[order[i]] <= tol.feas_tol) break;
                        add.push_back({points[order[i]], rep.gaps[order[i]], order[i], true});
                      }
                      return add;
                    });
}

namespace {

std::vector<std::vector<double>> day_vectors(const ts::TimeSeriesDataset& dataset) {
  std::vector<std::vector<double>> days;
  for (int d = 0; d < dataset.days; ++d) days.push_back(dataset.day_vector(d));
  return days;
}

}  // namespace

SolveResult feasibility_timestep_heuristic(const EsipProblem& problem, const ts::TimeSeriesDataset& dataset,
                                           const ToleranceSettings& tol, int batch) {
  if (dataset.days == 0) throw Error(ErrorCode::kInvalidArgument, "empty dataset");
  return feasibility_timestep_heuristic(problem, day_vectors(dataset), tol, batch);
}

SupplyGapReport operational_gaps(const EsipProblem& problem, const std::vector<double>& x,
                                 const std::vector<std::vector<double>>& points, const ToleranceSettings& tol) {
  const int n = static_cast<int>(points.size());
  SupplyGapReport rep;
  rep.gaps.assign(points.size(), 0.0);
  detail::parallel_for(n, tol.threads, [&](int i) {
    if (static_cast<int>(points[i].size()) != problem.num_y) {
      throw Error(ErrorCode::kDimensionMismatch, "realization length differs from the uncertainty dimension");
    }
    rep.gaps[i] = evaluate_gap(problem, x, points[i], tol.lp).llp_value;
  });
  for (int i = 0; i < n; ++i) {
    if (rep.gaps[i] > rep.max_gap) {
      rep.max_gap = rep.gaps[i];
      rep.worst_day = i;
    }
  }
  return rep;
}

SupplyGapReport evaluate_supply_gap(const EsipProblem& problem, const std::vector<double>& x,
                                    const ts::TimeSeriesDataset& dataset, const ToleranceSettings& tol) {
  if (dataset.day_length() != problem.num_y) {
    throw Error(ErrorCode::kDimensionMismatch, "dataset day length differs from the uncertainty dimension");
  }
  return operational_gaps(problem, x, day_vectors(dataset), tol);
}

}  // namespace resd::sip
