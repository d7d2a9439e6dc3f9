#pragma once

#include <string>
#include <vector>

#include "resd/sip/oracles.hpp"
#include "resd/sip/problem.hpp"
#include "resd/timeseries/dataset.hpp"

namespace resd::sip {

enum class SolveStatus { kFeasible, kIterationLimit, kTimeLimit, kStalled };

const char* to_string(SolveStatus status);

struct IterationRecord {
  int iteration = 0;
  double lower_bound = 0.0;
  double oracle_value = 0.0;
  int disc_size = 0;
  int lbp_solves = 0;
  int lbp_nodes = 0;
  int llp_solves = 0;
  int mlp_solves = 0;
  double elapsed_s = 0.0;
  double subproblem_s = 0.0;  // cumulative sum of subproblem wall times
};

struct SolveLog {
  std::string method;
  std::vector<IterationRecord> records;

  // One JSON object per line.
  std::string to_jsonl() const;
};

struct RobustDesign {
  SolveStatus status = SolveStatus::kIterationLimit;
  std::vector<double> x;
  std::vector<std::string> names;
  double objective = 0.0;    // TAC for energy models
  double investment = 0.0;   // design-variable part of the objective
  double operational = 0.0;  // remainder (scenario operation)
  double maxmin_value = 0.0;
  std::vector<double> worst_y;
  std::vector<double> base_primal;  // base-model variables of the final LBP
  DiscretizationSet disc;
  int iterations = 0;
};

struct SupplyGapReport {
  std::vector<double> gaps;  // one per realization, negative = slack
  double max_gap = -lp::kInf;
  int worst_day = -1;
};

struct SolveResult {
  RobustDesign design;
  SolveLog log;
};

// Adaptive discretization: solve the lower bounding problem, query the
// oracle at its design, add the worst case while it exceeds feas_tol.
// Throws Error(kInfeasibleDesignSpace) when a lower bounding problem is
// infeasible. Iteration and time limits are statuses.
SolveResult solve_esip(const EsipProblem& problem, const MaxMinOracle& oracle, const ToleranceSettings& tol,
                       DiscretizationSet initial = {});

// Same loop over observed realizations: the operational gap is evaluated
// for every point and the `batch` largest violators are added as realized
// entries (no disjunction).
SolveResult feasibility_timestep_heuristic(const EsipProblem& problem, const std::vector<std::vector<double>>& points,
                                           const ToleranceSettings& tol, int batch = 1);
// Historical days of the dataset as realizations.
SolveResult feasibility_timestep_heuristic(const EsipProblem& problem, const ts::TimeSeriesDataset& dataset,
                                           const ToleranceSettings& tol, int batch = 1);

// Operational gap per point and its maximum (lowest index on ties).
SupplyGapReport operational_gaps(const EsipProblem& problem, const std::vector<double>& x,
                                 const std::vector<std::vector<double>>& points, const ToleranceSettings& tol);

// Operational LP per day of the dataset at design x.
SupplyGapReport evaluate_supply_gap(const EsipProblem& problem, const std::vector<double>& x,
                                    const ts::TimeSeriesDataset& dataset, const ToleranceSettings& tol = {});

}  // namespace resd::sip
