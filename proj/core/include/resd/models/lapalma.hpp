#pragma once

#include <array>
#include <optional>
#include <vector>

#include "resd/models/economics.hpp"
#include "resd/models/physics.hpp"
#include "resd/sip/esip.hpp"
#include "resd/sip/problem.hpp"
#include "resd/timeseries/dataset.hpp"
#include "resd/timeseries/kmeans.hpp"
#include "resd/timeseries/pipeline.hpp"

namespace resd::models {

// Design vector order.
enum DesignVar : int { kPSolar = 0, kPWind = 1, kPDiesel = 2, kPBattery = 3, kEBattery = 4 };
inline constexpr int kNumDesignVars = 5;

struct LaPalmaOptions {
  TechnicalParams physics;
  ComponentCosts costs;
  EconomicParams econ;
  bool cyclic_worst_case = true;
  // Diesel limits inside the scenario blocks, 0 disables. The worst-case
  // block keeps f_diesel = 1 so the operational problem stays an LP.
  double diesel_ramp_per_hour = 0.0;  // fraction of P_diesel per hour
  double diesel_min_part_load = 0.0;  // fraction of P_diesel while running
  double diesel_capacity_bound_kw = 1e5;  // P_diesel upper bound when part load is on
  // Disabled components get a zero upper bound (solar, wind, diesel, battery).
  std::array<bool, kNumComponents> enabled{true, true, true, true};

  void validate() const;
};

struct ScenarioBlock {
  std::array<std::vector<int>, 3> gen;  // generation kW per solar/wind/diesel and step
  std::vector<int> p_in;
  std::vector<int> p_out;
  std::vector<int> energy;  // steps + 1 entries, energy[0] is the initial state
  std::vector<int> e_dot;
  std::vector<int> diesel_on;  // binaries, empty without part load
};

struct LaPalmaLayout {
  int steps = 0;
  double dt_s = 0.0;
  double dt_h = 0.0;
  std::vector<double> weights;
  std::vector<std::vector<double>> scenario_days;
  std::vector<ScenarioBlock> scenarios;
  // Operational template indices.
  std::vector<int> z_p_in;
  std::vector<int> z_p_out;
  std::vector<int> z_energy;
  std::vector<int> z_e_dot;
  std::vector<int> z_f_diesel;
  int z_epi = -1;
};

struct LaPalmaModel {
  sip::EsipProblem problem;
  LaPalmaLayout layout;
};

// Scenario blocks linearize P_c f_c through generation variables g_c <= c_cap P_c.
// The uncertainty vector is a day vector (solar cf, wind cf, demand kW per step).
// Throws Error(kDimensionMismatch) when the uncertainty layout and scenario steps differ.
LaPalmaModel build_lapalma(const ts::ScenarioSet& scenarios, sip::UncertaintySet uncertainty,
                           const LaPalmaOptions& options = {});
LaPalmaModel build_lapalma(const ts::PreprocessBundle& bundle, const LaPalmaOptions& options = {});

struct Census {
  int design_vars = 0;
  int scenario_vars = 0;
  int base_rows = 0;
  int template_vars = 0;
  int template_eq_rows = 0;
  int template_ub_rows = 0;
};

Census census(const LaPalmaModel& model);

struct DesignReport {
  double tac = 0.0;
  double investment = 0.0;
  double operational = 0.0;
  std::array<double, kNumComponents> component_investment{};
  std::array<double, 3> annual_generation_kwh{};  // solar, wind, diesel
  std::array<double, 3> generation_share{};       // fractions of total generation
  std::optional<double> renewable_penetration;    // empty without generation
  double annual_demand_kwh = 0.0;
  std::optional<double> cost_per_mwh;
  std::optional<sip::SupplyGapReport> supply_gap;
};

// TAC split recomputed from the design and scenario dispatch; the supply gap
// is evaluated when a dataset is given.
DesignReport evaluate_design(const LaPalmaModel& model, const sip::RobustDesign& design,
                             const ts::TimeSeriesDataset* dataset = nullptr,
                             const sip::ToleranceSettings& tol = {});

}  // namespace resd::models
