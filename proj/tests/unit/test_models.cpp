#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "resd/errors.hpp"
#include "resd/models/economics.hpp"
#include "resd/models/lapalma.hpp"
#include "resd/models/physics.hpp"
#include "resd/sip/esip.hpp"
#include "resd/sip/lower_level.hpp"
#include "resd/timeseries/synth.hpp"

using namespace resd;
using models::TechnicalParams;

namespace {

sip::ToleranceSettings quiet_tol() {
  sip::ToleranceSettings t;
  t.record_timing = false;
  return t;
}

// One representative day with constant quantities.
ts::ScenarioSet flat_day(int steps, double solar, double wind, double demand) {
  ts::ScenarioSet s;
  s.steps = steps;
  std::vector<double> day;
  for (double v : {solar, wind, demand}) day.insert(day.end(), static_cast<std::size_t>(steps), v);
  s.days = {day};
  s.weights = {1.0};
  s.cluster_sizes = {1};
  return s;
}

struct BatteryTrace {
  std::vector<double> p_in, p_out, energy;
};

// Storage balance and cyclic state within `tol` relative to the largest state.
void check_battery(const BatteryTrace& b, double dt_s, const TechnicalParams& tp, bool cyclic) {
  const int T = static_cast<int>(b.p_in.size());
  double scale = 1.0;
  for (double e : b.energy) scale = std::max(scale, std::abs(e));
  for (int t = 0; t < T; ++t) {
    const double expected = dt_s / 3600.0 * (tp.eta_in * b.p_in[t] - b.p_out[t] / tp.eta_out);
    CHECK(std::abs(b.energy[t + 1] - b.energy[t] - expected) <= 1e-7 * scale);
    CHECK(b.energy[t + 1] >= -1e-7 * scale);
  }
  if (cyclic) CHECK(std::abs(b.energy[T] - b.energy[0]) <= 1e-7 * scale);
}

BatteryTrace pick(const std::vector<double>& v, const std::vector<int>& in, const std::vector<int>& out,
                  const std::vector<int>& energy) {
  BatteryTrace b;
  for (int i : in) b.p_in.push_back(v[i]);
  for (int i : out) b.p_out.push_back(v[i]);
  for (int i : energy) b.energy.push_back(v[i]);
  return b;
}

}  // namespace

TEST_CASE("solar capacity factor") {
  CHECK(models::solar_capacity_factor(0.0) == 0.0);
  CHECK(models::solar_capacity_factor(0.9) == 1.0);
  CHECK(models::solar_capacity_factor(2.0) == 1.0);
  CHECK(models::solar_capacity_factor(0.1) == doctest::Approx(0.1 * 0.19 / 0.171));
  try {
    models::solar_capacity_factor(-0.1);
    FAIL("expected an exception");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNegativeIrradiance);
  }
}

TEST_CASE("wind speed and capacity factor") {
  CHECK(models::wind_speed_at_hub(0.0) == 0.0);
  CHECK(models::wind_speed_at_hub(10.0) == doctest::Approx(10.0 * std::log(85.0 / 0.3) / std::log(10.0 / 0.3)));
  CHECK(models::wind_speed_at_hub(10.0) == doctest::Approx(16.10).epsilon(1e-3));
  CHECK(models::wind_speed_at_hub(7.0) == doctest::Approx(2.0 * models::wind_speed_at_hub(3.5)));

  const TechnicalParams p;
  CHECK(models::wind_capacity_factor_at_hub(25.0) == 0.0);
  CHECK(models::wind_capacity_factor_at_hub(30.0) == 0.0);
  CHECK(models::wind_capacity_factor_at_hub(24.9) > 0.0);
  CHECK(models::wind_capacity_factor_at_hub(7.0) == doctest::Approx(p.power_curve_kw[7] / 2350.0));
  CHECK(models::wind_capacity_factor_at_hub(7.5) ==
        doctest::Approx(0.5 * (p.power_curve_kw[7] + p.power_curve_kw[8]) / 2350.0));
  for (double v = 0.0; v < 40.0; v += 0.25) {
    const double cf = models::wind_capacity_factor_at_hub(v);
    CHECK(cf >= 0.0);
    CHECK(cf <= 1.0);
  }
}

TEST_CASE("annuity factor") {
  CHECK(models::annuity_factor(0.08, 25) == doctest::Approx(10.675).epsilon(1e-4));
  CHECK(std::abs(models::annuity_factor(0.08, 25) - 10.675) <= 1e-3);
  CHECK(models::annuity_factor(0.08, 1) == doctest::Approx(1.0 / 1.08));
  CHECK(models::annuity_factor(1e-8, 25) == doctest::Approx(25.0).epsilon(1e-6));
}

TEST_CASE("diesel variable cost") {
  const models::DieselCostBreakdown d = models::diesel_variable_cost();
  CHECK(std::abs(d.fuel - 0.120) <= 0.001);
  CHECK(d.fuel == doctest::Approx(551.85 / 4597.93).epsilon(1e-4));
  CHECK(d.co2 == doctest::Approx(80.821 * 0.00062 * 1.028).epsilon(1e-9));
  CHECK(std::abs(d.co2 - 0.0515) <= 1e-4);
  CHECK(std::abs(models::diesel_variable_cost({}, 0.079).total - 0.242) <= 0.002);

  models::EconomicParams unit;
  unit.eta_therm = 1.0;
  unit.pr_fuel = unit.lhv_kwh_per_t;
  unit.pr_logistics = 0.0;
  CHECK(models::diesel_variable_cost(unit).fuel == doctest::Approx(1.0));
}

TEST_CASE("inflation adjustment") {
  std::map<int, std::vector<double>> ppi{{2015, std::vector<double>(12, 100.0)},
                                         {2022, std::vector<double>(12, 110.0)}};
  CHECK(models::inflation_adjust(50.0, 2015, ppi) == doctest::Approx(55.0));
  CHECK(models::inflation_adjust(50.0, 2022, ppi) == 50.0);
  std::vector<double> ramp;
  for (int m = 0; m < 12; ++m) ramp.push_back(95.0 + m);
  ppi[2016] = ramp;
  CHECK(models::annual_ppi(ppi, 2016) == doctest::Approx(100.5));
  try {
    models::inflation_adjust(1.0, 2001, ppi);
    FAIL("expected an exception");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kMissingYear);
  }
}

TEST_CASE("parameter validation") {
  models::ComponentCosts c;
  c[models::kDiesel].c_var = -1.0;
  CHECK_THROWS_AS(c.validate(), Error);
  TechnicalParams p;
  p.initial_soc = 1.5;
  CHECK_THROWS_AS(p.validate(), Error);
  models::EconomicParams e;
  e.interest = 0.0;
  CHECK_THROWS_AS(e.validate(), Error);
}

TEST_CASE("la palma census at two steps") {
  const ts::PreprocessBundle b = ts::preprocess(ts::synth_generate(3, 30, 2), 1, 1, 1);
  const models::LaPalmaModel m = models::build_lapalma(b);
  const models::Census c = models::census(m);
  const int T = 2;
  const int S = 1;
  CHECK(c.design_vars == 5);
  CHECK(c.scenario_vars == S * (7 * T + 1));  // 3T generation, P_in, P_out, E_0..E_T, E_dot
  CHECK(c.base_rows == 1 + S * (9 * T + 2));
  CHECK(c.template_vars == 5 * T + 2);        // P_in, P_out, E_0..E_T, E_dot, f_diesel, e
  CHECK(c.template_eq_rows == 2 * T + 2);     // E_dot, Euler, initial, cyclic
  CHECK(c.template_ub_rows == 4 * T);         // gap, P_out, P_in, E
  CHECK(m.problem.num_y == 3 * T);
}

TEST_CASE("zero demand needs no capacity") {
  const ts::ScenarioSet s = flat_day(4, 0.5, 0.5, 0.0);
  const models::LaPalmaModel m = models::build_lapalma(s, sip::FiniteSet{s.days});
  const sip::FiniteSetOracle oracle(s.days);
  const sip::SolveResult r = sip::solve_esip(m.problem, oracle, quiet_tol());
  REQUIRE(r.design.status == sip::SolveStatus::kFeasible);
  CHECK(r.design.objective == doctest::Approx(0.0));
  for (double v : r.design.x) CHECK(v == doctest::Approx(0.0));
  const models::DesignReport rep = models::evaluate_design(m, r.design);
  CHECK_FALSE(rep.renewable_penetration.has_value());
  CHECK_FALSE(rep.cost_per_mwh.has_value());
}

TEST_CASE("diesel-only design matches the analytic optimum") {
  const double d = 1000.0;
  const ts::ScenarioSet s = flat_day(4, 0.7, 0.3, d);
  models::LaPalmaOptions opt;
  opt.enabled = {false, false, true, false};
  const models::LaPalmaModel m = models::build_lapalma(s, sip::FiniteSet{s.days}, opt);
  const sip::FiniteSetOracle oracle(s.days);
  const sip::SolveResult r = sip::solve_esip(m.problem, oracle, quiet_tol());
  REQUIRE(r.design.status == sip::SolveStatus::kFeasible);
  const models::CostEntry& c = opt.costs[models::kDiesel];
  const double f_an = models::annuity_factor(0.08, 25);
  const double tac = d * (c.c_inv / f_an + c.c_fix) + 365.0 * 4 * (24.0 / 4) * d * c.c_var;
  CHECK(r.design.x[models::kPDiesel] == doctest::Approx(d));
  CHECK(r.design.objective == doctest::Approx(tac));
  const models::DesignReport rep = models::evaluate_design(m, r.design);
  REQUIRE(rep.renewable_penetration.has_value());
  CHECK(*rep.renewable_penetration == doctest::Approx(0.0));
  CHECK(rep.tac == doctest::Approx(tac));
}

TEST_CASE("synthetic instance: dispatch invariants and accounting") {
  const ts::TimeSeriesDataset ds = ts::synth_generate(11, 30, 4);
  const ts::PreprocessBundle b = ts::preprocess(ds, 3, 12, 5);
  const models::LaPalmaModel m = models::build_lapalma(b);
  const models::LaPalmaLayout& L = m.layout;
  const TechnicalParams tp;
  const sip::VertexEnumerationOracle oracle;
  const sip::SolveResult r = sip::solve_esip(m.problem, oracle, quiet_tol());
  REQUIRE(r.design.status == sip::SolveStatus::kFeasible);

  SUBCASE("battery balance in every scenario block") {
    const auto& x = r.design.x;
    CHECK(x[models::kEBattery] == doctest::Approx(tp.energy_to_power * x[models::kPBattery]));
    for (const models::ScenarioBlock& blk : L.scenarios) {
      const BatteryTrace t = pick(r.design.base_primal, blk.p_in, blk.p_out, blk.energy);
      check_battery(t, L.dt_s, tp, true);
      CHECK(t.energy[0] == doctest::Approx(tp.initial_soc * x[models::kEBattery]));
      for (int i = 0; i < L.steps; ++i) {
        CHECK(t.p_in[i] <= x[models::kPBattery] * (1 + 1e-9) + 1e-6);
        CHECK(t.p_out[i] <= x[models::kPBattery] * (1 + 1e-9) + 1e-6);
      }
    }
  }
  SUBCASE("battery balance in the operational problem at every day") {
    for (int d = 0; d < ds.days; ++d) {
      const sip::GapEvaluation g = sip::evaluate_gap(m.problem, r.design.x, ds.day_vector(d));
      check_battery(pick(g.solution.primal, L.z_p_in, L.z_p_out, L.z_energy), L.dt_s, tp, true);
    }
  }
  SUBCASE("robust design covers every day") {
    const sip::SupplyGapReport rep = sip::evaluate_supply_gap(m.problem, r.design.x, ds, quiet_tol());
    CHECK(rep.max_gap <= 5e-2);
  }
  SUBCASE("generation shares sum to one") {
    const models::DesignReport rep = models::evaluate_design(m, r.design, &ds);
    double sum = 0.0;
    for (double s : rep.generation_share) sum += s;
    CHECK(std::abs(sum - 1.0) <= 1e-9);
    CHECK(rep.tac == doctest::Approx(r.design.objective).epsilon(1e-9));
    REQUIRE(rep.supply_gap.has_value());
  }
  SUBCASE("zero capacity leaves the peak demand uncovered") {
    const sip::SupplyGapReport rep = sip::evaluate_supply_gap(m.problem, std::vector<double>(5, 0.0), ds);
    double peak = 0.0;
    for (int d = 0; d < ds.days; ++d) {
      for (int t = 0; t < ds.steps; ++t) peak = std::max(peak, ds.at(d, ts::kDemand, t));
    }
    CHECK(rep.max_gap == doctest::Approx(peak));
  }
  SUBCASE("costlier components never lower the TAC") {
    for (int c = 0; c < models::kNumComponents; ++c) {
      models::LaPalmaOptions opt;
      opt.costs[c].c_inv *= 1.5;
      opt.costs[c].c_var *= 1.5;
      const models::LaPalmaModel m2 = models::build_lapalma(b, opt);
      const sip::SolveResult r2 = sip::solve_esip(m2.problem, oracle, quiet_tol());
      CAPTURE(c);
      CHECK(r2.design.objective >= r.design.objective * (1.0 - 1e-6));
    }
  }
}

TEST_CASE("diesel ramping and minimum part load") {
  ts::ScenarioSet s = flat_day(4, 0.0, 0.0, 0.0);
  const std::vector<double> demand{1000.0, 100.0, 1000.0, 100.0};
  for (int t = 0; t < 4; ++t) s.days[0][static_cast<std::size_t>(ts::kDemand * 4 + t)] = demand[t];
  models::LaPalmaOptions base;
  base.enabled = {false, false, true, false};
  const sip::FiniteSetOracle oracle(s.days);
  const auto solve = [&](const models::LaPalmaOptions& opt) {
    const models::LaPalmaModel m = models::build_lapalma(s, sip::FiniteSet{s.days}, opt);
    sip::SolveResult r = sip::solve_esip(m.problem, oracle, quiet_tol());
    REQUIRE(r.design.status == sip::SolveStatus::kFeasible);
    std::vector<double> g;
    for (int id : m.layout.scenarios[0].gen[models::kDiesel]) g.push_back(r.design.base_primal[id]);
    return std::make_pair(r.design, g);
  };
  const auto [free_design, free_g] = solve(base);
  CHECK(free_g[1] == doctest::Approx(100.0));

  SUBCASE("ramp limit") {
    models::LaPalmaOptions opt = base;
    opt.diesel_ramp_per_hour = 0.05;
    const auto [d, g] = solve(opt);
    const double limit = 0.05 * 6.0 * d.x[models::kPDiesel];
    for (int t = 1; t < 4; ++t) CHECK(std::abs(g[t] - g[t - 1]) <= limit + 1e-6);
    CHECK(d.objective > free_design.objective);
    CHECK((g[1] > 100.0 + 1.0 || d.x[models::kPDiesel] > 1000.0 + 1.0));
  }
  SUBCASE("part load") {
    models::LaPalmaOptions opt = base;
    opt.diesel_min_part_load = 0.5;
    const auto [d, g] = solve(opt);
    const double pd = d.x[models::kPDiesel];
    CHECK(pd == doctest::Approx(1000.0));
    for (double v : g) CHECK((std::abs(v) <= 1e-6 || v >= 0.5 * pd - 1e-6));
    CHECK(g[1] == doctest::Approx(500.0));
    CHECK(d.objective > free_design.objective);
  }
  SUBCASE("invalid settings") {
    models::LaPalmaOptions opt = base;
    opt.diesel_min_part_load = 1.5;
    CHECK_THROWS_AS(opt.validate(), Error);
  }
}
