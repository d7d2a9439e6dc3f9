#include "resd/models/lapalma.hpp"

#include <algorithm>
#include <string>

#include "resd/errors.hpp"
#include "resd/lp/milp.hpp"

namespace resd::models {

namespace {

std::string idx(int s, int t) { return "[" + std::to_string(s) + "," + std::to_string(t) + "]"; }
std::string idx(int t) { return "[" + std::to_string(t) + "]"; }

int uncertainty_dim(const sip::UncertaintySet& u) {
  if (const auto* h = std::get_if<sip::LatentHull>(&u)) return h->bundle.pca.dim();
  if (const auto* e = std::get_if<sip::ExplicitSet>(&u)) return static_cast<int>(e->vars.size());
  const auto& f = std::get<sip::FiniteSet>(u);
  return f.points.empty() ? -1 : static_cast<int>(f.points.front().size());
}

}  // namespace

void LaPalmaOptions::validate() const {
  physics.validate();
  costs.validate();
  econ.validate();
  if (!(diesel_ramp_per_hour >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "diesel ramp must be >= 0");
  if (!(diesel_min_part_load >= 0.0 && diesel_min_part_load <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "diesel part load must lie in [0, 1]");
  }
  if (!(diesel_capacity_bound_kw > 0.0)) throw Error(ErrorCode::kInvalidArgument, "diesel capacity bound must be positive");
}

LaPalmaModel build_lapalma(const ts::ScenarioSet& scenarios, sip::UncertaintySet uncertainty,
                           const LaPalmaOptions& options) {
  options.validate();
  const int T = scenarios.steps;
  if (T < 1 || scenarios.size() == 0) throw Error(ErrorCode::kInvalidArgument, "need at least one scenario and step");
  if (scenarios.quantities != ts::kNumQuantities) {
    throw Error(ErrorCode::kDimensionMismatch, "scenarios must carry solar, wind and demand");
  }
  const int ny = ts::kNumQuantities * T;
  const int u_dim = uncertainty_dim(uncertainty);
  if (u_dim >= 0 && u_dim != ny) {
    throw Error(ErrorCode::kDimensionMismatch, "uncertainty dimension " + std::to_string(u_dim) +
                                                   " differs from scenario layout " + std::to_string(ny));
  }
  if (const auto* h = std::get_if<sip::LatentHull>(&uncertainty); h != nullptr && h->bundle.steps != T) {
    throw Error(ErrorCode::kDimensionMismatch, "bundle steps differ from scenario steps");
  }

  const TechnicalParams& tp = options.physics;
  const ComponentCosts& costs = options.costs;
  const double f_an = annuity_factor(options.econ.interest, options.econ.horizon_years);

  LaPalmaModel m;
  LaPalmaLayout& L = m.layout;
  L.steps = T;
  L.dt_s = 86400.0 / T;
  L.dt_h = 24.0 / T;
  L.weights = scenarios.weights;
  L.scenario_days = scenarios.days;

  sip::EsipProblem& p = m.problem;
  p.name = "lapalma";
  lp::ModelBuilder& b = p.base;
  const auto annual = [&](int c) { return costs[c].c_inv / f_an + costs[c].c_fix; };
  const auto cap = [&](int c) { return options.enabled[static_cast<std::size_t>(c)] ? lp::kInf : 0.0; };
  b.add_var("P_solar", 0.0, cap(kSolarPv), annual(kSolarPv));
  b.add_var("P_wind", 0.0, cap(kWindTurbine), annual(kWindTurbine));
  const bool part_load = options.diesel_min_part_load > 0.0;
  b.add_var("P_diesel", 0.0, part_load ? std::min(cap(kDiesel), options.diesel_capacity_bound_kw) : cap(kDiesel),
            annual(kDiesel));
  b.add_var("P_battery", 0.0, cap(kBattery), annual(kBattery));
  b.add_var("E_battery", 0.0, cap(kBattery), 0.0);
  p.num_design = kNumDesignVars;
  b.add_row(lp::LinearExpr{}.add(kEBattery, 1.0).add(kPBattery, -tp.energy_to_power), lp::RowSense::kEqual, 0.0,
            "energy_to_power");

  static constexpr std::array<const char*, 3> gen_names{"g_solar", "g_wind", "g_diesel"};
  static constexpr std::array<int, 3> gen_design{kPSolar, kPWind, kPDiesel};
  for (int s = 0; s < scenarios.size(); ++s) {
    ScenarioBlock blk;
    const double energy_weight = 365.0 * scenarios.weights[s] * L.dt_h;
    for (int c = 0; c < 3; ++c) {
      for (int t = 0; t < T; ++t) {
        blk.gen[c].push_back(b.add_var(gen_names[c] + idx(s, t), 0.0, lp::kInf, energy_weight * costs[c].c_var));
      }
    }
    for (int t = 0; t < T; ++t) blk.p_in.push_back(b.add_var("P_in" + idx(s, t), 0.0, lp::kInf));
    for (int t = 0; t < T; ++t) blk.p_out.push_back(b.add_var("P_out" + idx(s, t), 0.0, lp::kInf));
    blk.energy.push_back(b.add_var("E" + idx(s, 0), -lp::kInf, lp::kInf));
    for (int t = 1; t <= T; ++t) blk.energy.push_back(b.add_var("E" + idx(s, t), 0.0, lp::kInf));
    for (int t = 0; t < T; ++t) blk.e_dot.push_back(b.add_var("E_dot" + idx(s, t), -lp::kInf, lp::kInf));

    for (int t = 0; t < T; ++t) {
      lp::LinearExpr bal;
      for (int c = 0; c < 3; ++c) bal.add(blk.gen[c][t], -1.0);
      bal.add(blk.p_in[t], 1.0).add(blk.p_out[t], -1.0);
      b.add_row(bal, lp::RowSense::kLessEqual, -scenarios.value(s, ts::kDemand, t), "demand" + idx(s, t));
    }
    for (int c = 0; c < 3; ++c) {
      for (int t = 0; t < T; ++t) {
        const double cf = c == kDiesel ? 1.0 : scenarios.value(s, c, t);
        b.add_row(lp::LinearExpr{}.add(blk.gen[c][t], 1.0).add(gen_design[c], -cf), lp::RowSense::kLessEqual, 0.0,
                  std::string("cap_") + kComponentNames[c] + idx(s, t));
      }
    }
    const std::vector<int>& diesel = blk.gen[kDiesel];
    if (options.diesel_ramp_per_hour > 0.0) {
      const double r = options.diesel_ramp_per_hour * L.dt_h;
      for (int t = 1; t < T; ++t) {
        b.add_row(lp::LinearExpr{}.add(diesel[t], 1.0).add(diesel[t - 1], -1.0).add(kPDiesel, -r),
                  lp::RowSense::kLessEqual, 0.0, "ramp_up" + idx(s, t));
        b.add_row(lp::LinearExpr{}.add(diesel[t - 1], 1.0).add(diesel[t], -1.0).add(kPDiesel, -r),
                  lp::RowSense::kLessEqual, 0.0, "ramp_down" + idx(s, t));
      }
    }
    if (part_load) {
      for (int t = 0; t < T; ++t) {
        const int on = b.add_binary("on_diesel" + idx(s, t));
        const int running = lp::linearize_binary_product(b, on, lp::LinearExpr{}.add(kPDiesel, 1.0), 0.0,
                                                     b.upper(kPDiesel), "P_diesel_on" + idx(s, t));
        b.add_row(lp::LinearExpr{}.add(diesel[t], 1.0).add(running, -1.0), lp::RowSense::kLessEqual, 0.0,
                  "diesel_off" + idx(s, t));
        b.add_row(lp::LinearExpr{}.add(running, options.diesel_min_part_load).add(diesel[t], -1.0),
                  lp::RowSense::kLessEqual, 0.0, "part_load" + idx(s, t));
        blk.diesel_on.push_back(on);
      }
    }
    for (int t = 0; t < T; ++t) {
      b.add_row(lp::LinearExpr{}.add(blk.p_in[t], 1.0).add(kPBattery, -1.0), lp::RowSense::kLessEqual, 0.0,
                "P_in_max" + idx(s, t));
      b.add_row(lp::LinearExpr{}.add(blk.p_out[t], 1.0).add(kPBattery, -1.0), lp::RowSense::kLessEqual, 0.0,
                "P_out_max" + idx(s, t));
      b.add_row(lp::LinearExpr{}.add(blk.energy[t + 1], 1.0).add(kEBattery, -1.0), lp::RowSense::kLessEqual, 0.0,
                "E_max" + idx(s, t + 1));
      b.add_row(lp::LinearExpr{}
                    .add(blk.e_dot[t], 1.0)
                    .add(blk.p_in[t], -tp.eta_in / 3600.0)
                    .add(blk.p_out[t], 1.0 / (3600.0 * tp.eta_out)),
                lp::RowSense::kEqual, 0.0, "E_dot_def" + idx(s, t));
      b.add_row(lp::LinearExpr{}.add(blk.e_dot[t], L.dt_s).add(blk.energy[t + 1], -1.0).add(blk.energy[t], 1.0),
                lp::RowSense::kEqual, 0.0, "euler" + idx(s, t));
    }
    b.add_row(lp::LinearExpr{}.add(blk.energy[0], 1.0).add(kEBattery, -tp.initial_soc), lp::RowSense::kEqual, 0.0,
              "E_init" + idx(s));
    b.add_row(lp::LinearExpr{}.add(blk.energy[T], 1.0).add(blk.energy[0], -1.0), lp::RowSense::kEqual, 0.0,
              "cyclic" + idx(s));
    L.scenarios.push_back(std::move(blk));
  }

  // Worst-case operational template over y = (f_solar, f_wind, demand).
  sip::OperationalTemplate& op = p.op;
  const auto zvar = [&](std::string name, double lo, double hi) {
    op.vars.push_back({std::move(name), lo, hi});
    return static_cast<int>(op.vars.size()) - 1;
  };
  for (int t = 0; t < T; ++t) L.z_p_in.push_back(zvar("P_in_wc" + idx(t), 0.0, lp::kInf));
  for (int t = 0; t < T; ++t) L.z_p_out.push_back(zvar("P_out_wc" + idx(t), 0.0, lp::kInf));
  L.z_energy.push_back(zvar("E_wc" + idx(0), -lp::kInf, lp::kInf));
  for (int t = 1; t <= T; ++t) L.z_energy.push_back(zvar("E_wc" + idx(t), 0.0, lp::kInf));
  for (int t = 0; t < T; ++t) L.z_e_dot.push_back(zvar("E_dot_wc" + idx(t), -lp::kInf, lp::kInf));
  for (int t = 0; t < T; ++t) L.z_f_diesel.push_back(zvar("f_diesel_wc" + idx(t), 1.0, 1.0));
  L.z_epi = zvar("e_epi", -lp::kInf, lp::kInf);
  op.epigraph = L.z_epi;
  op.value.add_z(L.z_epi, 1.0);

  const auto row = [&](sip::Poly e, bool eq, sip::RowRole role, std::string name) {
    op.rows.push_back({std::move(e), eq, role, std::move(name)});
  };
  for (int t = 0; t < T; ++t) {
    sip::Poly gap;
    gap.add_y(ts::kDemand * T + t, 1.0)
        .add_z(L.z_p_in[t], 1.0)
        .add_z(L.z_p_out[t], -1.0)
        .add_xy(kPSolar, ts::kSolar * T + t, -1.0)
        .add_xy(kPWind, ts::kWind * T + t, -1.0)
        .add_xz(kPDiesel, L.z_f_diesel[t], -1.0)
        .add_z(L.z_epi, -1.0);
    row(gap, false, sip::RowRole::kGap, "gap" + idx(t));
  }
  for (int t = 0; t < T; ++t) {
    row(sip::Poly{}.add_z(L.z_p_out[t], 1.0).add_x(kPBattery, -1.0), false, sip::RowRole::kPhysics, "P_out_max_wc" + idx(t));
    row(sip::Poly{}.add_z(L.z_p_in[t], 1.0).add_x(kPBattery, -1.0), false, sip::RowRole::kPhysics, "P_in_max_wc" + idx(t));
    row(sip::Poly{}.add_z(L.z_energy[t + 1], 1.0).add_x(kEBattery, -1.0), false, sip::RowRole::kPhysics,
        "E_max_wc" + idx(t + 1));
  }
  for (int t = 0; t < T; ++t) {
    row(sip::Poly{}
            .add_z(L.z_e_dot[t], 1.0)
            .add_z(L.z_p_in[t], -tp.eta_in / 3600.0)
            .add_z(L.z_p_out[t], 1.0 / (3600.0 * tp.eta_out)),
        true, sip::RowRole::kPhysics, "E_dot_def_wc" + idx(t));
    row(sip::Poly{}.add_z(L.z_e_dot[t], L.dt_s).add_z(L.z_energy[t + 1], -1.0).add_z(L.z_energy[t], 1.0), true,
        sip::RowRole::kPhysics, "euler_wc" + idx(t));
  }
  row(sip::Poly{}.add_z(L.z_energy[0], 1.0).add_x(kEBattery, -tp.initial_soc), true, sip::RowRole::kPhysics, "E_init_wc");
  if (options.cyclic_worst_case) {
    row(sip::Poly{}.add_z(L.z_energy[T], 1.0).add_z(L.z_energy[0], -1.0), true, sip::RowRole::kPhysics, "cyclic_wc");
  }

  p.num_y = ny;
  static constexpr std::array<const char*, 3> q_names{"f_solar_wc", "f_wind_wc", "P_demand_wc"};
  for (int q = 0; q < ts::kNumQuantities; ++q) {
    for (int t = 0; t < T; ++t) p.y_names.push_back(q_names[q] + idx(t));
  }
  p.uncertainty = std::move(uncertainty);
  p.validate();
  return m;
}

LaPalmaModel build_lapalma(const ts::PreprocessBundle& bundle, const LaPalmaOptions& options) {
  return build_lapalma(bundle.scenarios, sip::LatentHull{bundle}, options);
}

Census census(const LaPalmaModel& model) {
  Census c;
  const sip::EsipProblem& p = model.problem;
  c.design_vars = p.num_design;
  c.scenario_vars = p.base.num_vars() - p.num_design;
  c.base_rows = p.base.num_rows();
  c.template_vars = static_cast<int>(p.op.vars.size());
  for (const auto& r : p.op.rows) (r.equality ? c.template_eq_rows : c.template_ub_rows)++;
  return c;
}

DesignReport evaluate_design(const LaPalmaModel& model, const sip::RobustDesign& design,
                             const ts::TimeSeriesDataset* dataset, const sip::ToleranceSettings& tol) {
  const sip::EsipProblem& p = model.problem;
  const LaPalmaLayout& L = model.layout;
  if (static_cast<int>(design.x.size()) != p.num_design) {
    throw Error(ErrorCode::kDimensionMismatch, "design vector length differs from the model");
  }
  const lp::LinearProgram lp = p.base.build();
  DesignReport r;
  static constexpr std::array<int, kNumComponents> sized{kPSolar, kPWind, kPDiesel, kPBattery};
  for (int c = 0; c < kNumComponents; ++c) {
    r.component_investment[c] = lp.objective[sized[c]] * design.x[sized[c]];
    r.investment += r.component_investment[c];
  }
  const bool have_dispatch = static_cast<int>(design.base_primal.size()) == p.base.num_vars();
  double total = 0.0;
  for (std::size_t s = 0; s < L.scenarios.size(); ++s) {
    const double w = 365.0 * L.weights[s] * L.dt_h;
    for (int t = 0; t < L.steps; ++t) {
      r.annual_demand_kwh += w * L.scenario_days[s][static_cast<std::size_t>(ts::kDemand * L.steps + t)];
      if (!have_dispatch) continue;
      for (int c = 0; c < 3; ++c) {
        const int id = L.scenarios[s].gen[c][t];
        const double g = design.base_primal[id];
        r.annual_generation_kwh[c] += w * g;
        r.operational += lp.objective[id] * g;
      }
    }
  }
  for (double g : r.annual_generation_kwh) total += g;
  if (total > 0.0) {
    for (int c = 0; c < 3; ++c) r.generation_share[c] = r.annual_generation_kwh[c] / total;
    r.renewable_penetration = r.generation_share[kSolarPv] + r.generation_share[kWindTurbine];
  }
  r.tac = r.investment + r.operational;
  if (r.annual_demand_kwh > 0.0) r.cost_per_mwh = r.tac / (r.annual_demand_kwh * 1e-3);
  if (dataset != nullptr) r.supply_gap = sip::evaluate_supply_gap(p, design.x, *dataset, tol);
  return r;
}

}  // namespace resd::models
