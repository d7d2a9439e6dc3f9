#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include "resd/cli/commands.hpp"
#include "resd/lifting/lifted.hpp"
#include "resd/lp/milp.hpp"
#include "resd/lp/oracle.hpp"
#include "resd/lp/simplex.hpp"
#include "resd/models/economics.hpp"
#include "resd/models/lapalma.hpp"
#include "resd/models/milp_example.hpp"
#include "resd/models/physics.hpp"
#include "resd/sip/esip.hpp"
#include "resd/sip/lower_level.hpp"
#include "resd/timeseries/synth.hpp"
#include "support/random_problems.hpp"

namespace fs = std::filesystem;
using namespace resd;

namespace {

constexpr double kFeasTol = 5e-2;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

sip::ToleranceSettings tolerances() {
  sip::ToleranceSettings t;
  t.feas_tol = kFeasTol;
  t.record_timing = false;
  return t;
}

// Synthetic La Palma instance: 100 days, 8 steps, 5 scenarios.
struct Instance {
  ts::TimeSeriesDataset data;
  std::map<int, ts::PreprocessBundle> bundles;
  std::map<int, models::LaPalmaModel> models;
  std::map<int, sip::SolveResult> resd;

  static Instance& get() {
    static Instance inst;
    return inst;
  }
  Instance() : data(ts::synth_generate(7, 100, 8)) {}

  int full() const { return data.day_length(); }
  const ts::PreprocessBundle& bundle(int n) {
    if (!bundles.count(n)) bundles.emplace(n, ts::preprocess(data, 5, n, 42));
    return bundles.at(n);
  }
  const models::LaPalmaModel& model(int n) {
    if (!models.count(n)) models.emplace(n, models::build_lapalma(bundle(n)));
    return models.at(n);
  }
  const sip::SolveResult& solve(int n) {
    if (!resd.count(n)) resd.emplace(n, sip::solve_esip(model(n).problem, sip::VertexEnumerationOracle{}, tolerances()));
    return resd.at(n);
  }
};

Outcome criterion1() {
  const auto t0 = std::chrono::steady_clock::now();
  const sip::SolveResult r =
      sip::solve_esip(models::build_milp_example(), sip::DiscretizationOracle{}, tolerances());
  const double dt = seconds_since(t0);
  const auto& d = r.design;
  const bool ok = d.status == sip::SolveStatus::kFeasible && d.objective >= 116.0 && d.objective <= 116.7 &&
                  std::abs(d.x[0] - 50.0 / 3.0) <= 0.5 && std::abs(d.x[1] - 250.0 / 3.0) <= 0.5 && dt < 60.0;
  return {ok, fmt("x = (%.4f, %.4f), objective %.4f, %.2f s", d.x[0], d.x[1], d.objective, dt)};
}

Outcome criterion2() {
  const sip::EsipProblem p = models::build_milp_example();
  const sip::SolveResult r =
      sip::feasibility_timestep_heuristic(p, std::vector<std::vector<double>>{{0, 0}, {0, 1}, {100, 1}}, tolerances());
  const auto& x = r.design.x;
  const sip::GapEvaluation g = sip::evaluate_gap(p, x, {15.0, 0.0});
  const bool ok = r.design.status == sip::SolveStatus::kFeasible && std::abs(x[0]) <= 1e-6 &&
                  std::abs(x[1] - 100.0) <= 1e-6 && std::abs(g.llp_value - 15.0) <= 1e-6 && g.coupling >= 0.0;
  return {ok, fmt("vertex-only design (%.4f, %.4f); gap at y = 15, b = 0: %.4f", x[0], x[1], g.llp_value)};
}

Outcome criterion3() {
  Instance& in = Instance::get();
  const auto t0 = std::chrono::steady_clock::now();
  const int n = in.full();
  const sip::SolveResult& a = in.solve(n);
  const sip::SolveResult h = sip::feasibility_timestep_heuristic(in.model(n).problem, in.data, tolerances());
  const double dt = seconds_since(t0);
  const double ga = sip::evaluate_supply_gap(in.model(n).problem, a.design.x, in.data, tolerances()).max_gap;
  const double gh = sip::evaluate_supply_gap(in.model(n).problem, h.design.x, in.data, tolerances()).max_gap;
  const double rel = std::abs(a.design.objective - h.design.objective) / std::abs(a.design.objective);
  const bool ok = a.design.status == sip::SolveStatus::kFeasible && h.design.status == sip::SolveStatus::kFeasible &&
                  rel <= 5e-3 && ga <= kFeasTol && gh <= kFeasTol && dt < 600.0;
  return {ok, fmt("TAC resd %.1f, heuristic %.1f, rel diff %.2e, max gaps %.2e / ", a.design.objective,
                  h.design.objective, rel, ga) +
                  fmt("%.2e kW, %.1f s", gh, dt)};
}

Outcome criterion4() {
  Instance& in = Instance::get();
  const int full = in.full();
  const auto gap_at = [&](int n) {
    return sip::evaluate_supply_gap(in.model(n).problem, in.solve(n).design.x, in.data, tolerances()).max_gap;
  };
  const double g1 = gap_at(1);
  const double gf = gap_at(full);
  double cum = 0.0;
  int n95 = full;
  const auto& ratios = in.bundle(full).pca.all_variance_ratio;
  for (std::size_t i = 0; i < ratios.size(); ++i) {
    cum += ratios[i];
    if (cum >= 0.95) {
      n95 = static_cast<int>(i) + 1;
      break;
    }
  }
  const double tf = in.solve(full).design.objective;
  const double t95 = in.solve(n95).design.objective;
  const double rel = std::abs(t95 - tf) / std::abs(tf);
  const bool ok = g1 > gf + kFeasTol && rel <= 0.02;
  return {ok, fmt("max gap n_dim=1 %.1f kW vs full %.2e kW; n_dim %g (EVR >= 0.95) TAC rel diff %.2e", g1, gf, n95,
                  rel)};
}

Outcome criterion5() {
  Instance& in = Instance::get();
  const int full = in.full();
  const models::LaPalmaModel& m = in.model(full);
  const ts::PreprocessBundle& b = in.bundle(full);
  const auto& hull = std::get<sip::LatentHull>(m.problem.uncertainty);
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double stat = 0.0, comp = 0.0, mu_min = 0.0, dual = 0.0;
  const int nv = static_cast<int>(b.generators.points.rows());
  for (int k = 0; k < 50; ++k) {
    std::vector<double> x{u(rng) * 1e5, u(rng) * 3e4, u(rng) * 2e4, u(rng) * 6e4, 0.0};
    x[4] = 4.0 * x[3];
    const int v = static_cast<int>(rng() % static_cast<std::uint64_t>(nv));
    const Eigen::VectorXd lat = b.generators.points.row(v).transpose();
    const std::vector<double> y = sip::hull_point_to_y(hull, lat);
    const lifting::LiftedNlp nlp = lifting::build_lifted_nlp(m.problem, x);
    const sip::GapEvaluation g = sip::evaluate_gap(m.problem, x, y);
    const auto mult = lifting::recover_multipliers_from_lp_duals(g.llp, g.solution);
    std::vector<double> w(static_cast<std::size_t>(nv), 0.0);
    w[static_cast<std::size_t>(v)] = 1.0;
    const auto pt = lifting::assemble_point(nlp, y, std::vector<double>(lat.data(), lat.data() + lat.size()), w,
                                            g.solution.primal, mult);
    const lifting::KktResidual r = lifting::kkt_residuals(nlp, pt);
    stat = std::max(stat, r.stationarity);
    comp = std::max(comp, r.complementarity);
    mu_min = std::min(mu_min, r.min_multiplier);
    dual = std::max(dual, lifting::verify_strong_duality(nlp.lagrangian, pt, g.llp_value).scaled_gap);
  }
  const bool ok = stat <= 1e-6 && comp <= 1e-8 && mu_min >= -1e-9 && dual <= 1e-6;
  return {ok, fmt("stationarity %.1e, complementarity %.1e, min mu %.1e, duality gap %.1e", stat, comp, mu_min, dual)};
}

Outcome criterion6() {
  int lp_bad = 0;
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const lp::LinearProgram p = testing::random_lp(seed);
    const lp::LpSolution ref = lp::lp_bruteforce_oracle(p);
    const lp::LpSolution s = lp::solve_lp(p);
    if (s.status != ref.status) {
      ++lp_bad;
    } else if (ref.optimal() && std::abs(s.objective - ref.objective) > 1e-6 * (1.0 + std::abs(ref.objective))) {
      ++lp_bad;
    }
  }
  int milp_bad = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const lp::MixedIntegerLinearProgram milp = testing::random_binary_milp(seed);
    const lp::LinearProgram& p = milp.lp;
    const std::size_t n = p.num_vars();
    double best = lp::kInf;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      std::vector<double> x(n);
      for (std::size_t j = 0; j < n; ++j) x[j] = (mask >> j) & 1u;
      if (lp::primal_infeasibility(p, x) > 0.0) continue;
      best = std::min(best, lp::objective_value(p, x));
    }
    const lp::MilpSolution s = lp::solve_milp(milp);
    const bool match = std::isfinite(best) ? (s.optimal() && s.objective == best) : s.status == lp::MilpStatus::kInfeasible;
    if (!match) ++milp_bad;
  }
  return {lp_bad == 0 && milp_bad == 0,
          fmt("%g of 200 LPs and %g of 100 MILPs disagree with enumeration", lp_bad, milp_bad)};
}

// Storage balance and cyclic state; returns the worst relative residual.
double battery_residual(const std::vector<double>& v, const std::vector<int>& in, const std::vector<int>& out,
                        const std::vector<int>& energy, double dt_s) {
  const models::TechnicalParams tp;
  double scale = 1.0;
  for (int i : energy) scale = std::max(scale, std::abs(v[i]));
  double worst = std::abs(v[energy.back()] - v[energy.front()]) / scale;
  for (std::size_t t = 0; t < in.size(); ++t) {
    const double expected = dt_s / 3600.0 * (tp.eta_in * v[in[t]] - v[out[t]] / tp.eta_out);
    worst = std::max(worst, std::abs(v[energy[t + 1]] - v[energy[t]] - expected) / scale);
    worst = std::max(worst, -v[energy[t + 1]] / scale);
  }
  return worst;
}

Outcome criterion7() {
  const double fan = models::annuity_factor(0.08, 25);
  const double fuel = models::diesel_variable_cost().fuel;
  const bool solar = models::solar_capacity_factor(0.0) == 0.0 && models::solar_capacity_factor(0.9) == 1.0 &&
                     models::solar_capacity_factor(2.0) == 1.0 &&
                     std::abs(models::solar_capacity_factor(0.1) - 0.1 * 0.19 / 0.171) < 1e-12;
  const bool wind = models::wind_capacity_factor_at_hub(25.0) == 0.0 && models::wind_capacity_factor_at_hub(40.0) == 0.0 &&
                    models::wind_capacity_factor_at_hub(24.0) == 1.0 && models::wind_capacity_factor_at_hub(0.0) == 0.0;

  Instance& in = Instance::get();
  double worst = 0.0;
  int checked = 0;
  for (const auto& [n, res] : in.resd) {
    const models::LaPalmaModel& m = in.model(n);
    const models::LaPalmaLayout& L = m.layout;
    for (const models::ScenarioBlock& blk : L.scenarios) {
      worst = std::max(worst, battery_residual(res.design.base_primal, blk.p_in, blk.p_out, blk.energy, L.dt_s));
      ++checked;
    }
    for (int d = 0; d < in.data.days; ++d) {
      const sip::GapEvaluation g = sip::evaluate_gap(m.problem, res.design.x, in.data.day_vector(d));
      worst = std::max(worst, battery_residual(g.solution.primal, L.z_p_in, L.z_p_out, L.z_energy, L.dt_s));
      ++checked;
    }
  }
  const bool ok = std::abs(fan - 10.675) <= 1e-3 && std::abs(fuel - 0.120) <= 1e-3 && solar && wind && checked > 0 &&
                  worst <= 1e-7;
  return {ok, fmt("annuity %.4f, co_fuel %.4f, %g operational LPs with battery residual %.1e", fan, fuel, checked,
                  worst) +
                  (solar ? "" : ", solar clipping wrong") + (wind ? "" : ", wind cutout wrong")};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

Outcome criterion8() {
  const fs::path root = fs::temp_directory_path() / "resd_acceptance_determinism";
  fs::remove_all(root);
  fs::create_directories(root);
  std::ofstream(root / "lapalma.json") << R"({
  "model": "lapalma", "data": {"synth": {"seed": 7, "days": 60}},
  "steps": [4, 8], "k": 4, "n_dim": [2, "full"], "seeds": [1, 2], "seed": 42
})";
  std::ofstream(root / "milp.json") << R"({"model": "milp-example"})";
  const std::vector<std::vector<std::string>> commands{
      {"preprocess", "lapalma.json"},  {"solve", "lapalma.json"},
      {"evaluate", "lapalma.json"},    {"solve", "lapalma.json", "--method", "heuristic"},
      {"sweep", "lapalma.json"},       {"solve", "milp.json"},
      {"evaluate", "milp.json"},       {"solve", "milp.json", "--method", "heuristic"}};
  std::map<std::string, std::string> first;
  int files = 0;
  int mismatches = 0;
  int failures = 0;
  for (int rep = 0; rep < 2; ++rep) {
    for (std::size_t c = 0; c < commands.size(); ++c) {
      const fs::path out = root / "run" / ("cmd" + std::to_string(c));
      fs::remove_all(out);
      std::vector<std::string> args{"resd", commands[c][0], "--config", (root / commands[c][1]).string(), "--out",
                                    out.string()};
      args.insert(args.end(), commands[c].begin() + 2, commands[c].end());
      if (commands[c][0] == "evaluate") {
        // evaluate reads the design of the preceding solve
        const fs::path prev = root / "run" / ("cmd" + std::to_string(c - 1)) / "design.json";
        fs::create_directories(out);
        fs::copy_file(prev, out / "design.json", fs::copy_options::overwrite_existing);
      }
      std::vector<const char*> argv;
      for (const auto& a : args) argv.push_back(a.c_str());
      std::ostringstream so, se;
      if (cli::run(static_cast<int>(argv.size()), argv.data(), so, se) != 0) ++failures;
      const std::string key0 = "cmd" + std::to_string(c) + "/stdout";
      if (rep == 0) first[key0] = so.str();
      else if (first[key0] != so.str()) {
        std::fprintf(stderr, "differs on rerun: %s\n", key0.c_str());
        ++mismatches;
      }
      for (const auto& e : fs::directory_iterator(out)) {
        const std::string key = "cmd" + std::to_string(c) + "/" + e.path().filename().string();
        if (rep == 0) {
          first[key] = slurp(e.path());
          ++files;
        } else if (!first.count(key) || first[key] != slurp(e.path())) {
          std::fprintf(stderr, "differs on rerun: %s\n", key.c_str());
          ++mismatches;
        }
      }
    }
  }
  fs::remove_all(root);
  return {failures == 0 && mismatches == 0 && files > 0,
          fmt("%g output files across 8 commands, %g differ on rerun, %g commands failed", files, mismatches, failures)};
}

}  // namespace

int main() {
  const std::vector<std::function<Outcome()>> criteria{criterion1, criterion2, criterion3, criterion4,
                                                       criterion5, criterion6, criterion7, criterion8};
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    all = all && o.pass;
    std::printf("criterion %zu: %s  %s\n", i + 1, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
