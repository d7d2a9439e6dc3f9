#include "resd/cli/commands.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>
#include <numeric>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "resd/lp/milp.hpp"
#include "resd/models/lapalma.hpp"
#include "resd/models/milp_example.hpp"
#include "resd/sip/esip.hpp"
#include "resd/sip/lower_level.hpp"
#include "resd/timeseries/pipeline.hpp"
#include "resd/timeseries/synth.hpp"

namespace resd::cli {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

LogLevel log_level_from_env() {
  const char* v = std::getenv("RESD_LOG");
  if (v == nullptr) return LogLevel::kInfo;
  const std::string s(v);
  if (s == "quiet" || s == "0") return LogLevel::kQuiet;
  if (s == "debug" || s == "2") return LogLevel::kDebug;
  return LogLevel::kInfo;
}

void Console::info(const std::string& line) const {
  if (level != LogLevel::kQuiet) out << line << '\n';
}

void Console::debug(const std::string& line) const {
  if (level == LogLevel::kDebug) err << line << '\n';
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kDimensionMismatch:
    case ErrorCode::kInvalidBounds:
    case ErrorCode::kSchemaError:
    case ErrorCode::kGapError:
    case ErrorCode::kRangeError:
    case ErrorCode::kConstantSeries:
    case ErrorCode::kMissingYear:
    case ErrorCode::kNegativeIrradiance:
    case ErrorCode::kNonlinearLowerLevel:
      return kExitUsage;
    case ErrorCode::kInfeasibleDesignSpace:
      return kExitInfeasible;
    default:
      return kExitInternal;
  }
}

void write_atomic(const std::string& path, const std::string& content) {
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw Error(ErrorCode::kInvalidArgument, "cannot write " + tmp.string());
    f << content;
    f.flush();
    if (!f) throw Error(ErrorCode::kInternal, "write failed for " + tmp.string());
  }
  fs::rename(tmp, target);
}

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string out_path(const RunConfig& cfg, const std::string& name) {
  return (fs::path(cfg.resolve_path(cfg.out)) / name).string();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kInvalidArgument, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

double cumulative_evr(const ts::PreprocessBundle& b) {
  const auto& r = b.pca.explained_variance_ratio;
  return std::accumulate(r.begin(), r.end(), 0.0);
}

ts::PreprocessBundle make_bundle(const RunConfig& cfg, const ts::TimeSeriesDataset& ds, int n_dim,
                                 std::uint64_t seed) {
  if (cfg.k > ds.days) {
    throw Error(ErrorCode::kInvalidArgument,
                "k = " + std::to_string(cfg.k) + " exceeds the " + std::to_string(ds.days) + " days of data");
  }
  return ts::preprocess(ds, cfg.k, cfg.resolve_n_dim(n_dim, ds.steps), seed);
}

std::vector<std::vector<double>> default_milp_points() { return {{0.0, 0.0}, {0.0, 1.0}, {100.0, 1.0}}; }

std::unique_ptr<sip::MaxMinOracle> pick_oracle(const RunConfig& cfg, const sip::EsipProblem& p) {
  switch (cfg.oracle) {
    case OracleKind::kVertex: return std::make_unique<sip::VertexEnumerationOracle>();
    case OracleKind::kDiscretization: return std::make_unique<sip::DiscretizationOracle>();
    case OracleKind::kAuto: break;
  }
  return sip::default_oracle(p);
}

sip::SolveResult run_method(const RunConfig& cfg, const sip::EsipProblem& p,
                            const std::vector<std::vector<double>>& points) {
  if (cfg.method == Method::kHeuristic) {
    return sip::feasibility_timestep_heuristic(p, points, cfg.tolerances, cfg.heuristic_batch);
  }
  const auto oracle = pick_oracle(cfg, p);
  return sip::solve_esip(p, *oracle, cfg.tolerances);
}

std::vector<std::vector<double>> day_points(const ts::TimeSeriesDataset& ds) {
  std::vector<std::vector<double>> pts;
  for (int d = 0; d < ds.days; ++d) pts.push_back(ds.day_vector(d));
  return pts;
}

int status_exit(sip::SolveStatus s) {
  switch (s) {
    case sip::SolveStatus::kFeasible: return kExitOk;
    case sip::SolveStatus::kTimeLimit: return kExitTimeLimit;
    default: return kExitIterationLimit;
  }
}

// Cheapest dispatch for a fixed design over the representative scenarios;
// empty when the design cannot serve them.
std::vector<double> fixed_design_dispatch(const sip::EsipProblem& p, const std::vector<double>& x,
                                          const lp::SolverTolerances& tol) {
  lp::ModelBuilder b = p.base;
  for (int i = 0; i < p.num_design; ++i) b.set_bounds(i, x[i], x[i]);
  const lp::MilpSolution s = lp::solve_milp(lp::build_milp(b), tol);
  if (s.status == lp::MilpStatus::kInfeasible) return {};
  if (!s.optimal()) {
    throw Error(ErrorCode::kInternal, std::string("scenario dispatch at fixed design: ") + lp::to_string(s.status));
  }
  return s.primal;
}

ojson report_json(const models::DesignReport& r, bool dispatched = true) {
  const auto opt = [&](double v) { return dispatched ? ojson(v) : ojson(nullptr); };
  ojson j;
  j["scenarios_served"] = dispatched;
  j["tac"] = opt(r.tac);
  j["investment"] = r.investment;
  j["operational"] = opt(r.operational);
  ojson inv;
  for (int c = 0; c < models::kNumComponents; ++c) inv[models::kComponentNames[c]] = r.component_investment[c];
  j["component_investment"] = inv;
  ojson gen;
  ojson share;
  for (int c = 0; c < 3; ++c) {
    gen[models::kComponentNames[c]] = r.annual_generation_kwh[c];
    share[models::kComponentNames[c]] = r.generation_share[c];
  }
  j["annual_generation_kwh"] = gen;
  j["generation_share"] = share;
  j["renewable_penetration"] = r.renewable_penetration ? ojson(*r.renewable_penetration) : ojson(nullptr);
  j["annual_demand_kwh"] = r.annual_demand_kwh;
  j["cost_per_mwh"] = r.cost_per_mwh && dispatched ? ojson(*r.cost_per_mwh) : ojson(nullptr);
  if (r.supply_gap) {
    j["max_supply_gap"] = r.supply_gap->max_gap;
    j["worst_day"] = r.supply_gap->worst_day;
  }
  return j;
}

ojson design_json(const RunConfig& cfg, const sip::SolveResult& res) {
  const sip::RobustDesign& d = res.design;
  ojson j;
  j["model"] = to_string(cfg.model);
  j["method"] = res.log.method;
  j["status"] = sip::to_string(d.status);
  ojson x;
  for (std::size_t i = 0; i < d.x.size(); ++i) x[d.names[i]] = d.x[i];
  j["design"] = x;
  j["x"] = d.x;
  j["objective"] = d.objective;
  j["investment"] = d.investment;
  j["operational"] = d.operational;
  j["lower_bound"] = res.log.records.empty() ? 0.0 : res.log.records.back().lower_bound;
  j["maxmin_value"] = d.maxmin_value;
  j["worst_y"] = d.worst_y;
  j["iterations"] = d.iterations;
  j["discretization_size"] = d.disc.size();
  j["cpu_s"] = res.log.records.empty() ? 0.0 : res.log.records.back().subproblem_s;
  return j;
}

void log_iterations(const Console& con, const sip::SolveLog& log) {
  for (const auto& r : log.records) {
    con.debug("iter " + std::to_string(r.iteration) + " lb " + num(r.lower_bound) + " oracle " +
              num(r.oracle_value) + " disc " + std::to_string(r.disc_size));
  }
}

struct Cell {
  models::LaPalmaModel model;
  ts::PreprocessBundle bundle;
  ts::TimeSeriesDataset data;
};

Cell lapalma_cell(const RunConfig& cfg, int steps, int n_dim, std::uint64_t seed) {
  Cell c;
  c.data = load_dataset(cfg, steps);
  c.bundle = make_bundle(cfg, c.data, n_dim, seed);
  c.model = models::build_lapalma(c.bundle, cfg.model_options);
  return c;
}

}  // namespace

ts::TimeSeriesDataset load_dataset(const RunConfig& cfg, int steps) {
  if (!cfg.data.csv.empty()) {
    ts::IngestOptions opt;
    opt.steps = steps;
    opt.physics = cfg.model_options.physics;
    return ts::ingest_csv(cfg.resolve_path(cfg.data.csv), opt);
  }
  ts::SynthOptions opt;
  opt.physics = cfg.model_options.physics;
  return ts::synth_generate(cfg.data.synth_seed, cfg.data.synth_days, steps, opt);
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string s = "n_dim,T,tac,invest,opex,max_gap,evr,cpu_s,iters,seed\n";
  for (const SweepRow& r : rows) {
    s += std::to_string(r.n_dim) + ',' + std::to_string(r.steps) + ',' + num(r.tac) + ',' + num(r.invest) + ',' +
         num(r.opex) + ',' + num(r.max_gap) + ',' + num(r.evr) + ',' + num(r.cpu_s) + ',' + std::to_string(r.iters) +
         ',' + std::to_string(r.seed) + '\n';
  }
  return s;
}

int cmd_preprocess(const RunConfig& cfg, const Console& con) {
  if (cfg.model != ModelKind::kLaPalma) {
    throw Error(ErrorCode::kInvalidArgument, "preprocess applies to the lapalma model");
  }
  const ts::TimeSeriesDataset ds = load_dataset(cfg, cfg.steps.front());
  const ts::PreprocessBundle b = make_bundle(cfg, ds, cfg.n_dim.front(), cfg.seed);
  write_atomic(out_path(cfg, "bundle.json"), ts::bundle_to_json(b));
  std::string evr = "component,ratio,cumulative\n";
  double cum = 0.0;
  for (std::size_t i = 0; i < b.pca.all_variance_ratio.size(); ++i) {
    cum += b.pca.all_variance_ratio[i];
    evr += std::to_string(i + 1) + ',' + num(b.pca.all_variance_ratio[i]) + ',' + num(cum) + '\n';
  }
  write_atomic(out_path(cfg, "evr.csv"), evr);
  con.info("preprocess: " + std::to_string(b.days) + " days, " + std::to_string(b.steps) + " steps, " +
           std::to_string(b.scenarios.size()) + " scenarios, " + std::to_string(b.n_dim) + " components, " +
           std::to_string(b.generators.points.rows()) + " generators, explained variance " + num(cumulative_evr(b)));
  return kExitOk;
}

int cmd_solve(const RunConfig& cfg, const Console& con) {
  sip::SolveResult res;
  ojson extra;
  if (cfg.model == ModelKind::kMilpExample) {
    const sip::EsipProblem p = models::build_milp_example();
    res = run_method(cfg, p, cfg.points.empty() ? default_milp_points() : cfg.points);
  } else {
    ts::PreprocessBundle bundle;
    if (!cfg.bundle.empty()) {
      bundle = ts::bundle_from_json(read_file(cfg.resolve_path(cfg.bundle)));
    } else {
      bundle = make_bundle(cfg, load_dataset(cfg, cfg.steps.front()), cfg.n_dim.front(), cfg.seed);
    }
    const models::LaPalmaModel model = models::build_lapalma(bundle, cfg.model_options);
    std::optional<ts::TimeSeriesDataset> data;
    if (cfg.method == Method::kHeuristic || cfg.bundle.empty()) data = load_dataset(cfg, bundle.steps);
    res = run_method(cfg, model.problem, data ? day_points(*data) : std::vector<std::vector<double>>{});
    extra["steps"] = bundle.steps;
    extra["k"] = bundle.k;
    extra["n_dim"] = bundle.n_dim;
    extra["seed"] = bundle.seed;
    extra["explained_variance"] = cumulative_evr(bundle);
    if (res.design.status == sip::SolveStatus::kFeasible) {
      extra["report"] = report_json(
          models::evaluate_design(model, res.design, data ? &*data : nullptr, cfg.tolerances));
    }
  }
  log_iterations(con, res.log);
  write_atomic(out_path(cfg, "solve_log.jsonl"), res.log.to_jsonl());
  const int code = status_exit(res.design.status);
  const std::string design_path = out_path(cfg, "design.json");
  if (code != kExitOk) {
    std::error_code ec;
    fs::remove(design_path, ec);
    con.err << "solve ended with status " << sip::to_string(res.design.status) << " after "
            << res.design.iterations << " iterations\n";
    return code;
  }
  ojson j = design_json(cfg, res);
  for (auto it = extra.begin(); it != extra.end(); ++it) j[it.key()] = it.value();
  write_atomic(design_path, j.dump(2) + '\n');
  std::string line = std::string("solve: ") + to_string(cfg.model) + " " + res.log.method + " status " +
                     sip::to_string(res.design.status) + " objective " + num(res.design.objective) + " x =";
  for (double v : res.design.x) line += " " + num(v);
  line += " iterations " + std::to_string(res.design.iterations);
  con.info(line);
  return kExitOk;
}

int cmd_evaluate(const RunConfig& cfg, const Console& con) {
  const std::string path = cfg.design.empty() ? out_path(cfg, "design.json") : cfg.resolve_path(cfg.design);
  nlohmann::json dj;
  std::vector<double> x;
  std::string model_name;
  try {
    dj = nlohmann::json::parse(read_file(path));
    x = dj.at("x").get<std::vector<double>>();
    model_name = dj.at("model").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kSchemaError, "malformed design file " + path + ": " + e.what());
  }
  if (model_name != to_string(cfg.model)) {
    throw Error(ErrorCode::kDimensionMismatch, "design file is for model " + model_name);
  }

  if (cfg.model == ModelKind::kMilpExample) {
    const sip::EsipProblem p = models::build_milp_example();
    if (static_cast<int>(x.size()) != p.num_design) throw Error(ErrorCode::kDimensionMismatch, "design length");
    const auto oracle = pick_oracle(cfg, p);
    const sip::OracleResult o = oracle->evaluate(p, x, cfg.tolerances);
    std::string csv = "y1,b,coupling,supply_gap,value\n";
    double grid_max = -lp::kInf;
    for (int b = 0; b <= 1; ++b) {
      for (int i = 0; i <= 200; ++i) {
        const std::vector<double> y{0.5 * i, static_cast<double>(b)};
        const sip::GapEvaluation g = sip::evaluate_gap(p, x, y, cfg.tolerances.lp);
        grid_max = std::max(grid_max, g.value);
        csv += num(y[0]) + ',' + std::to_string(b) + ',' + num(g.coupling) + ',' + num(g.llp_value) + ',' +
               num(g.value) + '\n';
      }
    }
    write_atomic(out_path(cfg, "gaps.csv"), csv);
    ojson r;
    r["model"] = to_string(cfg.model);
    r["x"] = x;
    r["maxmin_value"] = o.value;
    r["worst_y"] = o.y;
    r["grid_max_value"] = grid_max;
    r["robust"] = o.value <= cfg.tolerances.feas_tol;
    write_atomic(out_path(cfg, "evaluation.json"), r.dump(2) + '\n');
    con.info("evaluate: maxmin " + num(o.value) + " grid max " + num(grid_max));
    return kExitOk;
  }

  int steps = cfg.steps.front();
  if (dj.contains("steps") && dj.at("steps").is_number_integer()) steps = dj.at("steps").get<int>();
  const ts::TimeSeriesDataset ds = load_dataset(cfg, steps);
  if (ds.days == 0) throw Error(ErrorCode::kSchemaError, "dataset is empty");
  const models::LaPalmaModel model =
      models::build_lapalma(make_bundle(cfg, ds, cfg.n_dim.front(), cfg.seed), cfg.model_options);
  if (static_cast<int>(x.size()) != model.problem.num_design) {
    throw Error(ErrorCode::kDimensionMismatch, "design has " + std::to_string(x.size()) + " entries, model expects " +
                                                   std::to_string(model.problem.num_design));
  }
  sip::RobustDesign d;
  d.x = x;
  d.base_primal = fixed_design_dispatch(model.problem, x, cfg.tolerances.lp);
  const models::DesignReport rep = models::evaluate_design(model, d, &ds, cfg.tolerances);
  std::string csv = "day,date,gap\n";
  for (int i = 0; i < ds.days; ++i) {
    const std::string date = i < static_cast<int>(ds.dates.size()) ? ds.dates[i] : std::string();
    csv += std::to_string(i) + ',' + date + ',' + num(rep.supply_gap->gaps[i]) + '\n';
  }
  write_atomic(out_path(cfg, "gaps.csv"), csv);
  ojson r = report_json(rep, !d.base_primal.empty());
  r["robust"] = rep.supply_gap->max_gap <= cfg.tolerances.feas_tol;
  write_atomic(out_path(cfg, "evaluation.json"), r.dump(2) + '\n');
  con.info("evaluate: " + std::to_string(ds.days) + " days, max gap " + num(rep.supply_gap->max_gap) + " kW on day " +
           std::to_string(rep.supply_gap->worst_day) +
           (d.base_primal.empty() ? std::string(", scenarios not served") : ", TAC " + num(rep.tac)));
  return kExitOk;
}

int cmd_sweep(const RunConfig& cfg, const Console& con) {
  if (cfg.model != ModelKind::kLaPalma) throw Error(ErrorCode::kInvalidArgument, "sweep applies to the lapalma model");
  const std::string path = out_path(cfg, "sweep.csv");
  std::vector<SweepRow> rows;
  for (int steps : cfg.steps) {
    for (int n_dim : cfg.n_dim) {
      for (std::uint64_t seed : cfg.seeds) {
        try {
          const Cell c = lapalma_cell(cfg, steps, n_dim, seed);
          const sip::SolveResult res = run_method(cfg, c.model.problem, day_points(c.data));
          const int code = status_exit(res.design.status);
          if (code != kExitOk) {
            con.err << "sweep cell n_dim=" << c.bundle.n_dim << " T=" << steps << " seed=" << seed << " ended with "
                    << sip::to_string(res.design.status) << '\n';
            return code;
          }
          const sip::SupplyGapReport gap = sip::evaluate_supply_gap(c.model.problem, res.design.x, c.data, cfg.tolerances);
          SweepRow r;
          r.n_dim = c.bundle.n_dim;
          r.steps = steps;
          r.tac = res.design.objective;
          r.invest = res.design.investment;
          r.opex = res.design.operational;
          r.max_gap = gap.max_gap;
          r.evr = cumulative_evr(c.bundle);
          r.cpu_s = res.log.records.empty() ? 0.0 : res.log.records.back().subproblem_s;
          r.iters = res.design.iterations;
          r.seed = seed;
          rows.push_back(r);
          write_atomic(path, sweep_csv(rows));
          con.debug("cell n_dim=" + std::to_string(r.n_dim) + " T=" + std::to_string(steps) + " seed=" +
                    std::to_string(seed) + " tac " + num(r.tac) + " max_gap " + num(r.max_gap));
        } catch (const Error&) {
          write_atomic(path, sweep_csv(rows));
          throw;
        }
      }
    }
  }
  write_atomic(path, sweep_csv(rows));
  con.info("sweep: " + std::to_string(rows.size()) + " rows written to " + path);
  return kExitOk;
}

}  // namespace resd::cli
