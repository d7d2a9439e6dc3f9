#include "resd/cli/config.hpp"

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

#include "resd/errors.hpp"

namespace resd::cli {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

[[noreturn]] void schema(const std::string& msg) { throw Error(ErrorCode::kSchemaError, msg); }

void allow_keys(const json& j, const std::string& where, std::initializer_list<const char*> keys) {
  if (!j.is_object()) schema(where + " must be an object");
  for (const auto& [key, _] : j.items()) {
    bool known = false;
    for (const char* k : keys) known = known || key == k;
    if (!known) schema("unknown key '" + key + "' in " + where);
  }
}

template <class T>
void read(const json& j, const char* key, T& out, const std::string& where) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception&) {
    schema("wrong type for '" + std::string(key) + "' in " + where);
  }
}

// Scalar or list; "full" maps to 0 when allowed.
std::vector<int> int_list(const json& v, const char* key, bool allow_full) {
  std::vector<int> out;
  const auto one = [&](const json& e) {
    if (allow_full && e.is_string() && e.get<std::string>() == "full") return 0;
    if (!e.is_number_integer()) schema(std::string("'") + key + "' entries must be integers");
    const int n = e.get<int>();
    if (n < 1) throw Error(ErrorCode::kInvalidArgument, std::string(key) + " entries must be at least 1");
    return n;
  };
  if (v.is_array()) {
    for (const json& e : v) out.push_back(one(e));
  } else {
    out.push_back(one(v));
  }
  return out;
}

const std::vector<std::pair<const char*, double models::TechnicalParams::*>>& physics_fields() {
  static const std::vector<std::pair<const char*, double models::TechnicalParams::*>> f{
      {"eta_solar", &models::TechnicalParams::eta_solar},
      {"solar_nominal_kw_m2", &models::TechnicalParams::solar_nominal_kw_m2},
      {"hub_height_m", &models::TechnicalParams::hub_height_m},
      {"roughness_m", &models::TechnicalParams::roughness_m},
      {"cutout_ms", &models::TechnicalParams::cutout_ms},
      {"turbine_rated_kw", &models::TechnicalParams::turbine_rated_kw},
      {"eta_in", &models::TechnicalParams::eta_in},
      {"eta_out", &models::TechnicalParams::eta_out},
      {"energy_to_power", &models::TechnicalParams::energy_to_power},
      {"initial_soc", &models::TechnicalParams::initial_soc},
  };
  return f;
}

void read_physics(const json& j, models::TechnicalParams& p) {
  if (!j.is_object()) schema("physics must be an object");
  for (const auto& [key, value] : j.items()) {
    if (key == "power_curve_kw") {
      read(j, "power_curve_kw", p.power_curve_kw, "physics");
      continue;
    }
    bool found = false;
    for (const auto& [name, member] : physics_fields()) {
      if (key == name) {
        read(j, name, p.*member, "physics");
        found = true;
      }
    }
    if (!found) schema("unknown key '" + key + "' in physics");
  }
}

int component_index(const std::string& name) {
  for (int c = 0; c < models::kNumComponents; ++c) {
    if (name == models::kComponentNames[static_cast<std::size_t>(c)]) return c;
  }
  schema("unknown component '" + name + "'");
}

void read_tolerances(const json& j, sip::ToleranceSettings& t) {
  const std::string w = "tolerances";
  allow_keys(j, w,
             {"feas_tol", "lbp_abs", "lbp_rel", "oracle_abs", "oracle_rel", "max_time_s", "max_iterations",
              "max_oracle_iterations", "threads", "record_timing"});
  read(j, "feas_tol", t.feas_tol, w);
  read(j, "lbp_abs", t.lbp_abs, w);
  read(j, "lbp_rel", t.lbp_rel, w);
  read(j, "oracle_abs", t.oracle_abs, w);
  read(j, "oracle_rel", t.oracle_rel, w);
  read(j, "max_time_s", t.max_time_s, w);
  read(j, "max_iterations", t.max_iterations, w);
  read(j, "max_oracle_iterations", t.max_oracle_iterations, w);
  read(j, "threads", t.threads, w);
  read(j, "record_timing", t.record_timing, w);
}

}  // namespace

const char* to_string(ModelKind m) { return m == ModelKind::kLaPalma ? "lapalma" : "milp-example"; }
const char* to_string(Method m) { return m == Method::kResd ? "resd" : "heuristic"; }

std::string RunConfig::resolve_path(const std::string& p) const {
  if (p.empty() || fs::path(p).is_absolute() || base_dir.empty()) return p;
  return (fs::path(base_dir) / p).lexically_normal().string();
}

void RunConfig::validate() const {
  const auto bad = [](const std::string& m) { throw Error(ErrorCode::kInvalidArgument, m); };
  if (steps.empty()) bad("steps list is empty");
  for (int t : steps) {
    if (t < 1) bad("steps must be at least 1");
  }
  if (n_dim.empty()) bad("n_dim list is empty");
  for (int n : n_dim) {
    if (n < 0) bad("n_dim entries must be at least 1");
    for (int t : steps) {
      if (resolve_n_dim(n, t) > ts::kNumQuantities * t) {
        bad("n_dim " + std::to_string(n) + " exceeds the day length at " + std::to_string(t) + " steps");
      }
    }
  }
  if (k < 1) bad("k must be at least 1");
  if (seeds.empty()) bad("seeds list is empty");
  if (heuristic_batch < 1) bad("heuristic_batch must be at least 1");
  if (data.csv.empty()) {
    if (data.synth_days < 1) bad("synthetic data needs at least one day");
    if (k > data.synth_days) bad("k = " + std::to_string(k) + " exceeds the number of days");
  } else if (!fs::is_regular_file(resolve_path(data.csv))) {
    bad("data file not found: " + resolve_path(data.csv));
  }
  if (!bundle.empty() && !fs::is_regular_file(resolve_path(bundle))) bad("bundle not found: " + resolve_path(bundle));
  if (out.empty()) bad("output directory is empty");
  tolerances.validate();
  model_options.validate();
}

RunConfig parse_config(const std::string& text, const std::string& base_dir) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    schema(std::string("config is not valid JSON: ") + e.what());
  }
  const std::string w = "config";
  allow_keys(j, w,
             {"model", "method", "oracle", "data", "steps", "k", "n_dim", "seed", "seeds", "heuristic_batch", "points",
              "tolerances", "physics", "costs", "economics", "components", "diesel", "cyclic_worst_case", "out",
              "bundle", "design"});
  RunConfig c;
  c.base_dir = base_dir;
  c.tolerances.record_timing = false;

  std::string s;
  if (j.contains("model")) {
    read(j, "model", s, w);
    if (s == "lapalma") c.model = ModelKind::kLaPalma;
    else if (s == "milp-example") c.model = ModelKind::kMilpExample;
    else schema("model must be lapalma or milp-example");
  }
  if (j.contains("method")) {
    read(j, "method", s, w);
    if (s == "resd") c.method = Method::kResd;
    else if (s == "heuristic") c.method = Method::kHeuristic;
    else schema("method must be resd or heuristic");
  }
  if (j.contains("oracle")) {
    read(j, "oracle", s, w);
    if (s == "auto") c.oracle = OracleKind::kAuto;
    else if (s == "vertex") c.oracle = OracleKind::kVertex;
    else if (s == "discretization") c.oracle = OracleKind::kDiscretization;
    else schema("oracle must be auto, vertex or discretization");
  }
  if (j.contains("data")) {
    const json& d = j.at("data");
    allow_keys(d, "data", {"csv", "synth"});
    if (d.contains("csv") && d.contains("synth")) schema("data takes either csv or synth");
    read(d, "csv", c.data.csv, "data");
    if (d.contains("synth")) {
      allow_keys(d.at("synth"), "data.synth", {"seed", "days"});
      read(d.at("synth"), "seed", c.data.synth_seed, "data.synth");
      read(d.at("synth"), "days", c.data.synth_days, "data.synth");
    }
  }
  if (j.contains("steps")) c.steps = int_list(j.at("steps"), "steps", false);
  if (j.contains("n_dim")) c.n_dim = int_list(j.at("n_dim"), "n_dim", true);
  read(j, "k", c.k, w);
  read(j, "seed", c.seed, w);
  read(j, "seeds", c.seeds, w);
  read(j, "heuristic_batch", c.heuristic_batch, w);
  read(j, "points", c.points, w);
  if (j.contains("tolerances")) read_tolerances(j.at("tolerances"), c.tolerances);
  if (j.contains("physics")) read_physics(j.at("physics"), c.model_options.physics);
  if (j.contains("costs")) {
    const json& cj = j.at("costs");
    if (!cj.is_object()) schema("costs must be an object");
    for (const auto& [name, entry] : cj.items()) {
      models::CostEntry& e = c.model_options.costs[component_index(name)];
      const std::string where = "costs." + name;
      allow_keys(entry, where, {"c_inv", "c_fix", "c_var"});
      read(entry, "c_inv", e.c_inv, where);
      read(entry, "c_fix", e.c_fix, where);
      read(entry, "c_var", e.c_var, where);
    }
  }
  if (j.contains("economics")) {
    allow_keys(j.at("economics"), "economics", {"interest", "horizon_years"});
    read(j.at("economics"), "interest", c.model_options.econ.interest, "economics");
    read(j.at("economics"), "horizon_years", c.model_options.econ.horizon_years, "economics");
  }
  if (j.contains("components")) {
    const json& cj = j.at("components");
    if (!cj.is_object()) schema("components must be an object");
    for (const auto& [name, v] : cj.items()) {
      if (!v.is_boolean()) schema("components." + name + " must be a boolean");
      c.model_options.enabled[static_cast<std::size_t>(component_index(name))] = v.get<bool>();
    }
  }
  if (j.contains("diesel")) {
    const json& dj = j.at("diesel");
    allow_keys(dj, "diesel", {"ramp_per_hour", "min_part_load", "capacity_bound_kw"});
    read(dj, "ramp_per_hour", c.model_options.diesel_ramp_per_hour, "diesel");
    read(dj, "min_part_load", c.model_options.diesel_min_part_load, "diesel");
    read(dj, "capacity_bound_kw", c.model_options.diesel_capacity_bound_kw, "diesel");
  }
  read(j, "cyclic_worst_case", c.model_options.cyclic_worst_case, w);
  read(j, "out", c.out, w);
  read(j, "bundle", c.bundle, w);
  read(j, "design", c.design, w);
  c.validate();
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kInvalidArgument, "cannot open config " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), fs::path(path).parent_path().string());
}

void apply_overrides(RunConfig& cfg, const Overrides& o) {
  if (o.seed) cfg.seed = *o.seed;
  if (o.out) cfg.out = *o.out;
  if (o.method) {
    if (*o.method == "resd") cfg.method = Method::kResd;
    else if (*o.method == "heuristic") cfg.method = Method::kHeuristic;
    else throw Error(ErrorCode::kInvalidArgument, "method must be resd or heuristic");
  }
  if (o.model) {
    if (*o.model == "lapalma") cfg.model = ModelKind::kLaPalma;
    else if (*o.model == "milp-example") cfg.model = ModelKind::kMilpExample;
    else throw Error(ErrorCode::kInvalidArgument, "model must be lapalma or milp-example");
  }
  cfg.validate();
}

}  // namespace resd::cli
