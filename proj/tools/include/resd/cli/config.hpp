#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "resd/models/lapalma.hpp"
#include "resd/sip/problem.hpp"
#include "resd/timeseries/dataset.hpp"

namespace resd::cli {

enum class ModelKind { kLaPalma, kMilpExample };
enum class Method { kResd, kHeuristic };
enum class OracleKind { kAuto, kVertex, kDiscretization };

const char* to_string(ModelKind m);
const char* to_string(Method m);

struct DataSource {
  std::string csv;  // empty selects the synthetic generator
  std::uint64_t synth_seed = 7;
  int synth_days = 100;
};

// n_dim entries of 0 stand for the full day length (3 T).
struct RunConfig {
  std::string command;
  ModelKind model = ModelKind::kLaPalma;
  Method method = Method::kResd;
  OracleKind oracle = OracleKind::kAuto;
  DataSource data;
  std::vector<int> steps{8};
  int k = 5;
  std::vector<int> n_dim{0};
  std::uint64_t seed = 42;
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
  int heuristic_batch = 1;
  std::vector<std::vector<double>> points;  // heuristic realizations for milp-example
  sip::ToleranceSettings tolerances;
  models::LaPalmaOptions model_options;
  std::string out = "out";
  std::string bundle;  // optional preprocessed bundle for solve
  std::string design;  // design file for evaluate, defaults to <out>/design.json
  std::string base_dir;

  int resolve_n_dim(int n, int steps) const { return n == 0 ? ts::kNumQuantities * steps : n; }
  std::string resolve_path(const std::string& p) const;
  void validate() const;
};

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::string> method;
  std::optional<std::string> model;
};

// Throws Error(kSchemaError) on unknown keys or wrong types and
// Error(kInvalidArgument) when validation fails. Relative paths inside the
// document resolve against `base_dir`.
RunConfig parse_config(const std::string& text, const std::string& base_dir = ".");
RunConfig load_config(const std::string& path);
void apply_overrides(RunConfig& cfg, const Overrides& o);

}  // namespace resd::cli
