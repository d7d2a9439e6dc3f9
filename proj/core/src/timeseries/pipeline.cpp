#include "resd/timeseries/pipeline.hpp"

#include <json.hpp>

#include "resd/errors.hpp"

namespace resd::ts {
namespace {

using nlohmann::json;

json matrix_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd matrix_from(const json& j, Eigen::Index cols_if_empty) {
  const auto rows = static_cast<Eigen::Index>(j.size());
  const Eigen::Index cols = rows > 0 ? static_cast<Eigen::Index>(j.at(0).size()) : cols_if_empty;
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const json& row = j.at(static_cast<std::size_t>(r));
    if (static_cast<Eigen::Index>(row.size()) != cols) throw Error(ErrorCode::kSchemaError, "ragged matrix");
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = row.at(static_cast<std::size_t>(c)).get<double>();
  }
  return m;
}

}  // namespace

Eigen::MatrixXd normalized_day_matrix(const TimeSeriesDataset& normalized) {
  Eigen::MatrixXd m(normalized.days, normalized.day_length());
  for (int d = 0; d < normalized.days; ++d) {
    const auto v = normalized.day_vector(d);
    for (int j = 0; j < normalized.day_length(); ++j) m(d, j) = v[j];
  }
  return m;
}

PreprocessBundle preprocess(const TimeSeriesDataset& ds, int k, int n_dim, std::uint64_t seed) {
  ds.validate();
  PreprocessBundle b;
  b.steps = ds.steps;
  b.days = ds.days;
  b.seed = seed;
  b.k = k;
  b.n_dim = n_dim;
  b.source = ds.source;
  Normalized nz = znormalize(ds);
  b.normalization = nz.model;
  KMeansResult km = kmeans_scenarios(nz.data, nz.model, k, seed);
  b.scenarios = std::move(km.scenarios);
  b.inertia = km.inertia;
  const Eigen::MatrixXd m = normalized_day_matrix(nz.data);
  b.pca = pca_fit(m, n_dim);
  Eigen::MatrixXd latent(ds.days, n_dim);
  for (int d = 0; d < ds.days; ++d) latent.row(d) = pca_project(b.pca, m.row(d).transpose()).transpose();
  b.generators = prune_generators(latent);
  return b;
}

std::vector<double> latent_to_day(const PreprocessBundle& bundle, const Eigen::VectorXd& latent) {
  const Eigen::VectorXd z = pca_reconstruct(bundle.pca, latent);
  std::vector<double> day(z.data(), z.data() + z.size());
  return bundle.normalization.denormalize_day(day, bundle.steps);
}

std::string bundle_to_json(const PreprocessBundle& b) {
  json j;
  j["format"] = "resd-preprocess-bundle";
  j["version"] = 1;
  j["provenance"] = {{"seed", b.seed}, {"k", b.k}, {"n_dim", b.n_dim}, {"source", b.source},
                     {"days", b.days}, {"steps", b.steps}};
  j["normalization"] = {{"mean", b.normalization.mean}, {"std", b.normalization.stddev}};
  j["scenarios"] = {{"steps", b.scenarios.steps},
                    {"quantities", b.scenarios.quantities},
                    {"days", b.scenarios.days},
                    {"weights", b.scenarios.weights},
                    {"cluster_sizes", b.scenarios.cluster_sizes},
                    {"inertia", b.inertia}};
  std::vector<double> mean(b.pca.mean.data(), b.pca.mean.data() + b.pca.mean.size());
  j["pca"] = {{"mean", mean},
              {"components", matrix_json(b.pca.components.transpose())},
              {"explained_variance", b.pca.explained_variance},
              {"explained_variance_ratio", b.pca.explained_variance_ratio},
              {"all_variance_ratio", b.pca.all_variance_ratio}};
  json certs = json::array();
  for (const auto& c : b.generators.certificates) {
    certs.push_back({{"point", c.point}, {"alpha", c.alpha}, {"residual", c.residual}});
  }
  std::vector<int> retained(b.generators.retained.begin(), b.generators.retained.end());
  j["generators"] = {{"points", matrix_json(b.generators.points)},
                     {"source_index", b.generators.source_index},
                     {"retained", retained},
                     {"duplicate_of", b.generators.duplicate_of},
                     {"certificates", certs}};
  return j.dump(1) + "\n";
}

PreprocessBundle bundle_from_json(const std::string& text) {
  PreprocessBundle b;
  try {
    const json j = json::parse(text);
    if (j.at("format").get<std::string>() != "resd-preprocess-bundle") {
      throw Error(ErrorCode::kSchemaError, "not a preprocess bundle");
    }
    const json& p = j.at("provenance");
    b.seed = p.at("seed").get<std::uint64_t>();
    b.k = p.at("k").get<int>();
    b.n_dim = p.at("n_dim").get<int>();
    b.source = p.at("source").get<std::string>();
    b.days = p.at("days").get<int>();
    b.steps = p.at("steps").get<int>();
    b.normalization.mean = j.at("normalization").at("mean").get<std::vector<double>>();
    b.normalization.stddev = j.at("normalization").at("std").get<std::vector<double>>();
    const json& s = j.at("scenarios");
    b.scenarios.steps = s.at("steps").get<int>();
    b.scenarios.quantities = s.at("quantities").get<int>();
    b.scenarios.days = s.at("days").get<std::vector<std::vector<double>>>();
    b.scenarios.weights = s.at("weights").get<std::vector<double>>();
    b.scenarios.cluster_sizes = s.at("cluster_sizes").get<std::vector<int>>();
    b.inertia = s.at("inertia").get<double>();
    const json& pca = j.at("pca");
    const auto mean = pca.at("mean").get<std::vector<double>>();
    b.pca.mean = Eigen::Map<const Eigen::VectorXd>(mean.data(), static_cast<Eigen::Index>(mean.size()));
    b.pca.components = matrix_from(pca.at("components"), b.pca.mean.size()).transpose();
    b.pca.explained_variance = pca.at("explained_variance").get<std::vector<double>>();
    b.pca.explained_variance_ratio = pca.at("explained_variance_ratio").get<std::vector<double>>();
    b.pca.all_variance_ratio = pca.at("all_variance_ratio").get<std::vector<double>>();
    const json& g = j.at("generators");
    b.generators.points = matrix_from(g.at("points"), b.n_dim);
    b.generators.source_index = g.at("source_index").get<std::vector<int>>();
    for (int r : g.at("retained").get<std::vector<int>>()) b.generators.retained.push_back(r != 0);
    b.generators.duplicate_of = g.at("duplicate_of").get<std::vector<int>>();
    for (const json& c : g.at("certificates")) {
      b.generators.certificates.push_back(
          {c.at("point").get<int>(), c.at("alpha").get<std::vector<double>>(), c.at("residual").get<double>()});
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kSchemaError, std::string("bundle JSON: ") + e.what());
  }
  const auto dim = static_cast<Eigen::Index>(b.steps) * kNumQuantities;
  if (b.pca.mean.size() != dim || b.pca.components.rows() != dim || b.pca.components.cols() != b.n_dim ||
      b.generators.points.cols() != b.n_dim || b.generators.points.rows() == 0 ||
      b.normalization.mean.size() != kNumQuantities || b.normalization.stddev.size() != kNumQuantities ||
      b.scenarios.weights.size() != b.scenarios.days.size()) {
    throw Error(ErrorCode::kSchemaError, "bundle dimensions are inconsistent");
  }
  for (const auto& day : b.scenarios.days) {
    if (static_cast<Eigen::Index>(day.size()) != dim) throw Error(ErrorCode::kSchemaError, "scenario length mismatch");
  }
  return b;
}

}  // namespace resd::ts
