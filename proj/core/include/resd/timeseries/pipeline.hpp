#pragma once

#include <cstdint>
#include <string>

#include "resd/timeseries/generators.hpp"
#include "resd/timeseries/kmeans.hpp"
#include "resd/timeseries/pca.hpp"

namespace resd::ts {

struct PreprocessBundle {
  int steps = 0;
  int days = 0;
  std::uint64_t seed = 0;
  int k = 0;
  int n_dim = 0;
  std::string source;
  NormalizationModel normalization;
  ScenarioSet scenarios;
  double inertia = 0.0;
  PcaModel pca;  // fit on z-normalized day vectors
  GeneratorSet generators;
};

// z-normalize, cluster into k representative days, fit PCA with n_dim
// components, project every day and prune the latent points to generators.
PreprocessBundle preprocess(const TimeSeriesDataset& ds, int k, int n_dim, std::uint64_t seed);

// Physical-unit day vector for a latent point: denormalize(mean + components p).
std::vector<double> latent_to_day(const PreprocessBundle& bundle, const Eigen::VectorXd& latent);

Eigen::MatrixXd normalized_day_matrix(const TimeSeriesDataset& normalized);

std::string bundle_to_json(const PreprocessBundle& bundle);
// Throws Error(kSchemaError) on malformed documents.
PreprocessBundle bundle_from_json(const std::string& text);

}  // namespace resd::ts
