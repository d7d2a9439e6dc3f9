#pragma once

#include <cstdint>
#include <vector>

#include "resd/timeseries/normalize.hpp"

namespace resd::ts {

struct ScenarioSet {
  int steps = 0;
  int quantities = kNumQuantities;
  std::vector<std::vector<double>> days;  // concatenated day vectors in physical units
  std::vector<double> weights;
  std::vector<int> cluster_sizes;

  int size() const { return static_cast<int>(days.size()); }
  double value(int s, int q, int t) const { return days[s][static_cast<std::size_t>(q) * steps + t]; }
};

struct KMeansResult {
  ScenarioSet scenarios;
  double inertia = 0.0;
  std::vector<int> assignment;
  std::vector<double> inertia_history;  // after each Lloyd iteration
  int iterations = 0;
};

// k-means++ seeding followed by Lloyd iterations on normalized day vectors.
// Empty clusters are reseeded with the point farthest from its centroid.
KMeansResult kmeans_scenarios(const TimeSeriesDataset& normalized, const NormalizationModel& model, int k,
                              std::uint64_t seed, int max_iterations = 300);

// Every historical day as its own scenario with weight 1/D.
ScenarioSet scenarios_from_days(const TimeSeriesDataset& ds);

}  // namespace resd::ts
