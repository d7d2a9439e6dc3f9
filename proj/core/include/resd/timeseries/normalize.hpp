#pragma once

#include <vector>

#include "resd/timeseries/dataset.hpp"

namespace resd::ts {

// Per-quantity z-score over all D*T values (population standard deviation).
struct NormalizationModel {
  std::vector<double> mean;
  std::vector<double> stddev;

  double normalize(int q, double v) const { return (v - mean[q]) / stddev[q]; }
  double denormalize(int q, double v) const { return mean[q] + stddev[q] * v; }
  // Applies denormalize blockwise to a concatenated day vector.
  std::vector<double> denormalize_day(const std::vector<double>& day, int steps) const;
};

struct Normalized {
  TimeSeriesDataset data;
  NormalizationModel model;
};

// Throws Error(kConstantSeries) when a quantity has zero spread.
Normalized znormalize(const TimeSeriesDataset& ds);
TimeSeriesDataset denormalize(const TimeSeriesDataset& normalized, const NormalizationModel& model);

}  // namespace resd::ts
