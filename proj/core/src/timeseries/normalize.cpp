#include "resd/timeseries/normalize.hpp"

#include <cmath>

#include "resd/errors.hpp"

namespace resd::ts {

std::vector<double> NormalizationModel::denormalize_day(const std::vector<double>& day, int steps) const {
  std::vector<double> out(day.size());
  for (std::size_t i = 0; i < day.size(); ++i) {
    const int q = static_cast<int>(i / static_cast<std::size_t>(steps));
    out[i] = denormalize(q, day[i]);
  }
  return out;
}

Normalized znormalize(const TimeSeriesDataset& ds) {
  const int nq = ds.num_quantities();
  const double count = static_cast<double>(ds.days) * ds.steps;
  if (count <= 0.0) throw Error(ErrorCode::kConstantSeries, "cannot normalize an empty dataset");
  Normalized out;
  out.model.mean.assign(nq, 0.0);
  out.model.stddev.assign(nq, 0.0);
  for (int q = 0; q < nq; ++q) {
    double sum = 0.0;
    for (int d = 0; d < ds.days; ++d) {
      for (int t = 0; t < ds.steps; ++t) sum += ds.at(d, q, t);
    }
    const double mean = sum / count;
    double ss = 0.0;
    double scale = 0.0;
    for (int d = 0; d < ds.days; ++d) {
      for (int t = 0; t < ds.steps; ++t) {
        const double dev = ds.at(d, q, t) - mean;
        ss += dev * dev;
        scale = std::max(scale, std::abs(ds.at(d, q, t)));
      }
    }
    const double sd = std::sqrt(ss / count);
    if (!(sd > 1e-12 * std::max(1.0, scale))) {
      throw Error(ErrorCode::kConstantSeries, "quantity " + ds.quantities[q] + " is constant");
    }
    out.model.mean[q] = mean;
    out.model.stddev[q] = sd;
  }
  out.data = ds;
  for (int d = 0; d < ds.days; ++d) {
    for (int q = 0; q < nq; ++q) {
      for (int t = 0; t < ds.steps; ++t) out.data.at(d, q, t) = out.model.normalize(q, ds.at(d, q, t));
    }
  }
  for (auto& u : out.data.units) u = "z";
  return out;
}

TimeSeriesDataset denormalize(const TimeSeriesDataset& normalized, const NormalizationModel& model) {
  TimeSeriesDataset out = normalized;
  for (int d = 0; d < out.days; ++d) {
    for (int q = 0; q < out.num_quantities(); ++q) {
      for (int t = 0; t < out.steps; ++t) out.at(d, q, t) = model.denormalize(q, normalized.at(d, q, t));
    }
  }
  out.units = TimeSeriesDataset{}.units;
  return out;
}

}  // namespace resd::ts
