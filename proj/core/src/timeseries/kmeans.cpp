#include "resd/timeseries/kmeans.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "resd/errors.hpp"

namespace resd::ts {
namespace {

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double sq_dist(const double* a, const double* b, int n) {
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

}  // namespace

KMeansResult kmeans_scenarios(const TimeSeriesDataset& normalized, const NormalizationModel& model, int k,
                              std::uint64_t seed, int max_iterations) {
  const int n = normalized.days;
  const int dim = normalized.day_length();
  if (k < 1 || k > n) {
    throw Error(ErrorCode::kInvalidArgument,
                "k = " + std::to_string(k) + " must lie in [1, " + std::to_string(n) + "]");
  }
  const double* data = normalized.values.data();
  auto point = [&](int i) { return data + static_cast<std::size_t>(i) * dim; };

  std::mt19937_64 rng(seed);
  std::vector<double> centroids(static_cast<std::size_t>(k) * dim);
  auto centroid = [&](int c) { return centroids.data() + static_cast<std::size_t>(c) * dim; };
  {
    int first = static_cast<int>(uniform01(rng) * n);
    first = std::min(first, n - 1);
    std::copy(point(first), point(first) + dim, centroid(0));
    std::vector<double> nearest(n);
    for (int i = 0; i < n; ++i) nearest[i] = sq_dist(point(i), centroid(0), dim);
    for (int c = 1; c < k; ++c) {
      double total = 0.0;
      for (double v : nearest) total += v;
      int pick = -1;
      if (total > 0.0) {
        const double target = uniform01(rng) * total;
        double acc = 0.0;
        for (int i = 0; i < n; ++i) {
          acc += nearest[i];
          if (nearest[i] > 0.0 && acc > target) {
            pick = i;
            break;
          }
        }
        if (pick < 0) {
          for (int i = n - 1; i >= 0; --i) {
            if (nearest[i] > 0.0) {
              pick = i;
              break;
            }
          }
        }
      } else {
        pick = c;  // all points coincide with existing centers
      }
      std::copy(point(pick), point(pick) + dim, centroid(c));
      for (int i = 0; i < n; ++i) nearest[i] = std::min(nearest[i], sq_dist(point(i), centroid(c), dim));
    }
  }

  KMeansResult result;
  std::vector<int> assign(n, -1);
  std::vector<int> sizes(k);
  for (int iter = 0; iter < max_iterations; ++iter) {
    bool changed = false;
    for (int i = 0; i < n; ++i) {
      int best = 0;
      double best_d = std::numeric_limits<double>::infinity();
      for (int c = 0; c < k; ++c) {
        const double d = sq_dist(point(i), centroid(c), dim);
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      if (assign[i] != best) {
        assign[i] = best;
        changed = true;
      }
    }
    // Reseed empty clusters with the point farthest from its own centroid.
    for (int c = 0; c < k; ++c) {
      int count = 0;
      for (int i = 0; i < n; ++i) count += assign[i] == c;
      if (count > 0) continue;
      int far = -1;
      double far_d = -1.0;
      for (int i = 0; i < n; ++i) {
        int members = 0;
        for (int j = 0; j < n; ++j) members += assign[j] == assign[i];
        if (members <= 1) continue;
        const double d = sq_dist(point(i), centroid(assign[i]), dim);
        if (d > far_d) {
          far_d = d;
          far = i;
        }
      }
      if (far < 0) break;
      assign[far] = c;
      changed = true;
    }
    std::fill(sizes.begin(), sizes.end(), 0);
    std::fill(centroids.begin(), centroids.end(), 0.0);
    for (int i = 0; i < n; ++i) {
      ++sizes[assign[i]];
      double* cp = centroid(assign[i]);
      const double* p = point(i);
      for (int j = 0; j < dim; ++j) cp[j] += p[j];
    }
    for (int c = 0; c < k; ++c) {
      double* cp = centroid(c);
      for (int j = 0; j < dim; ++j) cp[j] /= sizes[c];
    }
    double inertia = 0.0;
    for (int i = 0; i < n; ++i) inertia += sq_dist(point(i), centroid(assign[i]), dim);
    result.inertia_history.push_back(inertia);
    result.iterations = iter + 1;
    if (!changed && iter > 0) break;
  }

  result.assignment = assign;
  result.inertia = result.inertia_history.back();
  ScenarioSet& sc = result.scenarios;
  sc.steps = normalized.steps;
  sc.quantities = normalized.num_quantities();
  for (int c = 0; c < k; ++c) {
    std::vector<double> z(centroid(c), centroid(c) + dim);
    std::vector<double> day = model.denormalize_day(z, normalized.steps);
    for (std::size_t j = 0; j < day.size(); ++j) {
      // Averages of in-range values; clamp only absorbs rounding.
      const bool cf = static_cast<int>(j / normalized.steps) != kDemand;
      day[j] = cf ? std::clamp(day[j], 0.0, 1.0) : std::max(day[j], 0.0);
    }
    sc.days.push_back(std::move(day));
    sc.cluster_sizes.push_back(sizes[c]);
    sc.weights.push_back(static_cast<double>(sizes[c]) / n);
  }
  return result;
}

ScenarioSet scenarios_from_days(const TimeSeriesDataset& ds) {
  ScenarioSet sc;
  sc.steps = ds.steps;
  sc.quantities = ds.num_quantities();
  for (int d = 0; d < ds.days; ++d) {
    sc.days.push_back(ds.day_vector(d));
    sc.cluster_sizes.push_back(1);
    sc.weights.push_back(1.0 / ds.days);
  }
  return sc;
}

}  // namespace resd::ts
