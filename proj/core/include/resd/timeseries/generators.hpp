#pragma once

#include <vector>

#include <Eigen/Dense>

namespace resd::ts {

struct HullCertificate {
  int point = -1;             // index into the input points
  std::vector<double> alpha;  // weights over the retained generators
  double residual = 0.0;      // max abs reproduction error
};

struct GeneratorSet {
  Eigen::MatrixXd points;          // n_v x n_dim retained latent points
  std::vector<int> source_index;   // input row of each retained point
  std::vector<bool> retained;      // per input row
  std::vector<int> duplicate_of;   // per input row, -1 unless an exact duplicate
  std::vector<HullCertificate> certificates;

  int size() const { return static_cast<int>(points.rows()); }
};

// Drops exact duplicates, then removes every point that is a convex
// combination of the other retained points. Removed points are certified
// against the final generator set.
GeneratorSet prune_generators(const Eigen::MatrixXd& latent_points);

}  // namespace resd::ts
