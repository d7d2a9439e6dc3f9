#pragma once

#include <vector>

#include <Eigen/Dense>

namespace resd::ts {

struct PcaModel {
  Eigen::VectorXd mean;
  Eigen::MatrixXd components;  // dim x n_dim, orthonormal columns
  std::vector<double> explained_variance;        // kept components
  std::vector<double> explained_variance_ratio;  // kept components
  std::vector<double> all_variance_ratio;        // every component of the fit

  int n_dim() const { return static_cast<int>(components.cols()); }
  int dim() const { return static_cast<int>(mean.size()); }
};

// Symmetric eigendecomposition by cyclic Jacobi rotations; eigenvalues sorted
// descending with eigenvectors as columns.
void jacobi_eigen(const Eigen::MatrixXd& sym, Eigen::VectorXd& eigenvalues, Eigen::MatrixXd& eigenvectors);

// Rows of data are samples. Components follow descending eigenvalues of the
// sample covariance; the largest-magnitude entry of each is positive.
PcaModel pca_fit(const Eigen::MatrixXd& data, int n_dim);

Eigen::VectorXd pca_project(const PcaModel& model, const Eigen::VectorXd& x);
Eigen::VectorXd pca_reconstruct(const PcaModel& model, const Eigen::VectorXd& latent);

// Prefix sums of the kept components' ratios.
std::vector<double> explained_variance_report(const PcaModel& model);
// Smallest number of components whose cumulative ratio reaches threshold.
int components_for_variance(const std::vector<double>& all_ratios, double threshold);

}  // namespace resd::ts
