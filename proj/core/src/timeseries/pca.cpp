#include "resd/timeseries/pca.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "resd/errors.hpp"

namespace resd::ts {

void jacobi_eigen(const Eigen::MatrixXd& sym, Eigen::VectorXd& eigenvalues, Eigen::MatrixXd& eigenvectors) {
  const Eigen::Index n = sym.rows();
  if (sym.cols() != n) throw Error(ErrorCode::kDimensionMismatch, "matrix must be square");
  Eigen::MatrixXd a = 0.5 * (sym + sym.transpose());
  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);
  const double total = a.squaredNorm();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    }
    if (off <= 1e-30 * total || off == 0.0) break;
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (std::abs(apq) < 1e-300) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) { return a(i, i) > a(j, j); });
  eigenvalues.resize(n);
  eigenvectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    eigenvalues(k) = a(order[k], order[k]);
    eigenvectors.col(k) = v.col(order[k]);
  }
}

PcaModel pca_fit(const Eigen::MatrixXd& data, int n_dim) {
  const Eigen::Index samples = data.rows();
  const Eigen::Index dim = data.cols();
  if (samples < 2) throw Error(ErrorCode::kInvalidArgument, "PCA needs at least two samples");
  if (n_dim < 1 || n_dim > std::min(samples, dim)) {
    throw Error(ErrorCode::kInvalidArgument, "n_dim must lie in [1, min(samples, dim)]");
  }
  PcaModel model;
  model.mean = data.colwise().mean().transpose();
  const Eigen::MatrixXd centered = data.rowwise() - model.mean.transpose();
  const Eigen::MatrixXd cov = centered.transpose() * centered / static_cast<double>(samples - 1);
  Eigen::VectorXd evals;
  Eigen::MatrixXd evecs;
  jacobi_eigen(cov, evals, evecs);
  double total = 0.0;
  for (Eigen::Index k = 0; k < dim; ++k) {
    evals(k) = std::max(evals(k), 0.0);
    total += evals(k);
  }
  for (Eigen::Index k = 0; k < dim; ++k) {
    Eigen::Index arg = 0;
    evecs.col(k).cwiseAbs().maxCoeff(&arg);
    if (evecs(arg, k) < 0.0) evecs.col(k) *= -1.0;
    model.all_variance_ratio.push_back(total > 0.0 ? evals(k) / total : 0.0);
  }
  model.components = evecs.leftCols(n_dim);
  for (int k = 0; k < n_dim; ++k) {
    model.explained_variance.push_back(evals(k));
    model.explained_variance_ratio.push_back(model.all_variance_ratio[k]);
  }
  return model;
}

Eigen::VectorXd pca_project(const PcaModel& model, const Eigen::VectorXd& x) {
  if (x.size() != model.mean.size()) throw Error(ErrorCode::kDimensionMismatch, "day vector length differs from PCA dim");
  return model.components.transpose() * (x - model.mean);
}

Eigen::VectorXd pca_reconstruct(const PcaModel& model, const Eigen::VectorXd& latent) {
  if (latent.size() != model.components.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "latent length differs from n_dim");
  }
  return model.mean + model.components * latent;
}

std::vector<double> explained_variance_report(const PcaModel& model) {
  std::vector<double> out;
  double acc = 0.0;
  for (double r : model.explained_variance_ratio) {
    acc += r;
    out.push_back(acc);
  }
  return out;
}

int components_for_variance(const std::vector<double>& all_ratios, double threshold) {
  double acc = 0.0;
  for (std::size_t k = 0; k < all_ratios.size(); ++k) {
    acc += all_ratios[k];
    if (acc >= threshold - 1e-12) return static_cast<int>(k + 1);
  }
  return static_cast<int>(all_ratios.size());
}

}  // namespace resd::ts
