#include "resd/timeseries/generators.hpp"

#include <cmath>

#include "resd/errors.hpp"
#include "resd/lp/simplex.hpp"

namespace resd::ts {
namespace {

// Feasibility LP: alpha >= 0, sum alpha = 1, sum alpha_v c_v = target.
bool convex_weights(const Eigen::MatrixXd& pts, const std::vector<int>& members, const Eigen::VectorXd& target,
                    std::vector<double>& alpha) {
  const int dim = static_cast<int>(pts.cols());
  const int n = static_cast<int>(members.size());
  if (n == 0) return false;
  lp::LinearProgram prog;
  prog.objective.assign(n, 0.0);
  prog.lower.assign(n, 0.0);
  prog.upper.assign(n, lp::kInf);
  prog.a_eq = Eigen::MatrixXd::Zero(dim + 1, n);
  for (int j = 0; j < n; ++j) {
    for (int d = 0; d < dim; ++d) prog.a_eq(d, j) = pts(members[j], d);
    prog.a_eq(dim, j) = 1.0;
  }
  for (int d = 0; d < dim; ++d) prog.b_eq.push_back(target(d));
  prog.b_eq.push_back(1.0);
  lp::SolverTolerances tol;
  tol.feasibility = 1e-9;
  const lp::LpSolution sol = lp::solve_lp(prog, tol);
  if (!sol.optimal()) return false;
  alpha = sol.primal;
  for (double& a : alpha) a = std::max(a, 0.0);
  Eigen::VectorXd rebuilt = Eigen::VectorXd::Zero(dim);
  double sum = 0.0;
  for (int j = 0; j < n; ++j) {
    rebuilt += alpha[j] * pts.row(members[j]).transpose();
    sum += alpha[j];
  }
  const double scale = 1.0 + target.cwiseAbs().maxCoeff();
  return (rebuilt - target).cwiseAbs().maxCoeff() <= 1e-7 * scale && std::abs(sum - 1.0) <= 1e-7;
}

}  // namespace

GeneratorSet prune_generators(const Eigen::MatrixXd& latent_points) {
  const int n = static_cast<int>(latent_points.rows());
  const int dim = static_cast<int>(latent_points.cols());
  if (n < 1 || dim < 1) throw Error(ErrorCode::kInvalidArgument, "need at least one latent point");
  GeneratorSet out;
  out.retained.assign(n, false);
  out.duplicate_of.assign(n, -1);

  std::vector<int> alive;
  for (int i = 0; i < n; ++i) {
    for (int j : alive) {
      if (latent_points.row(i) == latent_points.row(j)) {
        out.duplicate_of[i] = j;
        break;
      }
    }
    if (out.duplicate_of[i] < 0) alive.push_back(i);
  }

  std::vector<bool> keep(n, false);
  for (int i : alive) keep[i] = true;
  for (int i : alive) {
    std::vector<int> others;
    for (int j : alive) {
      if (j != i && keep[j]) others.push_back(j);
    }
    std::vector<double> alpha;
    if (convex_weights(latent_points, others, latent_points.row(i).transpose(), alpha)) keep[i] = false;
  }

  for (int i : alive) {
    if (keep[i]) out.source_index.push_back(i);
  }
  out.points.resize(static_cast<Eigen::Index>(out.source_index.size()), dim);
  for (std::size_t r = 0; r < out.source_index.size(); ++r) {
    out.points.row(static_cast<Eigen::Index>(r)) = latent_points.row(out.source_index[r]);
    out.retained[out.source_index[r]] = true;
  }

  std::vector<int> members(out.source_index.size());
  for (std::size_t r = 0; r < members.size(); ++r) members[r] = static_cast<int>(r);
  for (int i = 0; i < n; ++i) {
    if (out.retained[i]) continue;
    HullCertificate cert;
    cert.point = i;
    const Eigen::VectorXd target = latent_points.row(i).transpose();
    if (!convex_weights(out.points, members, target, cert.alpha)) {
      throw Error(ErrorCode::kInternal, "pruned point " + std::to_string(i) + " failed hull certification");
    }
    Eigen::VectorXd rebuilt = Eigen::VectorXd::Zero(dim);
    for (std::size_t r = 0; r < members.size(); ++r) rebuilt += cert.alpha[r] * out.points.row(static_cast<Eigen::Index>(r)).transpose();
    cert.residual = (rebuilt - target).cwiseAbs().maxCoeff();
    out.certificates.push_back(std::move(cert));
  }
  return out;
}

}  // namespace resd::ts
