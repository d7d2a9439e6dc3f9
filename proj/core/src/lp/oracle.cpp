#include "resd/lp/oracle.hpp"

#include <cmath>

#include <Eigen/LU>

#include "resd/errors.hpp"

namespace resd::lp {
namespace {

struct Halfspace {
  Eigen::VectorXd a;
  double b;
};

class VertexSearch {
 public:
  VertexSearch(const LinearProgram& lp, double big_m) : lp_(lp), n_(static_cast<int>(lp.num_vars())) {
    lower_ = lp.lower;
    upper_ = lp.upper;
    for (int j = 0; j < n_; ++j) {
      if (!std::isfinite(lower_[j])) lower_[j] = -big_m;
      if (!std::isfinite(upper_[j])) upper_[j] = big_m;
    }
    for (std::size_t i = 0; i < lp.num_eq(); ++i) {
      equalities_.push_back({lp.a_eq.row(static_cast<Eigen::Index>(i)).transpose(), lp.b_eq[i]});
    }
    for (std::size_t i = 0; i < lp.num_ub(); ++i) {
      candidates_.push_back({lp.a_ub.row(static_cast<Eigen::Index>(i)).transpose(), lp.b_ub[i]});
      owner_.push_back(-1);
    }
    for (int j = 0; j < n_; ++j) {
      Eigen::VectorXd e = Eigen::VectorXd::Zero(n_);
      e(j) = 1.0;
      if (lower_[j] == upper_[j]) {
        equalities_.push_back({e, upper_[j]});
        continue;
      }
      candidates_.push_back({e, upper_[j]});
      owner_.push_back(j);
      candidates_.push_back({-e, -lower_[j]});
      owner_.push_back(j);
    }
  }

  bool run(std::vector<double>& best_x, double& best_obj) {
    found_ = false;
    best_obj_ = kInf;
    basis_ = Eigen::MatrixXd(n_, 0);
    chosen_.clear();
    for (const Halfspace& h : equalities_) {
      if (push(h)) chosen_.push_back(&h);
    }
    used_bound_.assign(n_, false);
    dfs(0);
    best_x = best_x_;
    best_obj = best_obj_;
    return found_;
  }

 private:
  // Orthogonal-complement test; extends the orthonormal span when independent.
  bool push(const Halfspace& h) {
    Eigen::VectorXd r = h.a;
    const double norm = r.norm();
    if (norm == 0.0) return false;
    if (basis_.cols() > 0) {
      r -= basis_ * (basis_.transpose() * r);
      r -= basis_ * (basis_.transpose() * r);
    }
    const double rn = r.norm();
    if (rn <= 1e-9 * norm) return false;
    basis_.conservativeResize(Eigen::NoChange, basis_.cols() + 1);
    basis_.col(basis_.cols() - 1) = r / rn;
    return true;
  }

  void pop() { basis_.conservativeResize(Eigen::NoChange, basis_.cols() - 1); }

  void dfs(std::size_t start) {
    if (static_cast<int>(chosen_.size()) == n_) {
      evaluate();
      return;
    }
    const std::size_t need = static_cast<std::size_t>(n_) - chosen_.size();
    for (std::size_t k = start; k + need <= candidates_.size(); ++k) {
      const int owner = owner_[k];
      if (owner >= 0 && used_bound_[owner]) continue;
      if (!push(candidates_[k])) continue;
      chosen_.push_back(&candidates_[k]);
      if (owner >= 0) used_bound_[owner] = true;
      dfs(k + 1);
      if (owner >= 0) used_bound_[owner] = false;
      chosen_.pop_back();
      pop();
    }
  }

  void evaluate() {
    Eigen::MatrixXd a(n_, n_);
    Eigen::VectorXd b(n_);
    for (int r = 0; r < n_; ++r) {
      a.row(r) = chosen_[r]->a.transpose();
      b(r) = chosen_[r]->b;
    }
    const Eigen::VectorXd x = a.partialPivLu().solve(b);
    const double scale = 1.0 + x.cwiseAbs().maxCoeff();
    const double tol = 1e-9 * scale;
    for (const Halfspace& h : equalities_) {
      if (std::abs(h.a.dot(x) - h.b) > tol * (1.0 + std::abs(h.b))) return;
    }
    for (const Halfspace& h : candidates_) {
      if (h.a.dot(x) - h.b > tol * (1.0 + std::abs(h.b))) return;
    }
    double obj = lp_.objective_offset;
    for (int j = 0; j < n_; ++j) obj += lp_.objective[j] * x(j);
    if (!found_ || obj < best_obj_ - 1e-12 * (1.0 + std::abs(obj))) {
      found_ = true;
      best_obj_ = obj;
      best_x_.assign(x.data(), x.data() + n_);
    }
  }

  const LinearProgram& lp_;
  int n_;
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<Halfspace> equalities_;
  std::vector<Halfspace> candidates_;
  std::vector<int> owner_;
  std::vector<bool> used_bound_;
  std::vector<const Halfspace*> chosen_;
  Eigen::MatrixXd basis_;
  bool found_ = false;
  double best_obj_ = kInf;
  std::vector<double> best_x_;
};

}  // namespace

LpSolution lp_bruteforce_oracle(const LinearProgram& lp, double big_m) {
  lp.validate();
  if (lp.num_vars() > kOracleMaxVars) {
    throw Error(ErrorCode::kTooLarge, "vertex enumeration supports at most " +
                                          std::to_string(kOracleMaxVars) + " variables");
  }
  LpSolution sol;
  std::vector<double> x;
  double obj = 0.0;
  if (lp.num_vars() == 0) {
    sol.status = LpStatus::kOptimal;
    sol.objective = lp.objective_offset;
    return sol;
  }
  if (!VertexSearch(lp, big_m).run(x, obj)) {
    sol.status = LpStatus::kInfeasible;
    return sol;
  }
  std::vector<double> x2;
  double obj2 = 0.0;
  VertexSearch(lp, 2.0 * big_m).run(x2, obj2);
  if (std::abs(obj2 - obj) > 1e-7 * (1.0 + std::abs(obj))) {
    sol.status = LpStatus::kUnbounded;
    return sol;
  }
  sol.status = LpStatus::kOptimal;
  sol.primal = std::move(x);
  sol.objective = obj;
  return sol;
}

}  // namespace resd::lp
