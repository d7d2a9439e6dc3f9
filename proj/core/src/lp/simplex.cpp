#include "resd/lp/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/LU>

#include "resd/errors.hpp"

namespace resd::lp {
namespace {

constexpr double kRatioPivot = 1e-9;
constexpr double kDegenerateStep = 1e-12;
constexpr double kMinOptimality = 1e-14;

enum class VarState : unsigned char { kBasic, kAtLower, kAtUpper, kFree, kFixed };

struct SparseColumn {
  std::vector<int> idx;
  std::vector<double> val;
};

// Computational form: rows are [eq rows; ub rows], columns are
// [structural | one slack per ub row | one artificial per row].
struct StandardForm {
  int n = 0;
  int m_eq = 0;
  int m_ub = 0;
  int m = 0;
  std::vector<SparseColumn> cols;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<double> cost;
  std::vector<double> rhs;
  std::vector<double> row_scale;
  std::vector<double> col_scale;
  double cost_scale = 1.0;

  int slack(int ub_row) const { return n + ub_row; }
  int artificial(int row) const { return n + m_ub + row; }
  int total() const { return n + m_ub + m; }
};

double pow2_round(double v) {
  if (!(v > 0.0) || !std::isfinite(v)) return 1.0;
  return std::exp2(std::round(std::log2(v)));
}

StandardForm make_standard_form(const LinearProgram& lp, bool scale) {
  StandardForm sf;
  sf.n = static_cast<int>(lp.num_vars());
  sf.m_eq = static_cast<int>(lp.num_eq());
  sf.m_ub = static_cast<int>(lp.num_ub());
  sf.m = sf.m_eq + sf.m_ub;
  Eigen::MatrixXd a(sf.m, sf.n);
  if (sf.m_eq > 0) a.topRows(sf.m_eq) = lp.a_eq;
  if (sf.m_ub > 0) a.bottomRows(sf.m_ub) = lp.a_ub;

  sf.row_scale.assign(sf.m, 1.0);
  sf.col_scale.assign(sf.n, 1.0);
  if (scale && sf.m > 0 && sf.n > 0) {
    for (int pass = 0; pass < 4; ++pass) {
      for (int i = 0; i < sf.m; ++i) {
        double lo = kInf;
        double hi = 0.0;
        for (int j = 0; j < sf.n; ++j) {
          const double v = std::abs(a(i, j)) * sf.col_scale[j];
          if (v == 0.0) continue;
          lo = std::min(lo, v);
          hi = std::max(hi, v);
        }
        if (hi > 0.0) sf.row_scale[i] = pow2_round(1.0 / std::sqrt(lo * hi));
      }
      for (int j = 0; j < sf.n; ++j) {
        double lo = kInf;
        double hi = 0.0;
        for (int i = 0; i < sf.m; ++i) {
          const double v = std::abs(a(i, j)) * sf.row_scale[i];
          if (v == 0.0) continue;
          lo = std::min(lo, v);
          hi = std::max(hi, v);
        }
        if (hi > 0.0) sf.col_scale[j] = pow2_round(1.0 / std::sqrt(lo * hi));
      }
    }
    double cmax = 0.0;
    for (int j = 0; j < sf.n; ++j) cmax = std::max(cmax, std::abs(lp.objective[j]) * sf.col_scale[j]);
    if (cmax > 0.0) sf.cost_scale = pow2_round(1.0 / cmax);
  }

  const int total = sf.total();
  sf.cols.resize(total);
  sf.lower.assign(total, 0.0);
  sf.upper.assign(total, kInf);
  sf.cost.assign(total, 0.0);
  for (int j = 0; j < sf.n; ++j) {
    SparseColumn& col = sf.cols[j];
    for (int i = 0; i < sf.m; ++i) {
      const double v = a(i, j);
      if (v != 0.0) {
        col.idx.push_back(i);
        col.val.push_back(v * sf.row_scale[i] * sf.col_scale[j]);
      }
    }
    sf.lower[j] = lp.lower[j] / sf.col_scale[j];
    sf.upper[j] = lp.upper[j] / sf.col_scale[j];
    sf.cost[j] = lp.objective[j] * sf.col_scale[j] * sf.cost_scale;
  }
  for (int k = 0; k < sf.m_ub; ++k) {
    SparseColumn& col = sf.cols[sf.slack(k)];
    col.idx = {sf.m_eq + k};
    col.val = {1.0};
  }
  sf.rhs.resize(sf.m);
  for (int i = 0; i < sf.m_eq; ++i) sf.rhs[i] = lp.b_eq[i] * sf.row_scale[i];
  for (int k = 0; k < sf.m_ub; ++k) sf.rhs[sf.m_eq + k] = lp.b_ub[k] * sf.row_scale[sf.m_eq + k];
  return sf;
}

class Simplex {
 public:
  Simplex(StandardForm& sf, const SolverTolerances& tol) : sf_(sf), tol_(tol) {}

  LpStatus solve();
  int iterations() const { return iterations_; }
  const std::vector<double>& x() const { return x_; }
  // Row duals y = c_B' B^{-1} and reduced costs for the phase-2 cost.
  void final_duals(std::vector<double>& y, std::vector<double>& d);

 private:
  struct Ratio {
    int row = -1;
    double theta = kInf;
    bool flip = false;
    bool to_upper = false;
  };

  void initialize();
  LpStatus run_phase(const std::vector<double>& cost);
  bool refactor();
  void recompute_basic_values();
  void compute_duals(const std::vector<double>& cost);
  int choose_entering(bool bland) const;
  // Largest scaled reduced-cost magnitude among nonbasic columns whose sign
  // is wrong by more than a relative tolerance in original units; 0 if none.
  double unscaled_dual_violation() const;
  void ftran(int q, std::vector<double>& w) const;
  Ratio ratio_test(int q, double dir, const std::vector<double>& w, bool bland) const;
  double max_basic_infeasibility() const;
  double dot_column(const double* row, int j) const;

  StandardForm& sf_;
  SolverTolerances tol_;
  int m_ = 0;
  std::vector<VarState> state_;
  std::vector<double> x_;
  std::vector<int> head_;
  std::vector<double> binv_;  // row-major, row k belongs to basis position k
  std::vector<double> y_;
  std::vector<double> d_;
  std::vector<double> cost_;
  int iterations_ = 0;
  int pivots_since_refactor_ = 0;
  double opt_tol_ = 0.0;
};

void Simplex::initialize() {
  m_ = sf_.m;
  const int total = sf_.total();
  state_.assign(total, VarState::kAtLower);
  x_.assign(total, 0.0);
  for (int j = 0; j < sf_.n + sf_.m_ub; ++j) {
    const double lo = sf_.lower[j];
    const double hi = sf_.upper[j];
    if (lo == hi) {
      state_[j] = VarState::kFixed;
      x_[j] = lo;
    } else if (std::isfinite(lo)) {
      state_[j] = VarState::kAtLower;
      x_[j] = lo;
    } else if (std::isfinite(hi)) {
      state_[j] = VarState::kAtUpper;
      x_[j] = hi;
    } else {
      state_[j] = VarState::kFree;
      x_[j] = 0.0;
    }
  }
  std::vector<double> residual = sf_.rhs;
  for (int j = 0; j < sf_.n; ++j) {
    if (x_[j] == 0.0) continue;
    const SparseColumn& col = sf_.cols[j];
    for (std::size_t k = 0; k < col.idx.size(); ++k) residual[col.idx[k]] -= col.val[k] * x_[j];
  }
  head_.assign(m_, -1);
  binv_.assign(static_cast<std::size_t>(m_) * m_, 0.0);
  for (int i = 0; i < m_; ++i) {
    const int art = sf_.artificial(i);
    SparseColumn& acol = sf_.cols[art];
    const bool ub_row = i >= sf_.m_eq;
    if (ub_row && residual[i] >= 0.0) {
      const int s = sf_.slack(i - sf_.m_eq);
      head_[i] = s;
      state_[s] = VarState::kBasic;
      x_[s] = residual[i];
      binv_[static_cast<std::size_t>(i) * m_ + i] = 1.0;
      acol.idx = {i};
      acol.val = {1.0};
      sf_.lower[art] = 0.0;
      sf_.upper[art] = 0.0;
      state_[art] = VarState::kFixed;
      x_[art] = 0.0;
    } else {
      const double sigma = residual[i] >= 0.0 ? 1.0 : -1.0;
      acol.idx = {i};
      acol.val = {sigma};
      sf_.lower[art] = 0.0;
      sf_.upper[art] = kInf;
      head_[i] = art;
      state_[art] = VarState::kBasic;
      x_[art] = std::abs(residual[i]);
      binv_[static_cast<std::size_t>(i) * m_ + i] = sigma;
    }
  }
}

double Simplex::dot_column(const double* row, int j) const {
  const SparseColumn& col = sf_.cols[j];
  double s = 0.0;
  for (std::size_t k = 0; k < col.idx.size(); ++k) s += row[col.idx[k]] * col.val[k];
  return s;
}

void Simplex::compute_duals(const std::vector<double>& cost) {
  y_.assign(m_, 0.0);
  for (int i = 0; i < m_; ++i) {
    const double cb = cost[head_[i]];
    if (cb == 0.0) continue;
    const double* row = &binv_[static_cast<std::size_t>(i) * m_];
    for (int k = 0; k < m_; ++k) y_[k] += cb * row[k];
  }
  const int total = sf_.total();
  d_.assign(total, 0.0);
  for (int j = 0; j < total; ++j) {
    if (state_[j] == VarState::kBasic) continue;
    d_[j] = cost[j] - dot_column(y_.data(), j);
  }
}

void Simplex::recompute_basic_values() {
  std::vector<double> residual = sf_.rhs;
  const int total = sf_.total();
  for (int j = 0; j < total; ++j) {
    if (state_[j] == VarState::kBasic || x_[j] == 0.0) continue;
    const SparseColumn& col = sf_.cols[j];
    for (std::size_t k = 0; k < col.idx.size(); ++k) residual[col.idx[k]] -= col.val[k] * x_[j];
  }
  for (int i = 0; i < m_; ++i) {
    const double* row = &binv_[static_cast<std::size_t>(i) * m_];
    double v = 0.0;
    for (int k = 0; k < m_; ++k) v += row[k] * residual[k];
    x_[head_[i]] = v;
  }
}

// Rebuilds B^{-1} exploiting that unit columns (slacks, artificials) dominate
// typical bases: only the structural block D = A[rows not covered, structural
// basics] needs a dense factorization.
bool Simplex::refactor() {
  pivots_since_refactor_ = 0;
  if (m_ == 0) return true;
  std::vector<int> covered_by(m_, -1);  // row -> basis position holding a unit column
  std::vector<int> structural_pos;
  for (int p = 0; p < m_; ++p) {
    const int j = head_[p];
    if (j >= sf_.n) {
      const int row = sf_.cols[j].idx[0];
      if (covered_by[row] != -1) return false;
      covered_by[row] = p;
    } else {
      structural_pos.push_back(p);
    }
  }
  std::vector<int> free_rows;
  for (int i = 0; i < m_; ++i) {
    if (covered_by[i] == -1) free_rows.push_back(i);
  }
  const int k = static_cast<int>(structural_pos.size());
  if (static_cast<int>(free_rows.size()) != k) return false;

  std::vector<int> row_slot(m_, -1);
  for (int r = 0; r < k; ++r) row_slot[free_rows[r]] = r;

  Eigen::MatrixXd dinv;
  if (k > 0) {
    Eigen::MatrixXd dmat = Eigen::MatrixXd::Zero(k, k);
    for (int c = 0; c < k; ++c) {
      const SparseColumn& col = sf_.cols[head_[structural_pos[c]]];
      for (std::size_t e = 0; e < col.idx.size(); ++e) {
        const int slot = row_slot[col.idx[e]];
        if (slot >= 0) dmat(slot, c) = col.val[e];
      }
    }
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(dmat);
    const double rcond = lu.rcond();
    if (!(rcond > 1e-14)) return false;
    dinv = lu.inverse();
  }

  std::fill(binv_.begin(), binv_.end(), 0.0);
  // Structural positions: Binv[p, free_rows] = D^{-1}.
  for (int c = 0; c < k; ++c) {
    double* row = &binv_[static_cast<std::size_t>(structural_pos[c]) * m_];
    for (int r = 0; r < k; ++r) row[free_rows[r]] = dinv(c, r);
  }
  // Unit positions covering row rho: Binv[p,:] = sigma (e_rho' - C_rho Binv[K,:]).
  for (int rho = 0; rho < m_; ++rho) {
    const int p = covered_by[rho];
    if (p == -1) continue;
    const double sigma = 1.0 / sf_.cols[head_[p]].val[0];
    double* row = &binv_[static_cast<std::size_t>(p) * m_];
    row[rho] = sigma;
    for (int c = 0; c < k; ++c) {
      const SparseColumn& col = sf_.cols[head_[structural_pos[c]]];
      double coef = 0.0;
      for (std::size_t e = 0; e < col.idx.size(); ++e) {
        if (col.idx[e] == rho) coef += col.val[e];
      }
      if (coef == 0.0) continue;
      const double* krow = &binv_[static_cast<std::size_t>(structural_pos[c]) * m_];
      for (int r = 0; r < k; ++r) row[free_rows[r]] -= sigma * coef * krow[free_rows[r]];
    }
  }
  return true;
}

int Simplex::choose_entering(bool bland) const {
  const int total = sf_.total();
  int best = -1;
  double best_score = 0.0;
  for (int j = 0; j < total; ++j) {
    const VarState s = state_[j];
    if (s == VarState::kBasic || s == VarState::kFixed) continue;
    const double dj = d_[j];
    const bool eligible = (s == VarState::kAtLower && dj < -opt_tol_) ||
                          (s == VarState::kAtUpper && dj > opt_tol_) ||
                          (s == VarState::kFree && std::abs(dj) > opt_tol_);
    if (!eligible) continue;
    if (bland) return j;
    if (std::abs(dj) > best_score) {
      best_score = std::abs(dj);
      best = j;
    }
  }
  return best;
}

void Simplex::ftran(int q, std::vector<double>& w) const {
  w.assign(m_, 0.0);
  const SparseColumn& col = sf_.cols[q];
  for (std::size_t e = 0; e < col.idx.size(); ++e) {
    const int k = col.idx[e];
    const double a = col.val[e];
    for (int i = 0; i < m_; ++i) w[i] += a * binv_[static_cast<std::size_t>(i) * m_ + k];
  }
}

Simplex::Ratio Simplex::ratio_test(int q, double dir, const std::vector<double>& w, bool bland) const {
  Ratio best;
  const double feas = tol_.feasibility;
  auto exact_ratio = [&](int i, double delta) {
    const int j = head_[i];
    if (delta > 0.0) {
      return std::isfinite(sf_.lower[j]) ? std::max(0.0, (x_[j] - sf_.lower[j]) / delta) : kInf;
    }
    return std::isfinite(sf_.upper[j]) ? std::max(0.0, (sf_.upper[j] - x_[j]) / -delta) : kInf;
  };

  if (bland) {
    int best_col = -1;
    for (int i = 0; i < m_; ++i) {
      const double delta = dir * w[i];
      if (std::abs(delta) <= kRatioPivot) continue;
      const double t = exact_ratio(i, delta);
      if (!std::isfinite(t)) continue;
      if (t < best.theta - 1e-12 || (t <= best.theta + 1e-12 && head_[i] < best_col)) {
        best.theta = t;
        best.row = i;
        best.to_upper = delta < 0.0;
        best_col = head_[i];
      }
    }
  } else {
    double theta_max = kInf;
    for (int i = 0; i < m_; ++i) {
      const double delta = dir * w[i];
      if (std::abs(delta) <= kRatioPivot) continue;
      const int j = head_[i];
      double t = kInf;
      if (delta > 0.0 && std::isfinite(sf_.lower[j])) t = (x_[j] - sf_.lower[j] + feas) / delta;
      if (delta < 0.0 && std::isfinite(sf_.upper[j])) t = (sf_.upper[j] - x_[j] + feas) / -delta;
      theta_max = std::min(theta_max, t);
    }
    if (std::isfinite(theta_max)) {
      double best_pivot = 0.0;
      for (int i = 0; i < m_; ++i) {
        const double delta = dir * w[i];
        if (std::abs(delta) <= kRatioPivot) continue;
        const double t = exact_ratio(i, delta);
        if (t <= theta_max && std::abs(delta) > best_pivot) {
          best_pivot = std::abs(delta);
          best.row = i;
          best.theta = t;
          best.to_upper = delta < 0.0;
        }
      }
    }
  }
  const double range = sf_.upper[q] - sf_.lower[q];
  if (std::isfinite(range) && range <= best.theta) {
    best.row = -1;
    best.theta = range;
    best.flip = true;
  }
  return best;
}

double Simplex::unscaled_dual_violation() const {
  double cmax = 1.0;
  for (int j = 0; j < sf_.n; ++j) cmax = std::max(cmax, std::abs(sf_.cost[j]) / (sf_.col_scale[j] * sf_.cost_scale));
  const double limit = tol_.optimality * cmax;
  double worst = 0.0;
  for (int j = 0; j < sf_.n + sf_.m_ub; ++j) {
    const VarState s = state_[j];
    if (s == VarState::kBasic || s == VarState::kFixed) continue;
    const double factor = j < sf_.n ? 1.0 / (sf_.col_scale[j] * sf_.cost_scale)
                                    : sf_.row_scale[sf_.m_eq + j - sf_.n] / sf_.cost_scale;
    const double dj = d_[j];
    const double wrong = s == VarState::kAtLower ? -dj : s == VarState::kAtUpper ? dj : std::abs(dj);
    if (wrong > 0.0 && wrong * factor > limit) worst = std::max(worst, wrong);
  }
  return worst;
}

double Simplex::max_basic_infeasibility() const {
  double worst = 0.0;
  for (int i = 0; i < m_; ++i) {
    const int j = head_[i];
    worst = std::max(worst, sf_.lower[j] - x_[j]);
    worst = std::max(worst, x_[j] - sf_.upper[j]);
  }
  return worst;
}

LpStatus Simplex::run_phase(const std::vector<double>& cost) {
  cost_ = cost;
  compute_duals(cost_);
  int degenerate_run = 0;
  std::vector<double> w;
  std::vector<double> rho;
  bool verified = false;
  while (true) {
    if (iterations_ >= tol_.max_iterations) return LpStatus::kIterationLimit;
    const bool bland = degenerate_run >= tol_.degenerate_pivots_before_bland;
    const int q = choose_entering(bland);
    if (q < 0) {
      if (verified) return LpStatus::kOptimal;
      // Confirm on a fresh factorization before declaring optimality.
      if (!refactor()) return LpStatus::kNumericalBreakdown;
      recompute_basic_values();
      compute_duals(cost_);
      verified = true;
      continue;
    }
    verified = false;
    ++iterations_;
    const double dir = (state_[q] == VarState::kAtUpper ||
                        (state_[q] == VarState::kFree && d_[q] > 0.0))
                           ? -1.0
                           : 1.0;
    ftran(q, w);
    const Ratio ratio = ratio_test(q, dir, w, bland);
    if (ratio.row < 0 && !ratio.flip) return LpStatus::kUnbounded;

    const double theta = ratio.theta;
    if (theta != 0.0) {
      x_[q] += dir * theta;
      for (int i = 0; i < m_; ++i) {
        if (w[i] != 0.0) x_[head_[i]] -= theta * dir * w[i];
      }
    }
    degenerate_run = theta <= kDegenerateStep ? degenerate_run + 1 : 0;

    if (ratio.flip) {
      state_[q] = dir > 0.0 ? VarState::kAtUpper : VarState::kAtLower;
      x_[q] = dir > 0.0 ? sf_.upper[q] : sf_.lower[q];
      continue;
    }

    const int r = ratio.row;
    const double pivot = w[r];
    if (std::abs(pivot) < tol_.pivot) return LpStatus::kNumericalBreakdown;
    const int leaving = head_[r];

    // Dual update along the pivot row.
    rho.assign(binv_.begin() + static_cast<std::ptrdiff_t>(r) * m_,
               binv_.begin() + static_cast<std::ptrdiff_t>(r + 1) * m_);
    const double theta_d = d_[q] / pivot;
    const int total = sf_.total();
    for (int j = 0; j < total; ++j) {
      if (state_[j] == VarState::kBasic || state_[j] == VarState::kFixed) continue;
      const double alpha = dot_column(rho.data(), j);
      if (alpha != 0.0) d_[j] -= theta_d * alpha;
    }
    d_[q] = 0.0;
    d_[leaving] = -theta_d;

    // Leaving variable sits exactly on the bound it hit.
    x_[leaving] = ratio.to_upper ? sf_.upper[leaving] : sf_.lower[leaving];
    if (leaving >= sf_.n + sf_.m_ub) {
      // Artificials never re-enter.
      sf_.lower[leaving] = 0.0;
      sf_.upper[leaving] = 0.0;
      x_[leaving] = 0.0;
      state_[leaving] = VarState::kFixed;
    } else if (sf_.lower[leaving] == sf_.upper[leaving]) {
      state_[leaving] = VarState::kFixed;
    } else if (!std::isfinite(sf_.lower[leaving]) && !std::isfinite(sf_.upper[leaving])) {
      state_[leaving] = VarState::kFree;
    } else {
      state_[leaving] = ratio.to_upper ? VarState::kAtUpper : VarState::kAtLower;
    }

    // Eta update of the explicit inverse.
    double* prow = &binv_[static_cast<std::size_t>(r) * m_];
    const double inv_pivot = 1.0 / pivot;
    for (int k = 0; k < m_; ++k) prow[k] *= inv_pivot;
    for (int i = 0; i < m_; ++i) {
      if (i == r || w[i] == 0.0) continue;
      const double f = w[i];
      double* irow = &binv_[static_cast<std::size_t>(i) * m_];
      for (int k = 0; k < m_; ++k) irow[k] -= f * prow[k];
    }
    head_[r] = q;
    state_[q] = VarState::kBasic;

    if (++pivots_since_refactor_ >= tol_.refactor_interval) {
      if (!refactor()) return LpStatus::kNumericalBreakdown;
      recompute_basic_values();
      compute_duals(cost_);
    }
  }
}

LpStatus Simplex::solve() {
  initialize();
  opt_tol_ = tol_.optimality;
  const int total = sf_.total();
  bool need_phase1 = false;
  std::vector<double> phase1_cost(total, 0.0);
  for (int i = 0; i < m_; ++i) {
    const int art = sf_.artificial(i);
    if (state_[art] == VarState::kBasic) {
      phase1_cost[art] = 1.0;
      need_phase1 = true;
    }
  }
  if (need_phase1) {
    const LpStatus s1 = run_phase(phase1_cost);
    if (s1 == LpStatus::kIterationLimit || s1 == LpStatus::kNumericalBreakdown) return s1;
    double infeas = 0.0;
    for (int i = 0; i < m_; ++i) {
      const int art = sf_.artificial(i);
      infeas = std::max(infeas, std::abs(x_[art]));
    }
    if (infeas > tol_.feasibility) return LpStatus::kInfeasible;
    for (int i = 0; i < m_; ++i) {
      const int art = sf_.artificial(i);
      sf_.lower[art] = 0.0;
      sf_.upper[art] = 0.0;
      if (state_[art] != VarState::kBasic) {
        state_[art] = VarState::kFixed;
        x_[art] = 0.0;
      }
    }
  }
  LpStatus s2 = run_phase(sf_.cost);
  // Badly scaled columns can hide improving directions below the scaled
  // tolerance; tighten it until the original-space check passes.
  for (int round = 0; round < 8 && s2 == LpStatus::kOptimal; ++round) {
    const double v = unscaled_dual_violation();
    if (v == 0.0 || opt_tol_ <= kMinOptimality) break;
    opt_tol_ = std::max(kMinOptimality, 0.5 * std::min(v, opt_tol_));
    s2 = run_phase(sf_.cost);
  }
  if (s2 != LpStatus::kOptimal) return s2;
  if (max_basic_infeasibility() > 10.0 * tol_.feasibility) return LpStatus::kNumericalBreakdown;
  return LpStatus::kOptimal;
}

void Simplex::final_duals(std::vector<double>& y, std::vector<double>& d) {
  compute_duals(sf_.cost);
  y = y_;
  d = d_;
}

}  // namespace

LpSolution solve_lp(const LinearProgram& lp, const SolverTolerances& tol) {
  lp.validate();
  StandardForm sf = make_standard_form(lp, tol.scale);
  Simplex simplex(sf, tol);
  LpSolution sol;
  sol.status = simplex.solve();
  sol.iterations = simplex.iterations();
  if (sol.status != LpStatus::kOptimal) return sol;

  const int n = sf.n;
  const auto& xs = simplex.x();
  sol.primal.resize(n);
  for (int j = 0; j < n; ++j) {
    double v = xs[j] * sf.col_scale[j];
    // Snap onto bounds that the scaled solve reached up to rounding.
    if (std::abs(v - lp.lower[j]) <= 1e-12 * (1.0 + std::abs(v))) v = lp.lower[j];
    if (std::abs(v - lp.upper[j]) <= 1e-12 * (1.0 + std::abs(v))) v = lp.upper[j];
    sol.primal[j] = v;
  }
  std::vector<double> y;
  std::vector<double> d;
  simplex.final_duals(y, d);
  const double inv_cost_scale = 1.0 / sf.cost_scale;
  sol.eq_duals.resize(sf.m_eq);
  sol.ub_duals.resize(sf.m_ub);
  for (int i = 0; i < sf.m_eq; ++i) sol.eq_duals[i] = -y[i] * sf.row_scale[i] * inv_cost_scale;
  for (int k = 0; k < sf.m_ub; ++k) {
    const int i = sf.m_eq + k;
    sol.ub_duals[k] = -y[i] * sf.row_scale[i] * inv_cost_scale;
  }
  // Reduced costs recomputed in the original space from the unscaled duals.
  sol.reduced_costs = lp.objective;
  for (int j = 0; j < n; ++j) {
    double v = lp.objective[j];
    for (int i = 0; i < sf.m_eq; ++i) v += lp.a_eq(i, j) * sol.eq_duals[i];
    for (int k = 0; k < sf.m_ub; ++k) v += lp.a_ub(k, j) * sol.ub_duals[k];
    sol.reduced_costs[j] = v;
  }
  sol.objective = objective_value(lp, sol.primal);
  return sol;
}

}  // namespace resd::lp
