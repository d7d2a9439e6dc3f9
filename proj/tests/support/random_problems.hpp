#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "resd/lp/linear_program.hpp"
#include "resd/lp/milp.hpp"

namespace resd::testing {

// Small integer-coefficient LP built around a known point so most instances
// are feasible; some are unbounded and every tenth is perturbed to be
// infeasible-prone.
inline lp::LinearProgram random_lp(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto uni = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  const int n = uni(1, 8);
  const int m_ub = uni(1, 10);
  const int m_eq = uni(0, std::min(2, n - 1));
  lp::LinearProgram lp;
  lp.objective.resize(n);
  lp.lower.resize(n);
  lp.upper.resize(n);
  std::vector<double> x0(n);
  for (int j = 0; j < n; ++j) {
    lp.objective[j] = uni(-6, 6);
    const int kind = uni(0, 9);
    lp.lower[j] = kind == 0 ? -lp::kInf : uni(-2, 1);
    lp.upper[j] = kind <= 4 ? lp::kInf : lp.lower[j] + uni(0, 8);
    if (!std::isfinite(lp.lower[j]) && kind == 0 && uni(0, 1) == 0) lp.upper[j] = uni(0, 5);
    double lo = lp.lower[j];
    double hi = lp.upper[j];
    if (!std::isfinite(lo)) lo = std::isfinite(hi) ? hi - 3.0 : -2.0;
    if (!std::isfinite(hi)) hi = lo + 4.0;
    x0[j] = uni(static_cast<int>(lo), static_cast<int>(hi));
  }
  const bool make_infeasible = seed % 10 == 7;
  lp.a_eq = Eigen::MatrixXd::Zero(m_eq, n);
  lp.a_ub = Eigen::MatrixXd::Zero(m_ub, n);
  for (int i = 0; i < m_eq; ++i) {
    double r = 0.0;
    for (int j = 0; j < n; ++j) {
      lp.a_eq(i, j) = uni(0, 2) == 0 ? 0.0 : uni(-5, 5);
      r += lp.a_eq(i, j) * x0[j];
    }
    lp.b_eq.push_back(r);
  }
  for (int i = 0; i < m_ub; ++i) {
    double r = 0.0;
    for (int j = 0; j < n; ++j) {
      lp.a_ub(i, j) = uni(0, 3) == 0 ? 0.0 : uni(-5, 5);
      r += lp.a_ub(i, j) * x0[j];
    }
    lp.b_ub.push_back(r + uni(0, 6) - (make_infeasible ? 12 : 0));
  }
  return lp;
}

// Pure-binary MILP: min c'x s.t. A x <= b with integer data.
inline lp::MixedIntegerLinearProgram random_binary_milp(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto uni = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  const int n = uni(1, 12);
  const int m = uni(1, 6);
  lp::MixedIntegerLinearProgram milp;
  lp::LinearProgram& lp = milp.lp;
  lp.objective.resize(n);
  lp.lower.assign(n, 0.0);
  lp.upper.assign(n, 1.0);
  for (int j = 0; j < n; ++j) lp.objective[j] = uni(-9, 9);
  lp.a_ub = Eigen::MatrixXd::Zero(m, n);
  for (int i = 0; i < m; ++i) {
    double row_sum = 0.0;
    for (int j = 0; j < n; ++j) {
      lp.a_ub(i, j) = uni(-3, 7);
      row_sum += std::max(0.0, lp.a_ub(i, j));
    }
    lp.b_ub.push_back(std::floor(row_sum * uni(10, 70) / 100.0) - (seed % 13 == 5 ? 20 : 0));
  }
  milp.integer.assign(n, true);
  return milp;
}

}  // namespace resd::testing
