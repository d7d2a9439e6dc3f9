#pragma once

#include <memory>
#include <string>
#include <vector>

#include "resd/lp/linear_program.hpp"
#include "resd/sip/problem.hpp"

namespace resd::sip {

struct OracleResult {
  std::vector<double> y;   // worst-case realization
  double value = -lp::kInf;  // MAXMIN value (certified by an LLP solve)
  double upper_bound = lp::kInf;
  int source = -1;         // generator, point or inner-iteration index
  lp::LinearProgram llp;   // operational LP at the worst case
  lp::LpSolution llp_solution;
  int llp_solves = 0;
  int mlp_solves = 0;
  double subproblem_seconds = 0.0;
  std::vector<std::vector<double>> responses;  // lower-level responses (discretization oracle)
};

class MaxMinOracle {
 public:
  virtual ~MaxMinOracle() = default;
  virtual std::string name() const = 0;
  virtual OracleResult evaluate(const EsipProblem& problem, const std::vector<double>& x,
                                const ToleranceSettings& tol) const = 0;
};

// Max over the hull generators of a LatentHull uncertainty set. Exact for
// operational models that are linear in (y, z). Ties go to the lowest index.
OracleResult maxmin_vertex_enum(const EsipProblem& problem, const std::vector<double>& x,
                                const ToleranceSettings& tol);

// Max over an explicit list of realizations (lowest index on ties).
OracleResult maxmin_finite(const EsipProblem& problem, const std::vector<std::vector<double>>& points,
                           const std::vector<double>& x, const ToleranceSettings& tol);

// Medial/lower-level loop for an ExplicitSet: maximize mlpobj against the
// collected lower-level responses, certify the candidate with the
// operational LP, stop when the gap is within oracle tolerances.
// Status is reported through upper_bound - value; throws nothing on the
// iteration limit (the certified best value is returned).
OracleResult maxmin_discretization(const EsipProblem& problem, const std::vector<double>& x,
                                   const ToleranceSettings& tol, double value_bound = 1e3);

class VertexEnumerationOracle : public MaxMinOracle {
 public:
  std::string name() const override { return "vertex-enumeration"; }
  OracleResult evaluate(const EsipProblem& problem, const std::vector<double>& x,
                        const ToleranceSettings& tol) const override {
    return maxmin_vertex_enum(problem, x, tol);
  }
};

class FiniteSetOracle : public MaxMinOracle {
 public:
  explicit FiniteSetOracle(std::vector<std::vector<double>> points) : points_(std::move(points)) {}
  std::string name() const override { return "finite-set"; }
  OracleResult evaluate(const EsipProblem& problem, const std::vector<double>& x,
                        const ToleranceSettings& tol) const override {
    return maxmin_finite(problem, points_, x, tol);
  }

 private:
  std::vector<std::vector<double>> points_;
};

class DiscretizationOracle : public MaxMinOracle {
 public:
  explicit DiscretizationOracle(double value_bound = 1e3) : value_bound_(value_bound) {}
  std::string name() const override { return "discretization"; }
  OracleResult evaluate(const EsipProblem& problem, const std::vector<double>& x,
                        const ToleranceSettings& tol) const override {
    return maxmin_discretization(problem, x, tol, value_bound_);
  }

 private:
  double value_bound_;
};

// Picks the oracle matching the problem's uncertainty description.
std::unique_ptr<MaxMinOracle> default_oracle(const EsipProblem& problem);

}  // namespace resd::sip
