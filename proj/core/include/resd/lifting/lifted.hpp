#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "resd/lp/linear_program.hpp"
#include "resd/sip/problem.hpp"

namespace resd::lifting {

// Product of lifted variables (repeated indices are powers).
struct Monomial {
  double coef = 0.0;
  std::vector<int> vars;  // sorted
};

struct Polynomial {
  double constant = 0.0;
  std::vector<Monomial> terms;

  Polynomial& add(double coef, std::vector<int> vars);
  double evaluate(const std::vector<double>& point) const;
  // Largest |constant| or |monomial value|, used for relative residuals.
  double magnitude(const std::vector<double>& point) const;
  Polynomial derivative(int var) const;
  Polynomial times_var(int var) const;
  Polynomial& operator+=(const Polynomial& other);
  // Merges equal monomials and drops zeros; term order is deterministic.
  void canonicalize();
};

enum class VarBlock { kUncertain, kLatent, kWeight, kRecourse, kEpigraph, kLambda, kMu };
const char* to_string(VarBlock block);

struct LiftedVar {
  std::string name;
  VarBlock block = VarBlock::kRecourse;
};

enum class RowKind { kStationarity, kComplementarity, kSign, kEquality, kInequality, kMedialEquality, kMedialInequality };
const char* to_string(RowKind kind);

struct LiftedRow {
  RowKind kind = RowKind::kEquality;
  Polynomial expr;
  bool equality = true;  // expr = 0, otherwise expr <= 0
  std::string name;
};

// L = value + lambda' h + mu' g over the lifted variables at fixed x.
struct LagrangianSystem {
  std::vector<double> x;
  Polynomial value;
  std::vector<Polynomial> h;
  std::vector<Polynomial> g;
  std::vector<std::string> h_names;
  std::vector<std::string> g_names;
  int lambda_begin = 0;
  int mu_begin = 0;

  Polynomial lagrangian() const;
  double evaluate(const std::vector<double>& point) const;
};

struct LiftedNlp {
  std::vector<LiftedVar> vars;
  std::vector<LiftedRow> rows;
  LagrangianSystem lagrangian;
  Polynomial objective;  // maximized
  int y_begin = 0;
  int num_y = 0;
  int latent_begin = 0;
  int num_latent = 0;
  int weight_begin = 0;
  int num_weights = 0;
  int z_begin = 0;
  int num_z = 0;  // recourse variables including the epigraph variable
  int epigraph = -1;

  int num_vars() const { return static_cast<int>(vars.size()); }
  int num_h() const { return static_cast<int>(lagrangian.h.size()); }
  int num_g() const { return static_cast<int>(lagrangian.g.size()); }
  int count_rows(RowKind kind) const;
};

// Lower-level rows: template rows in order, then z - l = 0 for fixed
// variables (h) and l - z <= 0, z - u <= 0 for finite bounds (g).
// Throws Error(kNonlinearLowerLevel) for integer recourse variables.
LiftedNlp build_lifted_nlp(const sip::EsipProblem& problem, const std::vector<double>& x);

struct Multipliers {
  std::vector<double> lambda;
  std::vector<double> mu;
};

// Maps LLP duals onto the lifted h/g ordering; bound multipliers come from
// reduced costs. Throws Error(kNotOptimal) for non-optimal solutions.
Multipliers recover_multipliers_from_lp_duals(const lp::LinearProgram& llp, const lp::LpSolution& solution);

// Lifted point from a concrete realization, its latent and hull weights
// (hull problems only, else empty), the LLP primal and multipliers.
std::vector<double> assemble_point(const LiftedNlp& nlp, const std::vector<double>& y, const std::vector<double>& latent,
                                   const std::vector<double>& weights, const std::vector<double>& z,
                                   const Multipliers& m);

struct KktResidual {
  double stationarity = 0.0;     // inf-norm, relative to row magnitude
  double complementarity = 0.0;  // max |mu_i g_i|, relative
  double primal = 0.0;           // max violation of h, g and medial rows, relative
  double min_multiplier = 0.0;   // min mu (0 without inequality rows)
};

KktResidual kkt_residuals(const LiftedNlp& nlp, const std::vector<double>& point);

struct DualityCheck {
  bool ok = false;
  double gap = 0.0;         // |L - llp_objective|
  double scaled_gap = 0.0;  // gap / max(1, |llp_objective|)
};

DualityCheck verify_strong_duality(const LagrangianSystem& system, const std::vector<double>& point,
                                   double llp_objective, double tol = 1e-6);

// Plain-text dump: one line per variable and per row with its kind.
void write_lifted_text(std::ostream& os, const LiftedNlp& nlp);

}  // namespace resd::lifting
