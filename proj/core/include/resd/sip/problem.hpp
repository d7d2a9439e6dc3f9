#pragma once

#include <string>
#include <variant>
#include <vector>

#include "resd/lp/linear_program.hpp"
#include "resd/timeseries/pipeline.hpp"

namespace resd::sip {

// Monomial of degree <= 2 over design (x), uncertain (y) and recourse (z)
// variables. Unused slots are -1; x*y, x*z and y*z products are allowed.
struct Term {
  double coef = 0.0;
  int x = -1;
  int y = -1;
  int z = -1;
};

struct Poly {
  double constant = 0.0;
  std::vector<Term> terms;

  Poly& add_x(int i, double c) { return push({c, i, -1, -1}); }
  Poly& add_y(int k, double c) { return push({c, -1, k, -1}); }
  Poly& add_z(int j, double c) { return push({c, -1, -1, j}); }
  Poly& add_xy(int i, int k, double c) { return push({c, i, k, -1}); }
  Poly& add_xz(int i, int j, double c) { return push({c, i, -1, j}); }
  Poly& add_yz(int k, int j, double c) { return push({c, -1, k, j}); }

  double evaluate(const std::vector<double>& x, const std::vector<double>& y, const std::vector<double>& z) const;

 private:
  Poly& push(Term t) {
    if (t.coef != 0.0) terms.push_back(t);
    return *this;
  }
};

enum class RowRole { kPhysics, kGap };

struct PolyRow {
  Poly expr;
  bool equality = false;  // expr = 0, otherwise expr <= 0
  RowRole role = RowRole::kPhysics;
  std::string name;
};

struct RecourseVar {
  std::string name;
  double lower = 0.0;
  double upper = lp::kInf;
  bool integer = false;  // rejected by the LP lower level
};

// Operational problem for fixed (x, y): min value(x, y, z) over the rows.
// With an epigraph variable the value is that variable; otherwise it is the
// supply-gap expression itself.
struct OperationalTemplate {
  std::vector<RecourseVar> vars;
  std::vector<PolyRow> rows;
  Poly value;
  int epigraph = -1;  // z index of e_epi, or -1
};

struct UncertainVar {
  std::string name;
  double lower = 0.0;
  double upper = 0.0;
  bool binary = false;
};

// Box/binary uncertainty with optional static rows in y only.
struct ExplicitSet {
  std::vector<UncertainVar> vars;
  std::vector<PolyRow> rows;
};

// Convex hull of latent generators mapped through PCA and denormalization.
// Capacity-factor quantities are clipped below at zero; demand is exact.
struct LatentHull {
  ts::PreprocessBundle bundle;
};

// Finite list of concrete realizations (historical days).
struct FiniteSet {
  std::vector<std::vector<double>> points;
};

using UncertaintySet = std::variant<ExplicitSet, LatentHull, FiniteSet>;

struct EsipProblem {
  std::string name;
  // Deterministic part: the first num_design variables of `base` are x;
  // scenario blocks and the TAC objective live here.
  lp::ModelBuilder base;
  int num_design = 0;
  int num_y = 0;
  OperationalTemplate op;
  // Coupling rows g_j(x, y) <= 0 that make the uncertainty set depend on x.
  std::vector<PolyRow> coupling;
  UncertaintySet uncertainty;
  std::vector<std::string> y_names;

  std::vector<std::string> design_names() const;
  // Throws Error(kInvalidArgument) when a row references undeclared variables
  // or uses an unsupported monomial.
  void validate() const;
};

// Concrete y for latent point p of a hull description.
std::vector<double> hull_point_to_y(const LatentHull& hull, const Eigen::VectorXd& latent);

struct DiscretizationEntry {
  std::vector<double> y;
  double violation = 0.0;
  int source = -1;  // generator or day index when known
  // Observed realizations lie in Y(x) by construction and are enforced
  // without the disjunction.
  bool realized = false;
};

struct DiscretizationSet {
  std::vector<DiscretizationEntry> entries;

  bool contains(const std::vector<double>& y, double tol = 1e-9) const;
  // Returns false (and leaves the set unchanged) for near-duplicates.
  bool add(DiscretizationEntry entry);
  std::size_t size() const { return entries.size(); }
};

struct ToleranceSettings {
  double feas_tol = 5e-2;
  double lbp_abs = 5e-3;
  double lbp_rel = 5e-3;
  double oracle_abs = 1e-2;
  double oracle_rel = 5e-3;
  double max_time_s = 10800.0;
  int max_iterations = 500;
  int max_oracle_iterations = 200;
  int threads = 1;
  bool record_timing = true;  // false zeroes every timing field
  lp::SolverTolerances lp;

  // Positive values; oracle tolerances strictly below feas_tol.
  void validate() const;
};

}  // namespace resd::sip
