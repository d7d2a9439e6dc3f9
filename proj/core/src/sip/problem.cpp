#include "resd/sip/problem.hpp"

#include <algorithm>
#include <cmath>

#include "resd/errors.hpp"

namespace resd::sip {

double Poly::evaluate(const std::vector<double>& x, const std::vector<double>& y, const std::vector<double>& z) const {
  double v = constant;
  for (const Term& t : terms) {
    double m = t.coef;
    if (t.x >= 0) m *= x[t.x];
    if (t.y >= 0) m *= y[t.y];
    if (t.z >= 0) m *= z[t.z];
    v += m;
  }
  return v;
}

std::vector<std::string> EsipProblem::design_names() const {
  const lp::LinearProgram lp = base.build();
  return {lp.var_names.begin(), lp.var_names.begin() + num_design};
}

namespace {

void check_poly(const Poly& p, int nx, int ny, int nz, bool allow_z, const std::string& where) {
  for (const Term& t : p.terms) {
    const int used = (t.x >= 0) + (t.y >= 0) + (t.z >= 0);
    if (used == 0 || used > 2) throw Error(ErrorCode::kInvalidArgument, where + ": monomial must have degree 1 or 2");
    if (t.x >= nx || t.y >= ny || t.z >= nz) {
      throw Error(ErrorCode::kInvalidArgument, where + ": references an undeclared variable");
    }
    if (!allow_z && t.z >= 0) throw Error(ErrorCode::kInvalidArgument, where + ": recourse variables not allowed");
    if (!std::isfinite(t.coef)) throw Error(ErrorCode::kInvalidArgument, where + ": non-finite coefficient");
  }
}

}  // namespace

void EsipProblem::validate() const {
  if (num_design < 0 || num_design > base.num_vars()) {
    throw Error(ErrorCode::kInvalidArgument, "design variable count exceeds the base model");
  }
  const int nz = static_cast<int>(op.vars.size());
  for (const PolyRow& r : op.rows) check_poly(r.expr, num_design, num_y, nz, true, "operational row " + r.name);
  check_poly(op.value, num_design, num_y, nz, true, "operational value");
  for (const PolyRow& r : coupling) check_poly(r.expr, num_design, num_y, 0, false, "coupling row " + r.name);
  for (const RecourseVar& v : op.vars) {
    if (!(v.lower <= v.upper)) throw Error(ErrorCode::kInvalidBounds, "recourse variable " + v.name);
  }
  if (op.epigraph >= nz) throw Error(ErrorCode::kInvalidArgument, "epigraph index out of range");
  if (const auto* ex = std::get_if<ExplicitSet>(&uncertainty)) {
    if (static_cast<int>(ex->vars.size()) != num_y) {
      throw Error(ErrorCode::kDimensionMismatch, "explicit uncertainty set size differs from num_y");
    }
    for (const PolyRow& r : ex->rows) check_poly(r.expr, 0, num_y, 0, false, "uncertainty row " + r.name);
  } else if (const auto* hull = std::get_if<LatentHull>(&uncertainty)) {
    if (hull->bundle.pca.dim() != num_y) throw Error(ErrorCode::kDimensionMismatch, "PCA dimension differs from num_y");
    if (hull->bundle.generators.size() == 0) throw Error(ErrorCode::kInvalidArgument, "empty generator set");
  } else if (const auto* fin = std::get_if<FiniteSet>(&uncertainty)) {
    for (const auto& pt : fin->points) {
      if (static_cast<int>(pt.size()) != num_y) throw Error(ErrorCode::kDimensionMismatch, "finite point length");
    }
  }
}

std::vector<double> hull_point_to_y(const LatentHull& hull, const Eigen::VectorXd& latent) {
  std::vector<double> y = ts::latent_to_day(hull.bundle, latent);
  const auto steps = static_cast<std::size_t>(hull.bundle.steps);
  for (std::size_t j = 0; j < y.size(); ++j) {
    if (static_cast<int>(j / steps) != ts::kDemand) y[j] = std::max(y[j], 0.0);
  }
  return y;
}

bool DiscretizationSet::contains(const std::vector<double>& y, double tol) const {
  for (const auto& e : entries) {
    if (e.y.size() != y.size()) continue;
    bool same = true;
    for (std::size_t i = 0; i < y.size() && same; ++i) same = std::abs(e.y[i] - y[i]) <= tol * (1.0 + std::abs(y[i]));
    if (same) return true;
  }
  return false;
}

bool DiscretizationSet::add(DiscretizationEntry entry) {
  if (contains(entry.y)) return false;
  entries.push_back(std::move(entry));
  return true;
}

void ToleranceSettings::validate() const {
  if (!(feas_tol > 0.0 && lbp_abs > 0.0 && lbp_rel > 0.0 && oracle_abs > 0.0 && oracle_rel > 0.0 && max_time_s > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "tolerances must be positive");
  }
  if (max_iterations < 1 || max_oracle_iterations < 1 || threads < 1) {
    throw Error(ErrorCode::kInvalidArgument, "iteration limits and thread count must be at least 1");
  }
  if (!(oracle_abs < feas_tol && oracle_rel < feas_tol)) {
    throw Error(ErrorCode::kInvalidArgument, "oracle tolerances must be tighter than feas_tol");
  }
}

}  // namespace resd::sip
