#include "resd/sip/lbp.hpp"

#include <cmath>
#include <string>

#include "resd/errors.hpp"
#include "resd/sip/lower_level.hpp"

namespace resd::sip {

namespace {

std::pair<double, double> finite_bounds(const lp::ModelBuilder& b, const lp::LinearExpr& e, const std::string& what) {
  const auto [lo, hi] = lp::interval_bounds(b, e);
  if (!std::isfinite(lo) || !std::isfinite(hi)) {
    throw Error(ErrorCode::kInvalidArgument, what + " is unbounded over the variable box; disjunction needs finite bounds");
  }
  return {lo, hi};
}

}  // namespace

lp::MixedIntegerLinearProgram build_lbp(const EsipProblem& problem, const DiscretizationSet& disc) {
  const OperationalTemplate& op = problem.op;
  lp::ModelBuilder b = problem.base;
  std::vector<int> xid(static_cast<std::size_t>(problem.num_design));
  for (int i = 0; i < problem.num_design; ++i) xid[i] = i;
  const std::vector<double> no_values;

  for (std::size_t k = 0; k < disc.size(); ++k) {
    const std::vector<double>& y = disc.entries[k].y;
    if (static_cast<int>(y.size()) != problem.num_y) {
      throw Error(ErrorCode::kDimensionMismatch, "discretization entry " + std::to_string(k) + " has wrong length");
    }
    const std::string tag = "[k" + std::to_string(k) + "]";
    std::vector<int> zid(op.vars.size(), -1);
    std::vector<double> zval(op.vars.size(), 0.0);
    for (std::size_t j = 0; j < op.vars.size(); ++j) {
      const RecourseVar& v = op.vars[j];
      if (v.lower == v.upper) {
        zval[j] = v.lower;
      } else {
        zid[j] = b.add_var(v.name + tag, v.lower, v.upper);
      }
    }
    const Binding bx{&no_values, &xid};
    const Binding by{&y, nullptr};
    const Binding bz{&zval, &zid};
    for (const PolyRow& r : op.rows) {
      b.add_row(to_affine(r.expr, bx, by, bz), r.equality ? lp::RowSense::kEqual : lp::RowSense::kLessEqual, 0.0,
                r.name + tag);
    }
    const lp::LinearExpr value = to_affine(op.value, bx, by, bz);

    if (problem.coupling.empty() || disc.entries[k].realized) {
      if (value.terms.size() == 1 && value.terms[0].second == 1.0 && value.constant == 0.0) {
        const int v = value.terms[0].first;
        b.set_bounds(v, b.lower(v), std::min(b.upper(v), 0.0));
      } else {
        b.add_row(value, lp::RowSense::kLessEqual, 0.0, "gap" + tag);
      }
      continue;
    }

    // One binary per alternative when several coupling rows exist; the
    // single-row case uses b_u and (1 - b_u).
    std::vector<lp::LinearExpr> alternatives{value};
    for (const PolyRow& r : problem.coupling) {
      lp::LinearExpr neg = to_affine(r.expr, bx, by, bz);
      for (auto& term : neg.terms) term.second = -term.second;
      neg.constant = -neg.constant;
      alternatives.push_back(std::move(neg));
    }
    if (alternatives.size() == 2) {
      const int bu = b.add_binary("b_u" + tag);
      const auto [l0, u0] = finite_bounds(b, alternatives[0], "gap" + tag);
      const int a0 = linearize_binary_product(b, bu, alternatives[0], l0, u0, "bu_gap" + tag);
      b.add_row(lp::LinearExpr{}.add(a0, 1.0), lp::RowSense::kLessEqual, 0.0, "disj_gap" + tag);
      const auto [l1, u1] = finite_bounds(b, alternatives[1], "coupling" + tag);
      const int a1 = linearize_binary_product(b, bu, alternatives[1], l1, u1, "bu_coupling" + tag);
      lp::LinearExpr row = alternatives[1];
      row.add(a1, -1.0);
      b.add_row(row, lp::RowSense::kLessEqual, 0.0, "disj_coupling" + tag);
      continue;
    }
    lp::LinearExpr pick;
    for (std::size_t a = 0; a < alternatives.size(); ++a) {
      const std::string atag = std::to_string(a) + tag;
      const int s = b.add_binary("sel" + atag);
      pick.add(s, 1.0);
      const auto [lo, hi] = finite_bounds(b, alternatives[a], "alternative" + atag);
      const int aux = linearize_binary_product(b, s, alternatives[a], lo, hi, "sel_prod" + atag);
      b.add_row(lp::LinearExpr{}.add(aux, 1.0), lp::RowSense::kLessEqual, 0.0, "disj" + atag);
    }
    b.add_row(pick, lp::RowSense::kEqual, 1.0, "disj_pick" + tag);
  }
  return lp::build_milp(b);
}

}  // namespace resd::sip
