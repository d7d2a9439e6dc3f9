#include "resd/sip/lower_level.hpp"

#include <algorithm>

#include "resd/errors.hpp"
#include "resd/lp/simplex.hpp"

namespace resd::sip {

lp::LinearExpr to_affine(const Poly& p, const Binding& x, const Binding& y, const Binding& z) {
  lp::LinearExpr e;
  e.constant = p.constant;
  for (const Term& t : p.terms) {
    double c = t.coef;
    int var = -1;
    const auto absorb = [&](const Binding& b, int i) {
      if (i < 0) return;
      if (b.is_var(i)) {
        if (var >= 0) throw Error(ErrorCode::kNonlinearLowerLevel, "product of two decision variables");
        var = (*b.ids)[i];
      } else {
        c *= (*b.values)[i];
      }
    };
    absorb(x, t.x);
    absorb(y, t.y);
    absorb(z, t.z);
    if (var >= 0) {
      e.add(var, c);
    } else {
      e.constant += c;
    }
  }
  return e;
}

lp::LinearProgram build_llp(const EsipProblem& problem, const std::vector<double>& x, const std::vector<double>& y) {
  const OperationalTemplate& op = problem.op;
  lp::ModelBuilder b;
  std::vector<int> ids;
  for (const RecourseVar& v : op.vars) {
    if (v.integer) throw Error(ErrorCode::kNonlinearLowerLevel, "integer recourse variable " + v.name);
    ids.push_back(b.add_var(v.name, v.lower, v.upper));
  }
  const Binding bx{&x, nullptr};
  const Binding by{&y, nullptr};
  const Binding bz{nullptr, &ids};
  for (const PolyRow& r : op.rows) {
    b.add_row(to_affine(r.expr, bx, by, bz), r.equality ? lp::RowSense::kEqual : lp::RowSense::kLessEqual, 0.0, r.name);
  }
  const lp::LinearExpr value = to_affine(op.value, bx, by, bz);
  for (const auto& [var, coef] : value.terms) b.add_objective(var, coef);
  b.add_objective_offset(value.constant);
  return b.build();
}

GapEvaluation evaluate_gap(const EsipProblem& problem, const std::vector<double>& x, const std::vector<double>& y,
                           const lp::SolverTolerances& tol) {
  GapEvaluation g;
  g.llp = build_llp(problem, x, y);
  g.solution = lp::solve_lp(g.llp, tol);
  if (!g.solution.optimal()) {
    throw Error(ErrorCode::kLlpInfeasible,
                std::string("operational problem returned ") + lp::to_string(g.solution.status));
  }
  g.llp_value = g.solution.objective;
  const std::vector<double> none;
  for (const PolyRow& r : problem.coupling) g.coupling = std::min(g.coupling, -r.expr.evaluate(x, y, none));
  g.value = std::min(g.llp_value, g.coupling);
  return g;
}

}  // namespace resd::sip
