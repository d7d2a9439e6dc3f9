#include "resd/lifting/lifted.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>

#include "resd/errors.hpp"
#include "resd/timeseries/dataset.hpp"

namespace resd::lifting {

Polynomial& Polynomial::add(double coef, std::vector<int> vars) {
  if (coef == 0.0) return *this;
  if (vars.empty()) {
    constant += coef;
    return *this;
  }
  std::sort(vars.begin(), vars.end());
  terms.push_back({coef, std::move(vars)});
  return *this;
}

double Polynomial::evaluate(const std::vector<double>& point) const {
  double v = constant;
  for (const Monomial& m : terms) {
    double t = m.coef;
    for (int i : m.vars) t *= point[static_cast<std::size_t>(i)];
    v += t;
  }
  return v;
}

double Polynomial::magnitude(const std::vector<double>& point) const {
  double mag = std::abs(constant);
  for (const Monomial& m : terms) {
    double t = m.coef;
    for (int i : m.vars) t *= point[static_cast<std::size_t>(i)];
    mag = std::max(mag, std::abs(t));
  }
  return mag;
}

Polynomial Polynomial::derivative(int var) const {
  Polynomial d;
  for (const Monomial& m : terms) {
    const auto power = std::count(m.vars.begin(), m.vars.end(), var);
    if (power == 0) continue;
    std::vector<int> rest = m.vars;
    rest.erase(std::find(rest.begin(), rest.end(), var));
    d.add(m.coef * static_cast<double>(power), std::move(rest));
  }
  d.canonicalize();
  return d;
}

Polynomial Polynomial::times_var(int var) const {
  Polynomial p;
  if (constant != 0.0) p.add(constant, {var});
  for (const Monomial& m : terms) {
    std::vector<int> v = m.vars;
    v.push_back(var);
    p.add(m.coef, std::move(v));
  }
  return p;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  constant += other.constant;
  terms.insert(terms.end(), other.terms.begin(), other.terms.end());
  return *this;
}

void Polynomial::canonicalize() {
  std::map<std::vector<int>, double> merged;
  for (const Monomial& m : terms) merged[m.vars] += m.coef;
  terms.clear();
  for (auto& [vars, coef] : merged) {
    if (coef != 0.0) terms.push_back({coef, vars});
  }
}

const char* to_string(VarBlock block) {
  switch (block) {
    case VarBlock::kUncertain: return "y";
    case VarBlock::kLatent: return "p";
    case VarBlock::kWeight: return "alpha";
    case VarBlock::kRecourse: return "z";
    case VarBlock::kEpigraph: return "e_epi";
    case VarBlock::kLambda: return "lambda";
    case VarBlock::kMu: return "mu";
  }
  return "?";
}

const char* to_string(RowKind kind) {
  switch (kind) {
    case RowKind::kStationarity: return "stationarity";
    case RowKind::kComplementarity: return "complementarity";
    case RowKind::kSign: return "sign";
    case RowKind::kEquality: return "h";
    case RowKind::kInequality: return "g";
    case RowKind::kMedialEquality: return "medial_eq";
    case RowKind::kMedialInequality: return "medial_le";
  }
  return "?";
}

Polynomial LagrangianSystem::lagrangian() const {
  Polynomial l = value;
  for (std::size_t i = 0; i < h.size(); ++i) l += h[i].times_var(lambda_begin + static_cast<int>(i));
  for (std::size_t i = 0; i < g.size(); ++i) l += g[i].times_var(mu_begin + static_cast<int>(i));
  l.canonicalize();
  return l;
}

double LagrangianSystem::evaluate(const std::vector<double>& point) const {
  double v = value.evaluate(point);
  for (std::size_t i = 0; i < h.size(); ++i) v += point[lambda_begin + i] * h[i].evaluate(point);
  for (std::size_t i = 0; i < g.size(); ++i) v += point[mu_begin + i] * g[i].evaluate(point);
  return v;
}

int LiftedNlp::count_rows(RowKind kind) const {
  return static_cast<int>(std::count_if(rows.begin(), rows.end(), [&](const LiftedRow& r) { return r.kind == kind; }));
}

namespace {

// Template polynomial with x substituted and y/z mapped to lifted indices.
Polynomial lift(const sip::Poly& p, const std::vector<double>& x, int y_begin, int z_begin) {
  Polynomial out;
  out.constant = p.constant;
  for (const sip::Term& t : p.terms) {
    double c = t.coef;
    std::vector<int> vars;
    if (t.x >= 0) c *= x[static_cast<std::size_t>(t.x)];
    if (t.y >= 0) vars.push_back(y_begin + t.y);
    if (t.z >= 0) vars.push_back(z_begin + t.z);
    out.add(c, std::move(vars));
  }
  out.canonicalize();
  return out;
}

}  // namespace

LiftedNlp build_lifted_nlp(const sip::EsipProblem& problem, const std::vector<double>& x) {
  problem.validate();
  if (static_cast<int>(x.size()) != problem.num_design) {
    throw Error(ErrorCode::kDimensionMismatch, "design vector length differs from the problem");
  }
  const sip::OperationalTemplate& op = problem.op;
  for (const sip::RecourseVar& v : op.vars) {
    if (v.integer) throw Error(ErrorCode::kNonlinearLowerLevel, "integer recourse variable " + v.name);
  }
  LiftedNlp nlp;
  auto add_var = [&](std::string name, VarBlock block) {
    nlp.vars.push_back({std::move(name), block});
    return nlp.num_vars() - 1;
  };
  const auto* hull = std::get_if<sip::LatentHull>(&problem.uncertainty);

  nlp.y_begin = nlp.num_vars();
  nlp.num_y = problem.num_y;
  for (int k = 0; k < problem.num_y; ++k) {
    add_var(k < static_cast<int>(problem.y_names.size()) ? problem.y_names[k] : "y[" + std::to_string(k) + "]",
            VarBlock::kUncertain);
  }
  nlp.latent_begin = nlp.num_vars();
  nlp.weight_begin = nlp.num_vars();
  if (hull != nullptr) {
    nlp.num_latent = hull->bundle.pca.n_dim();
    for (int d = 0; d < nlp.num_latent; ++d) add_var("p[" + std::to_string(d) + "]", VarBlock::kLatent);
    nlp.weight_begin = nlp.num_vars();
    nlp.num_weights = hull->bundle.generators.size();
    for (int v = 0; v < nlp.num_weights; ++v) add_var("alpha[" + std::to_string(v) + "]", VarBlock::kWeight);
  }
  nlp.z_begin = nlp.num_vars();
  nlp.num_z = static_cast<int>(op.vars.size());
  for (int j = 0; j < nlp.num_z; ++j) {
    const int id = add_var(op.vars[j].name, j == op.epigraph ? VarBlock::kEpigraph : VarBlock::kRecourse);
    if (j == op.epigraph) nlp.epigraph = id;
  }

  LagrangianSystem& ls = nlp.lagrangian;
  ls.x = x;
  ls.value = lift(op.value, x, nlp.y_begin, nlp.z_begin);
  for (const sip::PolyRow& r : op.rows) {
    (r.equality ? ls.h : ls.g).push_back(lift(r.expr, x, nlp.y_begin, nlp.z_begin));
    (r.equality ? ls.h_names : ls.g_names).push_back(r.name);
  }
  for (int j = 0; j < nlp.num_z; ++j) {
    const sip::RecourseVar& v = op.vars[j];
    const int id = nlp.z_begin + j;
    if (v.lower == v.upper) {
      ls.h.push_back(Polynomial{-v.lower, {}}.add(1.0, {id}));
      ls.h_names.push_back(v.name + "_fixed");
      continue;
    }
    if (std::isfinite(v.lower)) {
      ls.g.push_back(Polynomial{v.lower, {}}.add(-1.0, {id}));
      ls.g_names.push_back(v.name + "_lower");
    }
    if (std::isfinite(v.upper)) {
      ls.g.push_back(Polynomial{-v.upper, {}}.add(1.0, {id}));
      ls.g_names.push_back(v.name + "_upper");
    }
  }
  ls.lambda_begin = nlp.num_vars();
  for (const auto& n : ls.h_names) add_var("lambda_" + n, VarBlock::kLambda);
  ls.mu_begin = nlp.num_vars();
  for (const auto& n : ls.g_names) add_var("mu_" + n, VarBlock::kMu);

  const Polynomial lagr = ls.lagrangian();
  nlp.objective = lagr;
  for (int j = 0; j < nlp.num_z; ++j) {
    nlp.rows.push_back({RowKind::kStationarity, lagr.derivative(nlp.z_begin + j), true, "dL/d" + op.vars[j].name});
  }
  for (std::size_t i = 0; i < ls.h.size(); ++i) nlp.rows.push_back({RowKind::kEquality, ls.h[i], true, ls.h_names[i]});
  for (std::size_t i = 0; i < ls.g.size(); ++i) nlp.rows.push_back({RowKind::kInequality, ls.g[i], false, ls.g_names[i]});
  for (std::size_t i = 0; i < ls.g.size(); ++i) {
    const int mu = ls.mu_begin + static_cast<int>(i);
    nlp.rows.push_back({RowKind::kSign, Polynomial{}.add(-1.0, {mu}), false, "sign_" + ls.g_names[i]});
  }
  for (std::size_t i = 0; i < ls.g.size(); ++i) {
    Polynomial c = ls.g[i].times_var(ls.mu_begin + static_cast<int>(i));
    c.canonicalize();
    nlp.rows.push_back({RowKind::kComplementarity, std::move(c), true, "comp_" + ls.g_names[i]});
  }

  // Medial level: the uncertainty set Y(x).
  const auto medial = [&](Polynomial p, bool eq, std::string name) {
    p.canonicalize();
    nlp.rows.push_back({eq ? RowKind::kMedialEquality : RowKind::kMedialInequality, std::move(p), eq, std::move(name)});
  };
  const std::vector<double> no_z;
  if (hull != nullptr) {
    const ts::PreprocessBundle& b = hull->bundle;
    const int T = b.steps;
    for (int j = 0; j < problem.num_y; ++j) {
      const int q = j / T;
      const double mu = b.normalization.mean[q];
      const double sd = b.normalization.stddev[q];
      Polynomial recon{mu + sd * b.pca.mean(j), {}};
      for (int d = 0; d < nlp.num_latent; ++d) recon.add(sd * b.pca.components(j, d), {nlp.latent_begin + d});
      const int yj = nlp.y_begin + j;
      if (q == ts::kDemand) {
        Polynomial row = recon;
        for (auto& m : row.terms) m.coef = -m.coef;
        row.constant = -row.constant;
        row.add(1.0, {yj});
        medial(std::move(row), true, "pca_demand[" + std::to_string(j % T) + "]");
      } else {
        Polynomial row = recon;
        row.add(-1.0, {yj});
        medial(std::move(row), false, std::string(q == ts::kSolar ? "pca_solar" : "pca_wind") + "[" + std::to_string(j % T) + "]");
        medial(Polynomial{}.add(-1.0, {yj}), false, std::string(q == ts::kSolar ? "solar" : "wind") + "_nonneg[" + std::to_string(j % T) + "]");
      }
    }
    const Eigen::MatrixXd& gen = b.generators.points;
    for (int d = 0; d < nlp.num_latent; ++d) {
      Polynomial row;
      row.add(-1.0, {nlp.latent_begin + d});
      for (int v = 0; v < nlp.num_weights; ++v) row.add(gen(v, d), {nlp.weight_begin + v});
      medial(std::move(row), true, "hull_comb[" + std::to_string(d) + "]");
    }
    Polynomial sum{-1.0, {}};
    for (int v = 0; v < nlp.num_weights; ++v) sum.add(1.0, {nlp.weight_begin + v});
    medial(std::move(sum), true, "hull_sum");
    for (int v = 0; v < nlp.num_weights; ++v) {
      medial(Polynomial{}.add(-1.0, {nlp.weight_begin + v}), false, "alpha_nonneg[" + std::to_string(v) + "]");
    }
  } else if (const auto* ex = std::get_if<sip::ExplicitSet>(&problem.uncertainty)) {
    for (int k = 0; k < problem.num_y; ++k) {
      const sip::UncertainVar& v = ex->vars[k];
      const int yk = nlp.y_begin + k;
      if (v.binary) {
        medial(Polynomial{}.add(1.0, {yk, yk}).add(-1.0, {yk}), true, v.name + "_binary");
        continue;
      }
      if (std::isfinite(v.lower)) medial(Polynomial{v.lower, {}}.add(-1.0, {yk}), false, v.name + "_lower");
      if (std::isfinite(v.upper)) medial(Polynomial{-v.upper, {}}.add(1.0, {yk}), false, v.name + "_upper");
    }
    for (const sip::PolyRow& r : ex->rows) medial(lift(r.expr, x, nlp.y_begin, nlp.z_begin), r.equality, r.name);
  }
  for (const sip::PolyRow& r : problem.coupling) medial(lift(r.expr, x, nlp.y_begin, nlp.z_begin), false, r.name);
  return nlp;
}

Multipliers recover_multipliers_from_lp_duals(const lp::LinearProgram& llp, const lp::LpSolution& solution) {
  if (!solution.optimal()) throw Error(ErrorCode::kNotOptimal, "multipliers need an optimal LP solution");
  Multipliers m;
  m.lambda = solution.eq_duals;
  m.mu = solution.ub_duals;
  for (std::size_t j = 0; j < llp.num_vars(); ++j) {
    const double d = solution.reduced_costs[j];
    if (llp.lower[j] == llp.upper[j]) {
      m.lambda.push_back(-d);
      continue;
    }
    if (std::isfinite(llp.lower[j])) m.mu.push_back(std::max(d, 0.0));
    if (std::isfinite(llp.upper[j])) m.mu.push_back(std::max(-d, 0.0));
  }
  return m;
}

std::vector<double> assemble_point(const LiftedNlp& nlp, const std::vector<double>& y, const std::vector<double>& latent,
                                   const std::vector<double>& weights, const std::vector<double>& z,
                                   const Multipliers& m) {
  if (static_cast<int>(y.size()) != nlp.num_y || static_cast<int>(latent.size()) != nlp.num_latent ||
      static_cast<int>(weights.size()) != nlp.num_weights || static_cast<int>(z.size()) != nlp.num_z ||
      static_cast<int>(m.lambda.size()) != nlp.num_h() || static_cast<int>(m.mu.size()) != nlp.num_g()) {
    throw Error(ErrorCode::kDimensionMismatch, "lifted point blocks do not match the system");
  }
  std::vector<double> p(static_cast<std::size_t>(nlp.num_vars()), 0.0);
  std::copy(y.begin(), y.end(), p.begin() + nlp.y_begin);
  std::copy(latent.begin(), latent.end(), p.begin() + nlp.latent_begin);
  std::copy(weights.begin(), weights.end(), p.begin() + nlp.weight_begin);
  std::copy(z.begin(), z.end(), p.begin() + nlp.z_begin);
  std::copy(m.lambda.begin(), m.lambda.end(), p.begin() + nlp.lagrangian.lambda_begin);
  std::copy(m.mu.begin(), m.mu.end(), p.begin() + nlp.lagrangian.mu_begin);
  return p;
}

KktResidual kkt_residuals(const LiftedNlp& nlp, const std::vector<double>& point) {
  if (static_cast<int>(point.size()) != nlp.num_vars()) {
    throw Error(ErrorCode::kDimensionMismatch, "point length differs from the lifted system");
  }
  KktResidual r;
  const auto rel = [&](const Polynomial& p) { return p.evaluate(point) / std::max(1.0, p.magnitude(point)); };
  for (const LiftedRow& row : nlp.rows) {
    const double v = rel(row.expr);
    switch (row.kind) {
      case RowKind::kStationarity: r.stationarity = std::max(r.stationarity, std::abs(v)); break;
      case RowKind::kComplementarity: r.complementarity = std::max(r.complementarity, std::abs(v)); break;
      case RowKind::kSign: break;
      case RowKind::kEquality:
      case RowKind::kMedialEquality: r.primal = std::max(r.primal, std::abs(v)); break;
      case RowKind::kInequality:
      case RowKind::kMedialInequality: r.primal = std::max(r.primal, v); break;
    }
  }
  for (int i = 0; i < nlp.num_g(); ++i) {
    const double mu = point[static_cast<std::size_t>(nlp.lagrangian.mu_begin + i)];
    r.min_multiplier = i == 0 ? mu : std::min(r.min_multiplier, mu);
  }
  return r;
}

DualityCheck verify_strong_duality(const LagrangianSystem& system, const std::vector<double>& point,
                                   double llp_objective, double tol) {
  DualityCheck c;
  c.gap = std::abs(system.evaluate(point) - llp_objective);
  c.scaled_gap = c.gap / std::max(1.0, std::abs(llp_objective));
  c.ok = c.scaled_gap <= tol;
  return c;
}

namespace {

void write_poly(std::ostream& os, const Polynomial& p) {
  os << p.constant;
  for (const Monomial& m : p.terms) {
    os << ' ' << m.coef;
    for (int v : m.vars) os << '*' << v;
  }
}

}  // namespace

void write_lifted_text(std::ostream& os, const LiftedNlp& nlp) {
  const auto precision = os.precision(17);
  os << "lifted " << nlp.num_vars() << ' ' << nlp.rows.size() << '\n';
  for (int i = 0; i < nlp.num_vars(); ++i) {
    os << "var " << i << ' ' << to_string(nlp.vars[i].block) << ' ' << nlp.vars[i].name << '\n';
  }
  os << "max ";
  write_poly(os, nlp.objective);
  os << '\n';
  for (const LiftedRow& r : nlp.rows) {
    os << to_string(r.kind) << ' ' << (r.equality ? "eq" : "le") << ' ' << r.name << ' ';
    write_poly(os, r.expr);
    os << '\n';
  }
  os.precision(precision);
}

}  // namespace resd::lifting
