#include "resd/lp/lp_text.hpp"

#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "resd/errors.hpp"

namespace resd::lp {
namespace {

std::string token_name(const std::string& name, const char* prefix, std::size_t index) {
  if (name.empty()) return prefix + std::to_string(index);
  std::string out = name;
  for (char& c : out) {
    if (c == ' ' || c == '\t' || c == '\n') c = '_';
  }
  return out;
}

void write_row(std::ostream& os, const char* kind, const std::string& name, double rhs,
               const Eigen::MatrixXd& a, Eigen::Index row) {
  os << kind << ' ' << name << ' ' << rhs;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    if (a(row, j) != 0.0) os << ' ' << j << ':' << a(row, j);
  }
  os << '\n';
}

double parse_double(const std::string& tok) {
  if (tok == "inf") return kInf;
  if (tok == "-inf") return -kInf;
  try {
    std::size_t used = 0;
    const double v = std::stod(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorCode::kSchemaError, "bad number '" + tok + "' in LP text");
  }
}

}  // namespace

void write_lp_text(std::ostream& os, const LinearProgram& lp) {
  const auto old_precision = os.precision(std::numeric_limits<double>::max_digits10);
  os << "lp " << lp.num_vars() << ' ' << lp.num_eq() << ' ' << lp.num_ub() << '\n';
  os << "obj " << lp.objective_offset;
  for (double c : lp.objective) os << ' ' << c;
  os << '\n';
  for (std::size_t i = 0; i < lp.num_eq(); ++i) {
    const std::string name = token_name(i < lp.eq_names.size() ? lp.eq_names[i] : "", "e", i);
    write_row(os, "eq", name, lp.b_eq[i], lp.a_eq, static_cast<Eigen::Index>(i));
  }
  for (std::size_t i = 0; i < lp.num_ub(); ++i) {
    const std::string name = token_name(i < lp.ub_names.size() ? lp.ub_names[i] : "", "u", i);
    write_row(os, "le", name, lp.b_ub[i], lp.a_ub, static_cast<Eigen::Index>(i));
  }
  for (std::size_t j = 0; j < lp.num_vars(); ++j) {
    const std::string name = token_name(j < lp.var_names.size() ? lp.var_names[j] : "", "x", j);
    os << "var " << name << ' ' << lp.lower[j] << ' ' << lp.upper[j] << '\n';
  }
  os.precision(old_precision);
}

LinearProgram read_lp_text(std::istream& is) {
  LinearProgram lp;
  std::string line;
  std::size_t n = 0;
  std::size_t m_eq = 0;
  std::size_t m_ub = 0;
  if (!std::getline(is, line)) throw Error(ErrorCode::kSchemaError, "empty LP text");
  {
    std::istringstream hs(line);
    std::string tag;
    if (!(hs >> tag >> n >> m_eq >> m_ub) || tag != "lp") {
      throw Error(ErrorCode::kSchemaError, "LP text must start with 'lp <n> <m_eq> <m_ub>'");
    }
  }
  lp.a_eq = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m_eq), static_cast<Eigen::Index>(n));
  lp.a_ub = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m_ub), static_cast<Eigen::Index>(n));
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    std::string tok;
    if (tag == "obj") {
      ls >> tok;
      lp.objective_offset = parse_double(tok);
      while (ls >> tok) lp.objective.push_back(parse_double(tok));
    } else if (tag == "eq" || tag == "le") {
      const bool eq = tag == "eq";
      std::string name;
      ls >> name >> tok;
      const double rhs = parse_double(tok);
      auto& names = eq ? lp.eq_names : lp.ub_names;
      auto& b = eq ? lp.b_eq : lp.b_ub;
      Eigen::MatrixXd& a = eq ? lp.a_eq : lp.a_ub;
      const auto row = static_cast<Eigen::Index>(b.size());
      if (row >= a.rows()) throw Error(ErrorCode::kSchemaError, "more rows than declared");
      names.push_back(name);
      b.push_back(rhs);
      while (ls >> tok) {
        const auto colon = tok.find(':');
        if (colon == std::string::npos) throw Error(ErrorCode::kSchemaError, "bad entry '" + tok + "'");
        const auto j = static_cast<Eigen::Index>(std::stoul(tok.substr(0, colon)));
        if (j >= a.cols()) throw Error(ErrorCode::kSchemaError, "column out of range");
        a(row, j) = parse_double(tok.substr(colon + 1));
      }
    } else if (tag == "var") {
      std::string name;
      std::string lo;
      std::string hi;
      ls >> name >> lo >> hi;
      lp.var_names.push_back(name);
      lp.lower.push_back(parse_double(lo));
      lp.upper.push_back(parse_double(hi));
    } else {
      throw Error(ErrorCode::kSchemaError, "unknown LP text record '" + tag + "'");
    }
  }
  if (lp.objective.size() != n || lp.b_eq.size() != m_eq || lp.b_ub.size() != m_ub || lp.lower.size() != n) {
    throw Error(ErrorCode::kSchemaError, "LP text counts do not match header");
  }
  lp.validate();
  return lp;
}

}  // namespace resd::lp
