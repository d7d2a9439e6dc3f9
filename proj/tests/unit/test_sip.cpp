#include <doctest.h>

#include <cmath>

#include "resd/errors.hpp"
#include "resd/lp/milp.hpp"
#include "resd/models/milp_example.hpp"
#include "resd/sip/esip.hpp"
#include "resd/sip/lbp.hpp"
#include "resd/sip/lower_level.hpp"
#include "resd/sip/oracles.hpp"

using namespace resd;

namespace {

// min x s.t. for every demand y some supply s <= x leaves e = y - s <= 0.
sip::EsipProblem supply_toy(std::vector<std::vector<double>> demands, double x_upper = lp::kInf) {
  sip::EsipProblem p;
  p.name = "toy";
  p.base.add_var("x", 0.0, x_upper, 1.0);
  p.num_design = 1;
  p.num_y = 1;
  p.op.vars = {{"s", 0.0, lp::kInf}, {"e", -lp::kInf, lp::kInf}};
  p.op.epigraph = 1;
  p.op.value.add_z(1, 1.0);
  p.op.rows.push_back({sip::Poly{}.add_y(0, 1.0).add_z(0, -1.0).add_z(1, -1.0), false, sip::RowRole::kGap, "gap"});
  p.op.rows.push_back({sip::Poly{}.add_z(0, 1.0).add_x(0, -1.0), false, sip::RowRole::kPhysics, "cap"});
  p.uncertainty = sip::FiniteSet{std::move(demands)};
  return p;
}

sip::ToleranceSettings quiet_tol() {
  sip::ToleranceSettings t;
  t.record_timing = false;
  return t;
}

}  // namespace

TEST_CASE("milp example converges to the robust optimum") {
  const sip::EsipProblem p = models::build_milp_example();
  const sip::DiscretizationOracle oracle;
  const sip::SolveResult r = sip::solve_esip(p, oracle, quiet_tol());
  REQUIRE(r.design.status == sip::SolveStatus::kFeasible);
  CHECK(r.design.objective >= 116.0);
  CHECK(r.design.objective <= 116.7);
  CHECK(std::abs(r.design.x[0] - 50.0 / 3.0) < 0.5);
  CHECK(std::abs(r.design.x[1] - 250.0 / 3.0) < 0.5);
  CHECK(r.design.maxmin_value <= 5e-2);
  CHECK(r.log.records.size() == static_cast<std::size_t>(r.design.iterations));
  for (std::size_t i = 1; i < r.log.records.size(); ++i) {
    CHECK(r.log.records[i].lower_bound >= r.log.records[i - 1].lower_bound);
  }
}

TEST_CASE("solve log is reproducible without timing") {
  const sip::EsipProblem p = models::build_milp_example();
  const sip::DiscretizationOracle oracle;
  const std::string a = sip::solve_esip(p, oracle, quiet_tol()).log.to_jsonl();
  const std::string b = sip::solve_esip(p, oracle, quiet_tol()).log.to_jsonl();
  CHECK(a == b);
  CHECK(a.find("\"elapsed_s\":0.0") != std::string::npos);
}

TEST_CASE("lower bounding problem on the milp example") {
  const sip::EsipProblem p = models::build_milp_example();
  SUBCASE("empty discretization is the deterministic problem") {
    const lp::MilpSolution s = lp::solve_milp(sip::build_lbp(p, {}));
    REQUIRE(s.optimal());
    CHECK(s.objective == doctest::Approx(0.0));
  }
  SUBCASE("full-load vertex only gives (0, 100)") {
    sip::DiscretizationSet d;
    d.add({{100.0, 1.0}, 0.0, -1, true});
    const lp::MilpSolution s = lp::solve_milp(sip::build_lbp(p, d));
    REQUIRE(s.optimal());
    CHECK(s.primal[0] == doctest::Approx(0.0).epsilon(1e-6));
    CHECK(s.primal[1] == doctest::Approx(100.0));
    d.add({{15.0, 0.0}, 0.0, -1, true});
    const lp::MilpSolution s2 = lp::solve_milp(sip::build_lbp(p, d));
    REQUIRE(s2.optimal());
    CHECK(s2.primal[0] >= 15.0 - 1e-6);
  }
  SUBCASE("non-realized entries are relaxed by the disjunction") {
    sip::DiscretizationSet d;
    d.add({{15.0, 0.0}, 0.0, -1, false});
    const lp::MilpSolution s = lp::solve_milp(sip::build_lbp(p, d));
    REQUIRE(s.optimal());
    CHECK(s.objective <= 30.0 + 1e-6);
  }
}

TEST_CASE("vertex-only design fails the operational check") {
  const sip::EsipProblem p = models::build_milp_example();
  const sip::SolveResult r =
      sip::feasibility_timestep_heuristic(p, {{0.0, 0.0}, {0.0, 1.0}, {100.0, 1.0}}, quiet_tol());
  REQUIRE(r.design.status == sip::SolveStatus::kFeasible);
  CHECK(r.design.x[0] == doctest::Approx(0.0).epsilon(1e-6));
  CHECK(r.design.x[1] == doctest::Approx(100.0));
  const sip::GapEvaluation g = sip::evaluate_gap(p, r.design.x, {15.0, 0.0});
  CHECK(g.llp_value == doctest::Approx(15.0));
  CHECK(g.coupling > 0.0);
}

TEST_CASE("maxmin discretization oracle") {
  const sip::EsipProblem p = models::build_milp_example();
  const sip::ToleranceSettings tol = quiet_tol();
  SUBCASE("(0, 100) is not robust below the part load") {
    const sip::OracleResult r = sip::maxmin_discretization(p, {0.0, 100.0}, tol);
    CHECK(r.value > tol.feas_tol);
    CHECK(r.y[1] == 0.0);
    CHECK(r.y[0] > 0.0);
    CHECK(r.y[0] <= 20.0 + 1e-6);
  }
  SUBCASE("analytic optimum is robust") {
    const sip::OracleResult r = sip::maxmin_discretization(p, {50.0 / 3.0, 250.0 / 3.0}, tol);
    CHECK(r.value <= 1e-6);
  }
  SUBCASE("oversized design") {
    const sip::OracleResult r = sip::maxmin_discretization(p, {100.0, 100.0}, tol);
    CHECK(r.value <= 0.0);
    CHECK(r.mlp_solves <= 2);
  }
}

TEST_CASE("discretization oracle agrees with a fine grid") {
  const sip::EsipProblem p = models::build_milp_example();
  const sip::ToleranceSettings tol = quiet_tol();
  const std::vector<std::vector<double>> designs{{0.0, 100.0}, {10.0, 40.0}, {30.0, 70.0}, {5.0, 5.0}, {60.0, 20.0}};
  for (const auto& x : designs) {
    CAPTURE(x[0]);
    CAPTURE(x[1]);
    double grid = -lp::kInf;
    for (int b = 0; b <= 1; ++b) {
      for (int i = 0; i <= 200; ++i) {
        grid = std::max(grid, sip::evaluate_gap(p, x, {0.5 * i, static_cast<double>(b)}).value);
      }
    }
    const sip::OracleResult r = sip::maxmin_discretization(p, x, tol);
    CHECK(r.value >= grid - tol.oracle_abs - 1e-9);
    CHECK(r.value <= grid + 0.5 + tol.oracle_abs);
    CHECK(sip::evaluate_gap(p, x, r.y).value == doctest::Approx(r.value).epsilon(1e-9));
  }
}

TEST_CASE("finite-set oracle on the supply toy") {
  const sip::EsipProblem p = supply_toy({{20.0}, {80.0}});
  const sip::ToleranceSettings tol = quiet_tol();
  const sip::OracleResult r = sip::maxmin_finite(p, {{20.0}, {80.0}}, {50.0}, tol);
  CHECK(r.y[0] == 80.0);
  CHECK(r.value == doctest::Approx(30.0));
  CHECK(r.source == 1);
  CHECK(sip::maxmin_finite(p, {{20.0}}, {50.0}, tol).value == doctest::Approx(-30.0));
  CHECK(sip::maxmin_finite(p, {{20.0}, {80.0}}, {1e6}, tol).value < 0.0);
}

TEST_CASE("solve_esip on the supply toy") {
  const sip::EsipProblem p = supply_toy({{20.0}, {80.0}, {55.0}});
  const sip::FiniteSetOracle oracle({{20.0}, {80.0}, {55.0}});
  const sip::ToleranceSettings tol = quiet_tol();
  const sip::SolveResult r = sip::solve_esip(p, oracle, tol);
  REQUIRE(r.design.status == sip::SolveStatus::kFeasible);
  CHECK(r.design.x[0] == doctest::Approx(80.0));

  SUBCASE("worst case already in the discretization") {
    sip::DiscretizationSet d;
    d.add({{80.0}, 30.0, 1});
    const sip::SolveResult r1 = sip::solve_esip(p, oracle, tol, d);
    CHECK(r1.design.iterations == 1);
    CHECK(r1.design.x[0] == doctest::Approx(80.0));
  }
  SUBCASE("capacity limit empties the design space") {
    const sip::EsipProblem small = supply_toy({{80.0}}, 10.0);
    const sip::FiniteSetOracle o(std::vector<std::vector<double>>{{80.0}});
    try {
      sip::solve_esip(small, o, tol);
      FAIL("expected an exception");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kInfeasibleDesignSpace);
    }
  }
  SUBCASE("iteration limit is a status") {
    sip::ToleranceSettings t = tol;
    t.max_iterations = 1;
    CHECK(sip::solve_esip(p, oracle, t).design.status == sip::SolveStatus::kIterationLimit);
  }
}

TEST_CASE("heuristic adds nothing for an oversupplied design") {
  sip::EsipProblem p = supply_toy({{20.0}});
  p.base = lp::ModelBuilder{};
  p.base.add_var("x", 100.0, 200.0, 1.0);
  const sip::SolveResult r = sip::feasibility_timestep_heuristic(p, std::vector<std::vector<double>>{{20.0}, {80.0}}, quiet_tol());
  CHECK(r.design.status == sip::SolveStatus::kFeasible);
  CHECK(r.design.iterations == 1);
  CHECK(r.design.disc.size() == 0);
}

TEST_CASE("operational gaps are independent of the thread count") {
  const sip::EsipProblem p = supply_toy({{0.0}});
  std::vector<std::vector<double>> pts;
  for (int i = 0; i < 17; ++i) pts.push_back({5.0 * i});
  sip::ToleranceSettings t1 = quiet_tol();
  sip::ToleranceSettings t4 = t1;
  t4.threads = 4;
  const sip::SupplyGapReport a = sip::operational_gaps(p, {40.0}, pts, t1);
  const sip::SupplyGapReport b = sip::operational_gaps(p, {40.0}, pts, t4);
  CHECK(a.gaps == b.gaps);
  CHECK(a.worst_day == 16);
  CHECK(a.max_gap == doctest::Approx(40.0));
}

TEST_CASE("discretization set rejects duplicates") {
  sip::DiscretizationSet d;
  CHECK(d.add({{1.0, 2.0}}));
  CHECK_FALSE(d.add({{1.0, 2.0 + 1e-12}}));
  CHECK(d.add({{1.0, 2.1}}));
  CHECK(d.size() == 2);
}

TEST_CASE("input validation") {
  sip::ToleranceSettings t;
  t.feas_tol = 0.0;
  CHECK_THROWS_AS(t.validate(), Error);
  sip::ToleranceSettings t2;
  t2.oracle_abs = 0.1;
  CHECK_THROWS_AS(t2.validate(), Error);

  sip::EsipProblem p = supply_toy({{1.0}});
  p.op.vars[0].integer = true;
  try {
    sip::evaluate_gap(p, {1.0}, {1.0});
    FAIL("expected an exception");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNonlinearLowerLevel);
  }

  const sip::EsipProblem q = supply_toy({{1.0}});
  CHECK_THROWS_AS(sip::operational_gaps(q, {1.0}, {{1.0, 2.0}}, {}), Error);
}
