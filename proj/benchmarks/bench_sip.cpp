#include <benchmark/benchmark.h>

#include "resd/models/lapalma.hpp"
#include "resd/models/milp_example.hpp"
#include "resd/sip/esip.hpp"
#include "resd/timeseries/synth.hpp"

using namespace resd;

namespace {

sip::ToleranceSettings tol() {
  sip::ToleranceSettings t;
  t.record_timing = false;
  return t;
}

}  // namespace

static void BM_VertexEnumeration(benchmark::State& state) {
  const int n_dim = static_cast<int>(state.range(0));
  const ts::PreprocessBundle b = ts::preprocess(ts::synth_generate(7, 100, 8), 5, n_dim, 42);
  const models::LaPalmaModel m = models::build_lapalma(b);
  const std::vector<double> x{5e4, 1e4, 1e4, 2e4, 8e4};
  for (auto _ : state) {
    benchmark::DoNotOptimize(sip::maxmin_vertex_enum(m.problem, x, tol()));
  }
  state.counters["generators"] = static_cast<double>(b.generators.points.rows());
}
BENCHMARK(BM_VertexEnumeration)->Arg(1)->Arg(4)->Arg(24)->Unit(benchmark::kMillisecond);

static void BM_MilpExampleSolve(benchmark::State& state) {
  const sip::EsipProblem p = models::build_milp_example();
  const sip::DiscretizationOracle oracle;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sip::solve_esip(p, oracle, tol()));
  }
}
BENCHMARK(BM_MilpExampleSolve)->Unit(benchmark::kMillisecond);

static void BM_LaPalmaRobustSolve(benchmark::State& state) {
  const ts::PreprocessBundle b = ts::preprocess(ts::synth_generate(7, 100, 8), 5, 24, 42);
  const models::LaPalmaModel m = models::build_lapalma(b);
  const sip::VertexEnumerationOracle oracle;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sip::solve_esip(m.problem, oracle, tol()));
  }
}
BENCHMARK(BM_LaPalmaRobustSolve)->Unit(benchmark::kMillisecond);

static void BM_Preprocess(benchmark::State& state) {
  const ts::TimeSeriesDataset ds = ts::synth_generate(7, 365, 8);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ts::preprocess(ds, 5, 6, 42));
  }
}
BENCHMARK(BM_Preprocess)->Unit(benchmark::kMillisecond);
