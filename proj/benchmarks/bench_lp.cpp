#include <benchmark/benchmark.h>

#include "resd/lp/milp.hpp"
#include "resd/lp/simplex.hpp"
#include "resd/models/lapalma.hpp"
#include "resd/sip/lbp.hpp"
#include "resd/timeseries/synth.hpp"
#include "support/random_problems.hpp"

using namespace resd;

static void BM_RandomLp(benchmark::State& state) {
  std::vector<lp::LinearProgram> lps;
  for (std::uint64_t s = 1; s <= 64; ++s) lps.push_back(testing::random_lp(s));
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(lp::solve_lp(lps[i++ % lps.size()]));
  }
}
BENCHMARK(BM_RandomLp);

static void BM_RandomBinaryMilp(benchmark::State& state) {
  std::vector<lp::MixedIntegerLinearProgram> milps;
  for (std::uint64_t s = 1; s <= 32; ++s) milps.push_back(testing::random_binary_milp(s));
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(lp::solve_milp(milps[i++ % milps.size()]));
  }
}
BENCHMARK(BM_RandomBinaryMilp);

// Scenario design LP of the synthetic instance at `steps` per day.
static void BM_LaPalmaScenarioLp(benchmark::State& state) {
  const int steps = static_cast<int>(state.range(0));
  const ts::PreprocessBundle b = ts::preprocess(ts::synth_generate(7, 100, steps), 5, 3, 42);
  const lp::LinearProgram lp = sip::build_lbp(models::build_lapalma(b).problem, {}).lp;
  for (auto _ : state) {
    benchmark::DoNotOptimize(lp::solve_lp(lp));
  }
  state.counters["vars"] = static_cast<double>(lp.num_vars());
}
BENCHMARK(BM_LaPalmaScenarioLp)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);
