// Serial reference vs OpenMP kernels: sweep evaluation and the oracle's
// measurement-angle scan.

#include <benchmark/benchmark.h>

#include "centralspin/oracle.hpp"
#include "centralspin/sweep.hpp"
#include "centralspin/verify.hpp"

namespace {

using namespace centralspin;

SweepGrid bench_grid(std::size_t points) {
  SweepGrid grid;
  grid.variable = SweepVariable::Time;
  grid.start = 0.0;
  grid.stop = 50.0;
  grid.steps = points;
  grid.sequence = SequenceKind::Echo;
  grid.bath = EqualCoupling{10, 1.0, 0.5};
  return grid;
}

void BM_TimeSweep(benchmark::State& state, ExecutionPolicy policy) {
  const SweepGrid grid = bench_grid(std::size_t(state.range(0)));
  const ExperimentConfig cfg{0.01};
  for (auto _ : state) {
    SweepResult result = run_time_sweep(grid, cfg, policy);
    benchmark::DoNotOptimize(result.records.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_DiscordScan(benchmark::State& state, ExecutionPolicy policy) {
  const auto cases = verify::draw_cases(42, int(state.range(0)), 1);
  for (auto _ : state) {
    auto d = oracle::discord_exact(cases[0].bath, cases[0].t, SequenceKind::Echo, 0.01, 8,
                                   policy);
    benchmark::DoNotOptimize(d.d_bits);
  }
}

}  // namespace

BENCHMARK_CAPTURE(BM_TimeSweep, serial, ExecutionPolicy::Serial)->Arg(20000);
BENCHMARK_CAPTURE(BM_TimeSweep, openmp, ExecutionPolicy::Parallel)->Arg(20000);
BENCHMARK_CAPTURE(BM_DiscordScan, serial, ExecutionPolicy::Serial)->Arg(4)->Arg(6);
BENCHMARK_CAPTURE(BM_DiscordScan, openmp, ExecutionPolicy::Parallel)->Arg(4)->Arg(6);

BENCHMARK_MAIN();
