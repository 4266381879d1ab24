// Serial reference vs OpenMP path for the three parallel kernels: optimizer
// restarts, sweep rows and verify trials.
#include <benchmark/benchmark.h>

#include "cli/cli.hpp"
#include "qent/capacity.hpp"
#include "qent/parallel.hpp"

using namespace qent;

namespace {

Execution mode(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::Serial : Execution::Parallel;
}

void label(benchmark::State& state) {
  state.SetLabel(state.range(0) == 0 ? "serial" : "parallel x" + std::to_string(available_threads()));
}

void BM_CapacityRestarts(benchmark::State& state) {
  const KrausChannel ch = amplitude_damping_channel(0.3);
  OptimizerConfig cfg;
  cfg.restarts = 8;
  cfg.execution = mode(state);
  for (auto _ : state) benchmark::DoNotOptimize(capacity(ch, InfoKind::D, cfg).value);
  label(state);
}

void BM_InfoDRestarts(benchmark::State& state) {
  const KrausChannel ch = random_channel(3, 3, 2, 5);
  const DensityOperator rho = random_density(3, 3, 7);
  OptimizerConfig cfg;
  cfg.restarts = 8;
  cfg.max_iters = 100;
  cfg.execution = mode(state);
  for (auto _ : state) benchmark::DoNotOptimize(info_d(rho, ch, cfg).value);
  label(state);
}

void BM_SweepRows(benchmark::State& state) {
  const auto grid = cli::sweep_grid(0.0, 1.0, 0.125);
  const DensityOperator rho = random_density(2, 2, 3);
  OptimizerConfig cfg;
  cfg.execution = mode(state);
  for (auto _ : state) benchmark::DoNotOptimize(cli::compute_sweep("amplitude_damping", grid, rho, cfg).size());
  label(state);
}

void BM_VerifyTrials(benchmark::State& state) {
  cli::VerifyOptions opts;
  opts.dims = {2, 3};
  opts.trials = 20;
  opts.execution = mode(state);
  for (auto _ : state) benchmark::DoNotOptimize(cli::run_verify(opts).all_pass());
  label(state);
}

}  // namespace

BENCHMARK(BM_CapacityRestarts)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_InfoDRestarts)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepRows)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_VerifyTrials)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
