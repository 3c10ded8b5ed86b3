#include <benchmark/benchmark.h>

#include "qgp/sweep.hpp"

namespace {

qgp::SweepConfig config(qgp::SweepMode mode, long n) {
  qgp::SweepConfig cfg;
  cfg.mode = mode;
  cfg.n_delta = n;
  cfg.n_t = n;
  cfg.base.n_step = 2000;
  cfg.base.tau = 20.0;
  return cfg;
}

void BM_SyncNumericSerial(benchmark::State& state) {
  const auto cfg = config(qgp::SweepMode::kSyncNumeric, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(qgp::run_sweep_serial(cfg));
  state.SetItemsProcessed(state.iterations() * cfg.n_delta * cfg.n_t);
}

void BM_SyncNumericParallel(benchmark::State& state) {
  const auto cfg = config(qgp::SweepMode::kSyncNumeric, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(qgp::run_sweep(cfg));
  state.SetItemsProcessed(state.iterations() * cfg.n_delta * cfg.n_t);
}

void BM_GpNumericSerial(benchmark::State& state) {
  const auto cfg = config(qgp::SweepMode::kGpNumeric, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(qgp::run_sweep_serial(cfg));
  state.SetItemsProcessed(state.iterations() * cfg.n_delta * cfg.n_t);
}

void BM_GpNumericParallel(benchmark::State& state) {
  const auto cfg = config(qgp::SweepMode::kGpNumeric, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(qgp::run_sweep(cfg));
  state.SetItemsProcessed(state.iterations() * cfg.n_delta * cfg.n_t);
}

}  // namespace

BENCHMARK(BM_SyncNumericSerial)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SyncNumericParallel)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GpNumericSerial)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GpNumericParallel)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
