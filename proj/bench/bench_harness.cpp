// Compares the OpenMP seed-parallel harness with the serial reference.

#include <benchmark/benchmark.h>

#include "simove/harness.hpp"

namespace {

simove::ExperimentConfig config(int seeds) {
  simove::ExperimentConfig cfg;
  cfg.game = simove::GameSpec::parse("goofspiel:d=4");
  cfg.policy = simove::PolicyKind::kRegretMatching;
  cfg.gamma = 0.1;
  cfg.iterations = 20000;
  cfg.checkpoints = simove::log_checkpoints(cfg.iterations, 10);
  cfg.seeds.clear();
  for (int s = 0; s < seeds; ++s) cfg.seeds.push_back(static_cast<std::uint64_t>(s));
  return cfg;
}

void BM_Serial(benchmark::State& state) {
  const auto cfg = config(static_cast<int>(state.range(0)));
  simove::ground_truth(cfg.game);  // solve once outside the timed loop
  for (auto _ : state) benchmark::DoNotOptimize(simove::run_experiment_serial(cfg));
  state.SetItemsProcessed(state.iterations() * cfg.iterations * state.range(0));
}

void BM_Parallel(benchmark::State& state) {
  const auto cfg = config(static_cast<int>(state.range(0)));
  simove::ground_truth(cfg.game);
  for (auto _ : state) benchmark::DoNotOptimize(simove::run_experiment(cfg));
  state.SetItemsProcessed(state.iterations() * cfg.iterations * state.range(0));
}

}  // namespace

BENCHMARK(BM_Serial)->Arg(1)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Parallel)->Arg(1)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
