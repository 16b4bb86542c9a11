#include <benchmark/benchmark.h>

#include "bellbayes/bayes_core.hpp"
#include "bellbayes/lr_adversary.hpp"
#include "bellbayes/scenarios.hpp"
#include "bellbayes/simulator.hpp"

using namespace bellbayes;

static void LogDepressingFactor(benchmark::State& state) {
  const BernoulliHypothesisPair pair = chained_pair(2);
  const TrialTally tally(static_cast<std::uint64_t>(state.range(0)), static_cast<std::uint64_t>(state.range(0) / 7));
  for (auto _ : state) benchmark::DoNotOptimize(log_depressing_factor(pair, tally));
}
BENCHMARK(LogDepressingFactor)->Arg(32)->Arg(1'000'000);

static void BinomialLogLikelihood(benchmark::State& state) {
  const TrialTally tally(1'000'000, 146'447);
  for (auto _ : state) benchmark::DoNotOptimize(binomial_log_likelihood(0.146447, tally));
}
BENCHMARK(BinomialLogLikelihood);

static void HardyBisection(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(hardy_optimize_r(HardyMode::Paper, 1e4));
}
BENCHMARK(HardyBisection);

static void FindOptimalK(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(find_optimal_k(1e4, 2, static_cast<int>(state.range(0))));
}
BENCHMARK(FindOptimalK)->Arg(12)->Arg(1000);

static void MinimaxGhz(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(minimax_lr_ghz(static_cast<int>(state.range(0))));
}
BENCHMARK(MinimaxGhz)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

static void MinimaxChained(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(minimax_lr_chained(2, static_cast<int>(state.range(0))));
}
BENCHMARK(MinimaxChained)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

static void MinimaxHardy(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(minimax_lr_hardy(HardyMode::Paper, static_cast<int>(state.range(0))));
  }
}
BENCHMARK(MinimaxHardy)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

static void SimulateChained(benchmark::State& state) {
  SimulationConfig config;
  config.scenario = ScenarioSpec::chained(2);
  config.replications = 1000;
  config.threads = static_cast<unsigned>(state.range(0));
  const Simulator simulator(config);
  for (auto _ : state) benchmark::DoNotOptimize(simulator.run_replications());
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(config.replications));
}
BENCHMARK(SimulateChained)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
