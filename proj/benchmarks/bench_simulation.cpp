#include <benchmark/benchmark.h>

#include <cmath>

#include "curenet/extinction.hpp"
#include "curenet/generators.hpp"
#include "curenet/policies.hpp"

using namespace curenet;

static void BM_SisSteps(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  WeightedGraph g = erdos_renyi(n, 6.0 / static_cast<double>(n), 1);
  SisState s(g, Bag::all(n), 1);
  std::vector<CureRate> cures;
  for (auto _ : state) {
    cures.clear();
    for (NodeId v = 0; v < n && cures.size() < 4; ++v) {
      if (s.is_infected(v)) cures.push_back({v, 4.0});
    }
    if (s.infected_count() == 0 || (cures.empty() && s.infection_rate() == 0)) {
      state.PauseTiming();
      s = SisState(g, Bag::all(n), 1);
      state.ResumeTiming();
      continue;
    }
    benchmark::DoNotOptimize(s.step(cures));
  }
}
BENCHMARK(BM_SisSteps)->Arg(100)->Arg(1000);

static void BM_CurePolicyPath(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  WeightedGraph g = path_graph(n);
  const double l = policy_log2(n);
  PolicyConfig cfg;
  cfg.r = Rational(static_cast<long>(std::ceil(6 * l * l)));
  cfg.record_events = false;
  std::uint64_t seed = 0;
  for (auto _ : state) {
    cfg.seed = seed++;
    benchmark::DoNotOptimize(run_cure_policy(g, Bag::all(n), cfg).extinction_time);
  }
}
BENCHMARK(BM_CurePolicyPath)->Arg(16)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

static void BM_ReplicaThreads(benchmark::State& state) {
  WeightedGraph g = path_graph(32);
  PolicyConfig cfg;
  cfg.r = 150;
  cfg.record_events = false;
  const auto threads = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(estimate_extinction(g, Bag::all(32), cfg, 64, std::nullopt, threads).mean);
  }
}
BENCHMARK(BM_ReplicaThreads)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
