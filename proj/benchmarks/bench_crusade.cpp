#include <benchmark/benchmark.h>

#include "curenet/balanced_cut.hpp"
#include "curenet/crusade.hpp"
#include "curenet/exact.hpp"
#include "curenet/generators.hpp"

using namespace curenet;

static void BM_ImpedanceExact(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  WeightedGraph g = erdos_renyi(n, 0.3, 7, Rational(1, 2));
  Bag all = Bag::all(n);
  for (auto _ : state) benchmark::DoNotOptimize(impedance_exact(g, all).width);
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ImpedanceExact)->DenseRange(8, 18, 2)->Unit(benchmark::kMillisecond);

static void BM_ApprImpeExact(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  WeightedGraph g = erdos_renyi(n, 0.3, 7);
  for (auto _ : state) benchmark::DoNotOptimize(appr_impe(g, Bag::all(n), CutStrategy::Exact));
}
BENCHMARK(BM_ApprImpeExact)->Arg(12)->Arg(16)->Arg(20)->Unit(benchmark::kMillisecond);

static void BM_ApprImpeSpectral(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  WeightedGraph g = erdos_renyi(n, 8.0 / static_cast<double>(n), 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(appr_impe(g, Bag::all(n), CutStrategy::SpectralRefined));
  }
}
BENCHMARK(BM_ApprImpeSpectral)->RangeMultiplier(4)->Range(64, 1024)->Unit(benchmark::kMillisecond);

static void BM_FairApprImpe(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  WeightedGraph g = erdos_renyi(n, 6.0 / static_cast<double>(n), 3);
  std::vector<GroupId> groups(n);
  for (std::size_t v = 0; v < n; ++v) groups[v] = static_cast<GroupId>(v % 3);
  FairnessSpec spec(groups, {n / 8, n / 4, n / 2}, 1);
  for (auto _ : state) benchmark::DoNotOptimize(fair_appr_impe(g, Bag::all(n), spec));
}
BENCHMARK(BM_FairApprImpe)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
