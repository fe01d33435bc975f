#include <benchmark/benchmark.h>

#include "curenet/crusade.hpp"
#include "curenet/generators.hpp"
#include "curenet/netdesign.hpp"

using namespace curenet;

static void BM_WidthLp(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  WeightedGraph g = erdos_renyi(n, 0.3, 5, Rational(1, 2));
  Bag all = Bag::all(n);
  Crusade p = appr_impe(g, all);
  Rational b = crusade_width(g, p) / 2;
  for (auto _ : state) benchmark::DoNotOptimize(solve_width_lp(g, all, p, b).total_cost);
}
BENCHMARK(BM_WidthLp)->Arg(10)->Arg(20)->Arg(30)->Unit(benchmark::kMillisecond);

static void BM_Uwcmp(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  WeightedGraph g = erdos_renyi(n, 6.0 / static_cast<double>(n), 5);
  Bag all = Bag::all(n);
  Crusade p = appr_impe(g, all);
  for (auto _ : state) benchmark::DoNotOptimize(uwcmp_solve(g, all, p, 3).total_cost);
}
BENCHMARK(BM_Uwcmp)->RangeMultiplier(4)->Range(64, 1024)->Unit(benchmark::kMillisecond);

static void BM_MinimaxSdp(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  WeightedGraph g = erdos_renyi(n, 0.4, 9);
  for (auto _ : state) {
    benchmark::DoNotOptimize(minimax_sdp(g, Bag::all(n), Rational(static_cast<long>(n) / 2)));
  }
}
BENCHMARK(BM_MinimaxSdp)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

static void BM_MinimaxExact(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  WeightedGraph g = erdos_renyi(n, 0.4, 9);
  for (auto _ : state) {
    benchmark::DoNotOptimize(minimax_exact(g, Bag::all(n), Rational(static_cast<long>(n) / 2)));
  }
}
BENCHMARK(BM_MinimaxExact)->Arg(6)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
