#include <doctest.h>

#include <random>

#include "curenet/balanced_cut.hpp"
#include "curenet/errors.hpp"
#include "curenet/generators.hpp"
#include "support/oracles.hpp"

using namespace curenet;

namespace {

void check_partition(const WeightedGraph& g, const Bag& bag, const BalancedCutResult& r) {
  CHECK(r.side_one.unite(r.side_two) == bag);
  CHECK(r.side_one.minus(r.side_two) == r.side_one);
  CHECK(std::min(r.side_one.size(), r.side_two.size()) >= bag.size() / 3);
  CHECK(std::min(r.side_one.size(), r.side_two.size()) >= min_balanced_side(bag.size()));
  CHECK(r.side_one.contains(bag[0]));
  CHECK(r.cut_value == cut_within(g, r.side_one, bag));
}

// Smallest cut over every split with both sides of at least ceil(k/3).
Rational best_balanced(const WeightedGraph& g, const Bag& bag) {
  const auto& m = bag.members();
  std::optional<Rational> best;
  for (std::uint32_t mask = 0; mask < (1U << m.size()); ++mask) {
    std::size_t ones = static_cast<std::size_t>(__builtin_popcount(mask));
    if (std::min(ones, m.size() - ones) < min_balanced_side(m.size())) continue;
    std::vector<char> in(g.node_count(), 0);
    for (std::size_t i = 0; i < m.size(); ++i) in[m[i]] = (mask >> i) & 1U;
    Rational c = 0;
    for (const auto& e : g.edges()) {
      if (bag.contains(e.u) && bag.contains(e.v) && in[e.u] != in[e.v]) c += e.w;
    }
    if (!best || c < *best) best = c;
  }
  return *best;
}

}  // namespace

TEST_CASE("balanced cut examples") {
  WeightedGraph two(4);
  two.add_edge(0, 1, 1);
  two.add_edge(2, 3, 1);
  auto r = balanced_cut(two, Bag::all(4), CutStrategy::Exact);
  CHECK(r.cut_value == 0);
  CHECK(r.side_one == Bag{0, 1});
  check_partition(two, Bag::all(4), r);

  WeightedGraph p3 = path_graph(3);
  CHECK(balanced_cut(p3, Bag::all(3), CutStrategy::Exact).cut_value == 1);

  auto k4 = balanced_cut(complete_graph(4), Bag::all(4), CutStrategy::Exact);
  CHECK(k4.cut_value == 4);
  CHECK(k4.side_one.size() == 2);
  CHECK(k4.side_one == Bag{0, 1});  // lexicographically smallest side holding node 0
}

TEST_CASE("balanced cut errors") {
  WeightedGraph g = path_graph(30);
  CHECK_THROWS_AS(balanced_cut(g, Bag{3}, CutStrategy::Exact), DomainError);
  CHECK_THROWS_AS(balanced_cut(g, Bag{}, CutStrategy::SpectralRefined), DomainError);
  CHECK_THROWS_AS(balanced_cut(g, Bag::all(30), CutStrategy::Exact), CapacityError);
  CHECK(balanced_cut(g, Bag::all(30), CutStrategy::Auto).strategy_used == CutStrategy::SpectralRefined);
  CHECK(balanced_cut(g, Bag::all(12), CutStrategy::Auto).strategy_used == CutStrategy::Exact);
  CHECK_THROWS_AS(parse_cut_strategy("flow"), DomainError);
  CHECK(parse_cut_strategy("spectral") == CutStrategy::SpectralRefined);
}

TEST_CASE("both strategies return valid partitions; spectral never beats exact") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 120; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial % 11);
    WeightedGraph g = oracle::random_connected(rng, n, 0.3, oracle::quarter_weights());
    Bag all = Bag::all(n);
    auto exact = balanced_cut(g, all, CutStrategy::Exact);
    auto spectral = balanced_cut(g, all, CutStrategy::SpectralRefined);
    check_partition(g, all, exact);
    check_partition(g, all, spectral);
    CHECK(exact.cut_value == best_balanced(g, all));
    CHECK(spectral.cut_value >= exact.cut_value);
  }
}

TEST_CASE("balanced cut on a sub-bag ignores edges leaving it") {
  WeightedGraph g = complete_graph(6);
  Bag a{1, 3, 5};
  auto r = balanced_cut(g, a, CutStrategy::Exact);
  check_partition(g, a, r);
  CHECK(r.cut_value == 2);
}

TEST_CASE("spectral strategy is deterministic and scales past the exhaustive limit") {
  WeightedGraph g = erdos_renyi(60, 0.1, 9);
  Bag all = Bag::all(60);
  auto a = balanced_cut(g, all, CutStrategy::SpectralRefined);
  auto b = balanced_cut(g, all, CutStrategy::SpectralRefined);
  CHECK(a.side_one == b.side_one);
  CHECK(a.cut_value == b.cut_value);
  check_partition(g, all, a);
  auto f = fiedler_vector(path_graph(10), Bag::all(10));
  REQUIRE(f.size() == 10);
  // The path's Fiedler vector is monotone along the path.
  bool increasing = f.front() < f.back();
  for (std::size_t i = 0; i + 1 < f.size(); ++i) CHECK((f[i] < f[i + 1]) == increasing);
}

TEST_CASE("spectral strategy finds unique balanced minima on small bags") {
  // Regression floor, not a guarantee: the heuristic misses a few local minima
  // (about 1.7% of this corpus when it was last measured).
  std::mt19937_64 rng(1);
  std::size_t unique = 0, matched = 0;
  for (int trial = 0; trial < 600; ++trial) {
    const std::size_t n = 4 + rng() % 9;
    const double density = 0.2 + 0.5 * static_cast<double>(rng() % 100) / 100.0;
    WeightedGraph g = oracle::random_connected(rng, n, density, oracle::quarter_weights());
    Bag all = Bag::all(n);
    const std::size_t lo = min_balanced_side(n);
    std::optional<Rational> best;
    int count = 0;
    // Node 0 fixed on side one, so each split is seen once.
    for (std::uint32_t mask = 1; mask < (1U << n); mask += 2) {
      const auto ones = static_cast<std::size_t>(__builtin_popcount(mask));
      if (ones < lo || n - ones < lo) continue;
      std::vector<char> in(n);
      for (std::size_t i = 0; i < n; ++i) in[i] = static_cast<char>((mask >> i) & 1U);
      Rational c = oracle::naive_cut(g, in);
      if (!best || c < *best) {
        best = c;
        count = 1;
      } else if (c == *best) {
        ++count;
      }
    }
    if (count != 1) continue;
    ++unique;
    matched += balanced_cut(g, all, CutStrategy::SpectralRefined).cut_value == *best;
  }
  MESSAGE("spectral matched " << matched << " of " << unique << " unique minima");
  CHECK(unique > 300);
  CHECK(static_cast<double>(matched) >= 0.97 * static_cast<double>(unique));
}
