#include <doctest.h>

#include <random>

#include "curenet/errors.hpp"
#include "curenet/generators.hpp"
#include "curenet/graph.hpp"
#include "support/oracles.hpp"

using namespace curenet;

TEST_CASE("cut size on a three-node path") {
  WeightedGraph g = path_graph(3);
  CHECK(cut_size(g, Bag{1}) == 2);
  CHECK(cut_size(g, Bag{}) == 0);
  CHECK(cut_size(g, Bag{0}) == 1);
  CHECK_THROWS_AS(cut_size(g, Bag{3}), DomainError);
}

TEST_CASE("cut size is symmetric under complement") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    WeightedGraph g = oracle::random_connected(rng, 2 + trial % 8, 0.4, oracle::quarter_weights());
    std::vector<char> in(g.node_count());
    for (auto& c : in) c = static_cast<char>(rng() & 1);
    Bag a = Bag::from_mask(in);
    CHECK(cut_size(g, a) == cut_size(g, a.complement(g.node_count())));
    CHECK(cut_size(g, a) == oracle::naive_cut(g, in));
  }
}

TEST_CASE("graph construction rejects malformed edges") {
  WeightedGraph g(3);
  g.add_edge(0, 1, Rational(1, 2));
  CHECK_THROWS_AS(g.add_edge(1, 0, 1), DomainError);
  CHECK_THROWS_AS(g.add_edge(2, 2, 1), DomainError);
  CHECK_THROWS_AS(g.add_edge(0, 3, 1), DomainError);
  CHECK_THROWS_AS(g.add_edge(0, 2, Rational(3, 2)), DomainError);
  CHECK_THROWS_AS(g.add_edge(0, 2, -1), DomainError);
  CHECK(g.edge_count() == 1);
  CHECK(g.degree(1) == Rational(1, 2));
}

TEST_CASE("subgraph keeps weights and relabels densely") {
  WeightedGraph tri(3);
  tri.add_edge(0, 1, Rational(1, 4));
  tri.add_edge(1, 2, Rational(1, 2));
  tri.add_edge(0, 2, 1);
  auto two = subgraph(tri, Bag{0, 2});
  REQUIRE(two.graph.node_count() == 2);
  REQUIRE(two.graph.edge_count() == 1);
  CHECK(two.graph.edge(0).w == 1);
  CHECK(two.to_parent == std::vector<NodeId>{0, 2});
  CHECK(subgraph(tri, Bag::all(3)).graph == tri);
  auto one = subgraph(tri, Bag{1});
  CHECK(one.graph.node_count() == 1);
  CHECK(one.graph.edge_count() == 0);
}

TEST_CASE("max degree sums incident weights") {
  WeightedGraph g(3);
  g.add_edge(0, 1, Rational(1, 4));
  g.add_edge(0, 2, Rational(3, 4));
  g.add_edge(1, 2, Rational(1, 2));
  CHECK(max_degree(g) == Rational(5, 4));
  CHECK(max_degree(WeightedGraph(4)) == 0);
}

TEST_CASE("crusade width examples") {
  WeightedGraph p3 = path_graph(3);
  Crusade p(Bag::all(3), {0, 1, 2});
  auto profile = crusade_cut_profile(p3, p);
  CHECK(profile == std::vector<Rational>{0, 1, 1, 0});
  CHECK(crusade_width(p3, p) == 1);
  CHECK(crusade_width(p3, Crusade(Bag{}, {})) == 0);

  WeightedGraph star = star_graph(4);  // centre 0
  CHECK(crusade_width(star, Crusade(Bag::all(4), {1, 2, 0, 3})) == 2);
}

TEST_CASE("crusade structure is validated") {
  CHECK_THROWS_AS(Crusade(Bag{0, 1}, {2}), StructureError);
  CHECK_THROWS_AS(Crusade(Bag{0, 1}, {0, 0}), StructureError);
  CHECK_THROWS_AS(Crusade::from_bags({Bag{0, 1, 2}, Bag{0}}), StructureError);
  CHECK_THROWS_AS(Crusade::from_bags({Bag{0, 1}, Bag{0, 2}}), StructureError);
  Crusade c = Crusade::from_bags({Bag{0, 1, 2}, Bag{0, 2}, Bag{2}});
  CHECK(c.removal_order() == std::vector<NodeId>{1, 0});
  CHECK(c.terminal() == Bag{2});
  CHECK_FALSE(c.reaches_empty());
  CHECK(c.bags().size() == 3);
}

TEST_CASE("bag set operations") {
  Bag a{3, 1, 1, 2};
  CHECK(a.members() == std::vector<NodeId>{1, 2, 3});
  CHECK(a.minus(Bag{2}) == Bag{1, 3});
  CHECK(a.unite(Bag{0}) == Bag{0, 1, 2, 3});
  CHECK(a.complement(5) == Bag{0, 4});
  CHECK(Bag{1, 3}.is_subset_of(a));
  CHECK_FALSE(Bag{0}.is_subset_of(a));
}

TEST_CASE("scaled weights reproduce the rational weights") {
  WeightedGraph g(3);
  g.add_edge(0, 1, Rational(1, 3));
  g.add_edge(1, 2, Rational(1, 4));
  auto s = scale_weights(g);
  REQUIRE(s);
  CHECK(s->denominator == 12);
  CHECK(s->numerators == std::vector<std::int64_t>{4, 3});
}
