#include <doctest.h>

#include "curenet/errors.hpp"
#include "curenet/generators.hpp"

using namespace curenet;

TEST_CASE("named families") {
  CHECK(path_graph(5).edge_count() == 4);
  CHECK(cycle_graph(5).edge_count() == 5);
  CHECK(star_graph(5).edge_count() == 4);
  CHECK(star_graph(5).degree(0) == 4);
  CHECK(complete_graph(5).edge_count() == 10);
  CHECK(path_graph(3, Rational(1, 2)).edge(0).w == Rational(1, 2));
  CHECK_THROWS_AS(cycle_graph(2), DomainError);
}

TEST_CASE("generator specs") {
  CHECK(generate_graph("star:31") == star_graph(31));
  CHECK(generate_graph("path:4:1/2") == path_graph(4, Rational(1, 2)));
  CHECK(generate_graph("er:30:0.2:7") == erdos_renyi(30, 0.2, 7));
  CHECK(generate_graph("er:30:0.2:7") == generate_graph("er:30:0.2:7"));
  CHECK_FALSE(generate_graph("er:30:0.2:7") == generate_graph("er:30:0.2:8"));
  for (const char* bad : {"", "path", "path:0", "tree:4", "er:4:2:1", "path:4:3", "star:x"}) {
    CHECK_THROWS_AS(generate_graph(bad), DomainError);
  }
}

TEST_CASE("random connected graphs") {
  std::mt19937_64 rng(5);
  const std::vector<Rational> w{Rational(1, 4), 1};
  for (std::size_t n = 1; n <= 30; ++n) {
    WeightedGraph g = random_connected_graph(n, 0.1, w, rng);
    CHECK(g.node_count() == n);
    CHECK(is_connected(g));
  }
  WeightedGraph split(4);
  split.add_edge(0, 1, 1);
  CHECK_FALSE(is_connected(split));
}
