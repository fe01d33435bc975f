#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string_view>

#include "curenet/graph.hpp"

namespace curenet {

WeightedGraph path_graph(std::size_t n, const Rational& w = 1);
WeightedGraph cycle_graph(std::size_t n, const Rational& w = 1);
/// Node 0 is the centre.
WeightedGraph star_graph(std::size_t n, const Rational& w = 1);
WeightedGraph complete_graph(std::size_t n, const Rational& w = 1);
/// G(n, p) with every pair kept independently; deterministic in `seed`.
WeightedGraph erdos_renyi(std::size_t n, double p, std::uint64_t seed, const Rational& w = 1);

/// "path:N", "cycle:N", "star:N", "complete:N" or "er:N:P:SEED", each with an
/// optional trailing ":W" edge weight. Throws DomainError on bad specs.
WeightedGraph generate_graph(std::string_view spec);

/// Connected graph on n nodes: a random spanning tree plus extra edges kept
/// with probability `density`; weights drawn from `weights`.
WeightedGraph random_connected_graph(std::size_t n, double density,
                                     std::span<const Rational> weights, std::mt19937_64& rng);

/// True when every node is reachable from node 0 (n = 0 counts as connected).
bool is_connected(const WeightedGraph& g);

}  // namespace curenet
