#pragma once

// Exact value arithmetic for the enumeration oracles: int64 over a common
// denominator when the weights allow it, GMP rationals otherwise.

#include <bit>
#include <cstdint>
#include <vector>

#include "curenet/errors.hpp"
#include "curenet/graph.hpp"

namespace curenet::detail {

struct IntArith {
  using Value = std::int64_t;
  std::vector<std::int64_t> weights;
  std::int64_t denominator = 1;

  Value weight(std::size_t edge) const { return weights[edge]; }
  static Value zero() { return 0; }
  Rational to_rational(Value v) const {
    Rational q{mpz_class(v), mpz_class(denominator)};
    q.canonicalize();
    return q;
  }
};

struct RationalArith {
  using Value = Rational;
  const std::vector<Edge>* edges = nullptr;

  const Value& weight(std::size_t edge) const { return (*edges)[edge].w; }
  static Value zero() { return Rational(0); }
  Rational to_rational(const Value& v) const { return v; }
};

template <class F>
decltype(auto) with_exact_arith(const WeightedGraph& g, F&& f) {
  if (auto scaled = scale_weights(g)) {
    return f(IntArith{std::move(scaled->numerators), scaled->denominator});
  }
  return f(RationalArith{&g.edges()});
}

/// Bag members relabelled 0..k-1 with adjacency restricted to the bag.
struct LocalBag {
  struct Arc {
    unsigned neighbor;
    std::size_t edge;
  };
  std::vector<NodeId> nodes;
  std::vector<std::vector<Arc>> arcs;

  LocalBag(const WeightedGraph& g, const Bag& bag) : nodes(bag.members()), arcs(bag.size()) {
    std::vector<int> local(g.node_count(), -1);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      g.check_node(nodes[i]);
      local[nodes[i]] = static_cast<int>(i);
    }
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      for (const auto& inc : g.neighbors(nodes[i])) {
        if (local[inc.neighbor] >= 0) {
          arcs[i].push_back({static_cast<unsigned>(local[inc.neighbor]), inc.edge});
        }
      }
    }
  }

  std::size_t size() const { return nodes.size(); }
};

inline void check_capacity(std::size_t size, std::size_t limit, const char* what) {
  if (size > limit || size > 30) {
    throw CapacityError(std::string(what) + ": bag of size " + std::to_string(size) +
                        " exceeds the exhaustive limit " + std::to_string(limit));
  }
}

/// Cut value of every subset of the bag (mask over local ids). With
/// `global_degree` the cut is taken in the whole graph, otherwise inside G[bag].
template <class Arith>
std::vector<typename Arith::Value> subset_cuts(const WeightedGraph& g, const LocalBag& local,
                                               const Arith& arith, bool global_degree) {
  using Value = typename Arith::Value;
  const std::size_t k = local.size();
  std::vector<Value> degree(k, Arith::zero());
  for (std::size_t i = 0; i < k; ++i) {
    if (global_degree) {
      for (const auto& inc : g.neighbors(local.nodes[i])) degree[i] += arith.weight(inc.edge);
    } else {
      for (const auto& arc : local.arcs[i]) degree[i] += arith.weight(arc.edge);
    }
  }
  std::vector<Value> cut(std::size_t{1} << k, Arith::zero());
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << k); ++mask) {
    unsigned low = static_cast<unsigned>(std::countr_zero(mask));
    std::uint32_t rest = mask & (mask - 1);
    Value inside = Arith::zero();
    for (const auto& arc : local.arcs[low]) {
      if (rest >> arc.neighbor & 1U) inside += arith.weight(arc.edge);
    }
    cut[mask] = cut[rest] + degree[low] - inside - inside;
  }
  return cut;
}

inline Bag bag_from_mask(const LocalBag& local, std::uint32_t mask) {
  std::vector<NodeId> members;
  for (std::size_t i = 0; i < local.size(); ++i) {
    if (mask >> i & 1U) members.push_back(local.nodes[i]);
  }
  return Bag(std::move(members));
}

}  // namespace curenet::detail
