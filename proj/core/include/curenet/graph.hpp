#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

#include "curenet/rational.hpp"

namespace curenet {

using NodeId = std::uint32_t;

struct Edge {
  NodeId u;
  NodeId v;
  Rational w;
};

/// Undirected contact network with weights in [0, 1]. Node ids are 0..n-1.
/// Each edge is stored once with u < v.
class WeightedGraph {
 public:
  struct Incidence {
    NodeId neighbor;
    std::size_t edge;
  };

  explicit WeightedGraph(std::size_t node_count = 0);
  WeightedGraph(std::size_t node_count, std::vector<Edge> edges);

  /// Throws DomainError on a self loop, duplicate edge, out-of-range id or
  /// weight outside [0, 1].
  std::size_t add_edge(NodeId u, NodeId v, Rational w);

  std::size_t node_count() const noexcept { return adjacency_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const Edge& edge(std::size_t index) const { return edges_.at(index); }
  std::span<const Incidence> neighbors(NodeId node) const;

  /// Sum of incident weights.
  const Rational& degree(NodeId node) const;
  std::optional<std::size_t> find_edge(NodeId u, NodeId v) const;

  /// Same topology, new weights (one per edge, each in [0, w_e]).
  WeightedGraph with_weights(std::span<const Rational> weights) const;

  std::vector<double> weights_as_double() const;
  bool all_unit_weights() const;

  void check_node(NodeId node) const;

  friend bool operator==(const WeightedGraph& a, const WeightedGraph& b);

 private:
  std::vector<Edge> edges_;
  std::vector<std::vector<Incidence>> adjacency_;
  std::vector<Rational> degree_;
};

/// A set of nodes, kept sorted and duplicate-free.
class Bag {
 public:
  Bag() = default;
  explicit Bag(std::vector<NodeId> members);
  Bag(std::initializer_list<NodeId> members);

  static Bag all(std::size_t node_count);
  static Bag from_mask(std::span<const char> mask);

  const std::vector<NodeId>& members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  bool contains(NodeId node) const;

  auto begin() const noexcept { return members_.begin(); }
  auto end() const noexcept { return members_.end(); }
  NodeId operator[](std::size_t i) const { return members_[i]; }

  Bag minus(const Bag& other) const;
  Bag unite(const Bag& other) const;
  Bag complement(std::size_t node_count) const;
  bool is_subset_of(const Bag& other) const;

  /// Dense membership vector of length node_count.
  std::vector<char> mask(std::size_t node_count) const;

  friend bool operator==(const Bag&, const Bag&) = default;
  friend auto operator<=>(const Bag& a, const Bag& b) {
    return a.members_ <=> b.members_;
  }

 private:
  std::vector<NodeId> members_;
};

/// Monotone crusade p_0 ⊃ p_1 ⊃ ... ⊃ p_k, one node removed per step.
/// Stored as the start bag plus the removal order.
class Crusade {
 public:
  Crusade() = default;
  /// Throws StructureError if a removed node is not in `start` or repeats.
  Crusade(Bag start, std::vector<NodeId> removal_order);

  /// Throws StructureError unless each bag drops exactly one node of the
  /// previous one.
  static Crusade from_bags(const std::vector<Bag>& bags);

  const Bag& start() const noexcept { return start_; }
  const std::vector<NodeId>& removal_order() const noexcept { return order_; }
  std::size_t length() const noexcept { return order_.size(); }
  bool reaches_empty() const noexcept { return order_.size() == start_.size(); }

  Bag bag(std::size_t index) const;
  Bag terminal() const { return bag(order_.size()); }
  std::vector<Bag> bags() const;

  friend bool operator==(const Crusade&, const Crusade&) = default;

 private:
  Bag start_;
  std::vector<NodeId> order_;
};

struct Subgraph {
  WeightedGraph graph;
  /// Local id -> id in the parent graph.
  std::vector<NodeId> to_parent;
};

/// Sum of weights of edges with exactly one endpoint in `bag`.
Rational cut_size(const WeightedGraph& g, const Bag& bag);

/// Cut of `side` inside the subgraph induced by `within` (side ⊆ within).
Rational cut_within(const WeightedGraph& g, const Bag& side, const Bag& within);

/// G[a], relabelled densely in ascending parent-id order.
Subgraph subgraph(const WeightedGraph& g, const Bag& bag);

Rational max_degree(const WeightedGraph& g);

/// c(p_i) for every bag of the crusade, i = 0..k.
std::vector<Rational> crusade_cut_profile(const WeightedGraph& g, const Crusade& p);

/// z(p) = max_i c(p_i).
Rational crusade_width(const WeightedGraph& g, const Crusade& p);

/// Integer-scaled view of the edge weights: w_e = numerators[e] / denominator.
/// Absent when the common denominator or the total weight would overflow.
struct ScaledWeights {
  std::int64_t denominator = 1;
  std::vector<std::int64_t> numerators;
};
std::optional<ScaledWeights> scale_weights(const WeightedGraph& g);

}  // namespace curenet
