#include "curenet/graph.hpp"

#include <algorithm>
#include <numeric>

#include "curenet/errors.hpp"

namespace curenet {

WeightedGraph::WeightedGraph(std::size_t node_count)
    : adjacency_(node_count), degree_(node_count, Rational(0)) {}

WeightedGraph::WeightedGraph(std::size_t node_count, std::vector<Edge> edges)
    : WeightedGraph(node_count) {
  for (auto& e : edges) add_edge(e.u, e.v, std::move(e.w));
}

void WeightedGraph::check_node(NodeId node) const {
  if (node >= node_count()) {
    throw DomainError("node id " + std::to_string(node) + " out of range [0, " +
                      std::to_string(node_count()) + ")");
  }
}

std::size_t WeightedGraph::add_edge(NodeId u, NodeId v, Rational w) {
  check_node(u);
  check_node(v);
  if (u == v) throw DomainError("self loop at node " + std::to_string(u));
  if (w < 0 || w > 1) {
    throw DomainError("edge weight " + to_string(w) + " outside [0, 1]");
  }
  if (find_edge(u, v)) {
    throw DomainError("duplicate edge (" + std::to_string(u) + ", " +
                      std::to_string(v) + ")");
  }
  if (u > v) std::swap(u, v);
  std::size_t index = edges_.size();
  degree_[u] += w;
  degree_[v] += w;
  edges_.push_back(Edge{u, v, std::move(w)});
  adjacency_[u].push_back({v, index});
  adjacency_[v].push_back({u, index});
  return index;
}

std::span<const WeightedGraph::Incidence> WeightedGraph::neighbors(NodeId node) const {
  check_node(node);
  return adjacency_[node];
}

const Rational& WeightedGraph::degree(NodeId node) const {
  check_node(node);
  return degree_[node];
}

std::optional<std::size_t> WeightedGraph::find_edge(NodeId u, NodeId v) const {
  if (u >= node_count() || v >= node_count()) return std::nullopt;
  const auto& shorter =
      adjacency_[u].size() <= adjacency_[v].size() ? adjacency_[u] : adjacency_[v];
  NodeId other = adjacency_[u].size() <= adjacency_[v].size() ? v : u;
  for (const auto& inc : shorter) {
    if (inc.neighbor == other) return inc.edge;
  }
  return std::nullopt;
}

WeightedGraph WeightedGraph::with_weights(std::span<const Rational> weights) const {
  if (weights.size() != edges_.size()) {
    throw DomainError("weight vector length does not match edge count");
  }
  WeightedGraph out(node_count());
  out.edges_.reserve(edges_.size());
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    if (weights[e] < 0 || weights[e] > edges_[e].w) {
      throw DomainError("reduced weight outside [0, w] on edge " + std::to_string(e));
    }
    out.add_edge(edges_[e].u, edges_[e].v, weights[e]);
  }
  return out;
}

std::vector<double> WeightedGraph::weights_as_double() const {
  std::vector<double> out;
  out.reserve(edges_.size());
  for (const auto& e : edges_) out.push_back(e.w.get_d());
  return out;
}

bool WeightedGraph::all_unit_weights() const {
  return std::all_of(edges_.begin(), edges_.end(),
                     [](const Edge& e) { return e.w == 1; });
}

bool operator==(const WeightedGraph& a, const WeightedGraph& b) {
  if (a.node_count() != b.node_count() || a.edge_count() != b.edge_count()) {
    return false;
  }
  for (const auto& e : a.edges()) {
    auto other = b.find_edge(e.u, e.v);
    if (!other || b.edge(*other).w != e.w) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

Bag::Bag(std::vector<NodeId> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

Bag::Bag(std::initializer_list<NodeId> members)
    : Bag(std::vector<NodeId>(members)) {}

Bag Bag::all(std::size_t node_count) {
  std::vector<NodeId> members(node_count);
  std::iota(members.begin(), members.end(), NodeId{0});
  return Bag(std::move(members));
}

Bag Bag::from_mask(std::span<const char> mask) {
  std::vector<NodeId> members;
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (mask[i]) members.push_back(static_cast<NodeId>(i));
  }
  Bag bag;
  bag.members_ = std::move(members);
  return bag;
}

bool Bag::contains(NodeId node) const {
  return std::binary_search(members_.begin(), members_.end(), node);
}

Bag Bag::minus(const Bag& other) const {
  std::vector<NodeId> out;
  std::set_difference(members_.begin(), members_.end(), other.members_.begin(),
                      other.members_.end(), std::back_inserter(out));
  Bag bag;
  bag.members_ = std::move(out);
  return bag;
}

Bag Bag::unite(const Bag& other) const {
  std::vector<NodeId> out;
  std::set_union(members_.begin(), members_.end(), other.members_.begin(),
                 other.members_.end(), std::back_inserter(out));
  Bag bag;
  bag.members_ = std::move(out);
  return bag;
}

Bag Bag::complement(std::size_t node_count) const {
  return Bag::all(node_count).minus(*this);
}

bool Bag::is_subset_of(const Bag& other) const {
  return std::includes(other.members_.begin(), other.members_.end(),
                       members_.begin(), members_.end());
}

std::vector<char> Bag::mask(std::size_t node_count) const {
  std::vector<char> out(node_count, 0);
  for (NodeId v : members_) {
    if (v >= node_count) {
      throw DomainError("node id " + std::to_string(v) + " out of range [0, " +
                        std::to_string(node_count) + ")");
    }
    out[v] = 1;
  }
  return out;
}

// ---------------------------------------------------------------------------

Crusade::Crusade(Bag start, std::vector<NodeId> removal_order)
    : start_(std::move(start)), order_(std::move(removal_order)) {
  if (order_.size() > start_.size()) {
    throw StructureError("crusade removes more nodes than its start bag holds");
  }
  std::vector<NodeId> seen(order_);
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
    throw StructureError("crusade removes a node twice");
  }
  for (NodeId v : order_) {
    if (!start_.contains(v)) {
      throw StructureError("crusade removes node " + std::to_string(v) +
                           " outside its start bag");
    }
  }
}

Crusade Crusade::from_bags(const std::vector<Bag>& bags) {
  if (bags.empty()) throw StructureError("crusade needs at least one bag");
  std::vector<NodeId> order;
  for (std::size_t i = 1; i < bags.size(); ++i) {
    if (!bags[i].is_subset_of(bags[i - 1]) || bags[i - 1].size() != bags[i].size() + 1) {
      throw StructureError("bag " + std::to_string(i) +
                           " does not drop exactly one node of bag " +
                           std::to_string(i - 1));
    }
    order.push_back(bags[i - 1].minus(bags[i])[0]);
  }
  return Crusade(bags.front(), std::move(order));
}

Bag Crusade::bag(std::size_t index) const {
  if (index > order_.size()) throw DomainError("crusade bag index out of range");
  return start_.minus(Bag(std::vector<NodeId>(order_.begin(), order_.begin() + index)));
}

std::vector<Bag> Crusade::bags() const {
  std::vector<Bag> out;
  out.reserve(order_.size() + 1);
  for (std::size_t i = 0; i <= order_.size(); ++i) out.push_back(bag(i));
  return out;
}

// ---------------------------------------------------------------------------

Rational cut_size(const WeightedGraph& g, const Bag& bag) {
  auto in = bag.mask(g.node_count());
  Rational total(0);
  for (const auto& e : g.edges()) {
    if (in[e.u] != in[e.v]) total += e.w;
  }
  return total;
}

Rational cut_within(const WeightedGraph& g, const Bag& side, const Bag& within) {
  if (!side.is_subset_of(within)) {
    throw DomainError("cut side is not contained in the enclosing bag");
  }
  auto in_side = side.mask(g.node_count());
  auto in_within = within.mask(g.node_count());
  Rational total(0);
  for (const auto& e : g.edges()) {
    if (in_within[e.u] && in_within[e.v] && in_side[e.u] != in_side[e.v]) {
      total += e.w;
    }
  }
  return total;
}

Subgraph subgraph(const WeightedGraph& g, const Bag& bag) {
  auto in = bag.mask(g.node_count());
  std::vector<NodeId> local(g.node_count(), 0);
  for (std::size_t i = 0; i < bag.size(); ++i) local[bag[i]] = static_cast<NodeId>(i);
  Subgraph out{WeightedGraph(bag.size()), bag.members()};
  for (const auto& e : g.edges()) {
    if (in[e.u] && in[e.v]) out.graph.add_edge(local[e.u], local[e.v], e.w);
  }
  return out;
}

Rational max_degree(const WeightedGraph& g) {
  Rational best(0);
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (g.degree(v) > best) best = g.degree(v);
  }
  return best;
}

std::vector<Rational> crusade_cut_profile(const WeightedGraph& g, const Crusade& p) {
  auto in = p.start().mask(g.node_count());
  std::vector<Rational> profile;
  profile.reserve(p.length() + 1);
  Rational cut = cut_size(g, p.start());
  profile.push_back(cut);
  for (NodeId v : p.removal_order()) {
    // Edges from v into the bag start crossing; edges leaving it stop.
    for (const auto& inc : g.neighbors(v)) {
      const Rational& w = g.edge(inc.edge).w;
      if (in[inc.neighbor]) {
        cut += w;
      } else {
        cut -= w;
      }
    }
    in[v] = 0;
    profile.push_back(cut);
  }
  return profile;
}

Rational crusade_width(const WeightedGraph& g, const Crusade& p) {
  auto profile = crusade_cut_profile(g, p);
  return *std::max_element(profile.begin(), profile.end());
}

std::optional<ScaledWeights> scale_weights(const WeightedGraph& g) {
  constexpr std::int64_t kMaxDenominator = std::int64_t{1} << 40;
  mpz_class lcm(1);
  for (const auto& e : g.edges()) {
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), e.w.get_den_mpz_t());
    if (lcm > kMaxDenominator) return std::nullopt;
  }
  // Total weight is at most m * lcm; keep it well inside int64.
  if (mpz_class(lcm * static_cast<unsigned long>(g.edge_count() + 1)) >
      (mpz_class(1) << 61)) {
    return std::nullopt;
  }
  ScaledWeights out;
  out.denominator = lcm.get_si();
  out.numerators.reserve(g.edge_count());
  for (const auto& e : g.edges()) {
    mpz_class num = e.w.get_num() * (lcm / e.w.get_den());
    out.numerators.push_back(num.get_si());
  }
  return out;
}

}  // namespace curenet
