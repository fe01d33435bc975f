#pragma once

// Brute-force references written independently of the library's algorithms:
// plain enumeration over orderings, subsets and delete-sets, straight from the
// definitions. Only the graph container and Rational are shared.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include "curenet/fairness.hpp"
#include "curenet/graph.hpp"

namespace oracle {

using curenet::Bag;
using curenet::NodeId;
using curenet::Rational;
using curenet::WeightedGraph;

/// Integer weights over one common denominator.
struct Scaled {
  std::int64_t den = 1;
  std::vector<std::int64_t> w;  // per edge
};

inline Scaled scale(const WeightedGraph& g) {
  mpz_class den = 1;
  for (const auto& e : g.edges()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), e.w.get_den_mpz_t());
  Scaled s;
  s.den = den.get_si();
  for (const auto& e : g.edges()) {
    mpz_class num = e.w.get_num() * (den / e.w.get_den());
    s.w.push_back(num.get_si());
  }
  return s;
}

inline Rational unscale(std::int64_t v, std::int64_t den) {
  Rational q(v, den);
  q.canonicalize();
  return q;
}

/// c(set) by scanning every edge.
inline Rational naive_cut(const WeightedGraph& g, const std::vector<char>& in) {
  Rational c = 0;
  for (const auto& e : g.edges()) {
    if (in[e.u] != in[e.v]) c += e.w;
  }
  return c;
}

/// Minimum width over all |bag|! removal orders. Depth-first with the cut of
/// the remaining bag updated per removal.
inline Rational impedance_by_orderings(const WeightedGraph& g, const Bag& bag) {
  const Scaled s = scale(g);
  const std::size_t n = g.node_count();
  std::vector<char> in(n, 0);
  for (NodeId v : bag) in[v] = 1;
  std::int64_t start = 0;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    if (in[g.edge(e).u] != in[g.edge(e).v]) start += s.w[e];
  }
  // Removing v flips each incident edge: inside edges start crossing, crossing ones stop.
  std::vector<std::vector<std::pair<NodeId, std::int64_t>>> adj(n);
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    adj[g.edge(e).u].push_back({g.edge(e).v, s.w[e]});
    adj[g.edge(e).v].push_back({g.edge(e).u, s.w[e]});
  }
  std::vector<NodeId> left(bag.begin(), bag.end());
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  auto rec = [&](auto&& self, std::int64_t cut, std::int64_t width) -> void {
    if (left.empty()) {
      best = std::min(best, width);
      return;
    }
    for (std::size_t i = 0; i < left.size(); ++i) {
      NodeId v = left[i];
      std::int64_t next = cut;
      for (auto [u, w] : adj[v]) next += in[u] ? w : -w;
      in[v] = 0;
      std::swap(left[i], left.back());
      left.pop_back();
      self(self, next, std::max(width, next));
      left.push_back(v);
      std::swap(left[i], left.back());
      in[v] = 1;
    }
  };
  rec(rec, start, start);
  return unscale(best, s.den);
}

/// Fairness test written out directly: for each segment between
/// checkpoints and each group, |S ∩ V_h| < gamma |p0 ∩ V_h| / |p0| |S| + 1.
inline bool fair_by_definition(const std::vector<NodeId>& order, const std::vector<std::uint32_t>& groups,
                               const std::vector<std::size_t>& checkpoints, const Rational& gamma,
                               bool include_final = true) {
  const std::size_t k = order.size();
  if (checkpoints.empty() || k == 0) return true;
  std::uint32_t ell = 0;
  for (NodeId v : order) ell = std::max(ell, groups[v] + 1);
  std::vector<long> total(ell, 0);
  for (NodeId v : order) ++total[groups[v]];
  std::vector<std::size_t> cuts{0};
  cuts.insert(cuts.end(), checkpoints.begin(), checkpoints.end());
  if (include_final) cuts.push_back(k);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    std::vector<long> seg(ell, 0);
    for (std::size_t j = cuts[i]; j < cuts[i + 1]; ++j) ++seg[groups[order[j]]];
    const long size = static_cast<long>(cuts[i + 1] - cuts[i]);
    for (std::uint32_t h = 0; h < ell; ++h) {
      Rational allowed = gamma * Rational(total[h], static_cast<long>(k)) * size + 1;
      if (!(Rational(seg[h]) < allowed)) return false;
    }
  }
  return true;
}

/// Minimum width over fair orderings; nullopt when none is fair.
inline std::optional<Rational> fair_impedance_by_orderings(const WeightedGraph& g, const Bag& bag,
                                                           const std::vector<std::uint32_t>& groups,
                                                           const std::vector<std::size_t>& checkpoints,
                                                           const Rational& gamma) {
  std::vector<NodeId> order(bag.begin(), bag.end());
  std::optional<Rational> best;
  std::vector<char> in = bag.mask(g.node_count());
  do {
    if (!fair_by_definition(order, groups, checkpoints, gamma)) continue;
    std::vector<char> cur = in;
    Rational width = naive_cut(g, cur);
    for (NodeId v : order) {
      cur[v] = 0;
      width = std::max(width, naive_cut(g, cur));
    }
    if (!best || width < *best) best = width;
  } while (std::next_permutation(order.begin(), order.end()));
  return best;
}

/// max over Q ⊆ bag of c(Q).
inline Rational max_cut_by_subsets(const WeightedGraph& g, const Bag& bag) {
  const auto& m = bag.members();
  Rational best = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m.size()); ++mask) {
    std::vector<char> in(g.node_count(), 0);
    for (std::size_t i = 0; i < m.size(); ++i) in[m[i]] = (mask >> i) & 1U;
    best = std::max(best, naive_cut(g, in));
  }
  return best;
}

/// Cheapest set of full edge deletions (over all edges) keeping every bag of
/// the removal order at cut <= b.
inline Rational min_deletion_by_subsets(const WeightedGraph& g, const Bag& start,
                                        const std::vector<NodeId>& order, const Rational& b) {
  const Scaled s = scale(g);
  const std::size_t m = g.edge_count();
  std::vector<std::vector<char>> bags;
  std::vector<char> in = start.mask(g.node_count());
  bags.push_back(in);
  for (NodeId v : order) {
    in[v] = 0;
    bags.push_back(in);
  }
  std::vector<std::uint32_t> cross(bags.size(), 0);
  for (std::size_t i = 0; i < bags.size(); ++i) {
    for (std::size_t e = 0; e < m; ++e) {
      if (bags[i][g.edge(e).u] != bags[i][g.edge(e).v]) cross[i] |= std::uint32_t{1} << e;
    }
  }
  std::vector<std::int64_t> sum(std::size_t{1} << m, 0);
  for (std::uint32_t mask = 1; mask < sum.size(); ++mask) {
    int low = __builtin_ctz(mask);
    sum[mask] = sum[mask & (mask - 1)] + s.w[static_cast<std::size_t>(low)];
  }
  const std::uint32_t all = static_cast<std::uint32_t>(sum.size() - 1);
  const Rational scaled_b = b * s.den;
  std::optional<std::int64_t> best;
  for (std::uint32_t del = 0; del <= all; ++del) {
    if (best && sum[del] >= *best) continue;
    bool ok = true;
    for (std::size_t i = 0; i < bags.size() && ok; ++i) {
      ok = Rational(sum[cross[i] & ~del]) <= scaled_b;
    }
    if (ok) best = sum[del];
    if (del == all) break;
  }
  return unscale(*best, s.den);
}

/// Connected graph: random spanning tree plus extra edges.
inline WeightedGraph random_connected(std::mt19937_64& rng, std::size_t n, double density,
                                      const std::vector<Rational>& weights) {
  WeightedGraph g(n);
  std::uniform_int_distribution<std::size_t> pick_w(0, weights.size() - 1);
  std::uniform_real_distribution<double> coin(0, 1);
  for (NodeId v = 1; v < n; ++v) {
    std::uniform_int_distribution<NodeId> parent(0, v - 1);
    g.add_edge(parent(rng), v, weights[pick_w(rng)]);
  }
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      if (!g.find_edge(u, v) && coin(rng) < density) g.add_edge(u, v, weights[pick_w(rng)]);
    }
  }
  return g;
}

inline std::vector<Rational> quarter_weights() {
  return {Rational(1, 4), Rational(1, 2), Rational(3, 4), Rational(1)};
}

inline std::vector<NodeId> shuffled(std::mt19937_64& rng, const Bag& bag) {
  std::vector<NodeId> v(bag.begin(), bag.end());
  std::shuffle(v.begin(), v.end(), rng);
  return v;
}

}  // namespace oracle
