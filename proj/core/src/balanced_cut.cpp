#include "curenet/balanced_cut.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <optional>

#include "curenet/errors.hpp"
#include "exact_arith.hpp"

namespace curenet {

using detail::LocalBag;

CutStrategy parse_cut_strategy(std::string_view name) {
  if (name == "exact") return CutStrategy::Exact;
  if (name == "spectral") return CutStrategy::SpectralRefined;
  if (name == "auto") return CutStrategy::Auto;
  throw DomainError("unknown balanced-cut strategy '" + std::string(name) + "'");
}

std::string_view to_string(CutStrategy strategy) {
  switch (strategy) {
    case CutStrategy::Exact: return "exact";
    case CutStrategy::SpectralRefined: return "spectral";
    case CutStrategy::Auto: return "auto";
  }
  return "auto";
}

std::size_t min_balanced_side(std::size_t size) { return (size + 2) / 3; }

namespace {

// Sorted-member lexicographic order of two masks that differ.
bool lex_less(std::uint32_t a, std::uint32_t b) {
  std::uint32_t diff = a ^ b;
  unsigned d = static_cast<unsigned>(std::countr_zero(diff));
  bool a_has = a >> d & 1U;
  std::uint32_t other = a_has ? b : a;
  bool other_ends = (other >> d) == 0;
  // The set that lacks d is smaller only if it has nothing beyond d.
  return a_has ? !other_ends : other_ends;
}

BalancedCutResult make_result(const WeightedGraph& g, const Bag& bag, std::vector<NodeId> one,
                              CutStrategy used) {
  Bag side_one(std::move(one));
  Bag side_two = bag.minus(side_one);
  if (!side_one.empty() && !side_two.empty() && side_two[0] < side_one[0]) {
    std::swap(side_one, side_two);
  }
  Rational value = cut_within(g, side_one, bag);
  return BalancedCutResult{std::move(side_one), std::move(side_two), std::move(value), used};
}

BalancedCutResult exact_cut(const WeightedGraph& g, const Bag& bag) {
  LocalBag local(g, bag);
  const std::size_t k = local.size();
  const std::size_t lo = min_balanced_side(k);
  return detail::with_exact_arith(g, [&](const auto& arith) {
    auto cut = detail::subset_cuts(g, local, arith, false);
    std::uint32_t best = 0;
    bool found = false;
    // side_one always contains local node 0, the smallest id.
    for (std::uint32_t mask = 1; mask < cut.size(); mask += 2) {
      auto size = static_cast<std::size_t>(std::popcount(mask));
      if (size < lo || k - size < lo) continue;
      if (!found || cut[mask] < cut[best] || (cut[mask] == cut[best] && lex_less(mask, best))) {
        best = mask;
        found = true;
      }
    }
    Bag side_one = detail::bag_from_mask(local, best);
    return make_result(g, bag, side_one.members(), CutStrategy::Exact);
  });
}

struct LocalGraph {
  std::vector<std::vector<std::pair<std::size_t, double>>> adj;
  std::vector<double> degree;
};

LocalGraph local_graph(const WeightedGraph& g, const LocalBag& local) {
  LocalGraph out;
  out.adj.resize(local.size());
  out.degree.assign(local.size(), 0.0);
  for (std::size_t i = 0; i < local.size(); ++i) {
    for (const auto& arc : local.arcs[i]) {
      double w = g.edge(arc.edge).w.get_d();
      out.adj[i].push_back({arc.neighbor, w});
      out.degree[i] += w;
    }
  }
  return out;
}

std::vector<double> fiedler(const LocalGraph& lg, const BalancedCutOptions& options) {
  const std::size_t k = lg.degree.size();
  std::vector<double> x(k);
  // Deterministic start vector: a low-discrepancy sequence, centred.
  for (std::size_t i = 0; i < k; ++i) {
    x[i] = std::fmod(0.6180339887498949 * static_cast<double>(i + 1), 1.0) - 0.5;
  }
  auto center_normalize = [](std::vector<double>& v) {
    double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    double norm = 0.0;
    for (double& e : v) {
      e -= mean;
      norm += e * e;
    }
    norm = std::sqrt(norm);
    if (norm > 0) {
      for (double& e : v) e /= norm;
    }
    return norm;
  };
  if (center_normalize(x) == 0.0) return x;

  double sigma = 2.0 * *std::max_element(lg.degree.begin(), lg.degree.end());
  if (sigma == 0.0) return x;

  std::vector<double> y(k);
  const std::size_t cap = options.fiedler_iteration_factor * k;
  for (std::size_t iter = 0; iter < cap; ++iter) {
    for (std::size_t i = 0; i < k; ++i) {
      double lx = lg.degree[i] * x[i];
      for (const auto& [j, w] : lg.adj[i]) lx -= w * x[j];
      y[i] = sigma * x[i] - lx;
    }
    if (center_normalize(y) == 0.0) break;
    double change = 0.0;
    for (std::size_t i = 0; i < k; ++i) change = std::max(change, std::abs(y[i] - x[i]));
    x.swap(y);
    if (change < options.fiedler_tolerance) break;
  }
  return x;
}

BalancedCutResult spectral_cut(const WeightedGraph& g, const Bag& bag,
                               const BalancedCutOptions& options) {
  LocalBag local(g, bag);
  LocalGraph lg = local_graph(g, local);
  const std::size_t k = local.size();
  const std::size_t lo = min_balanced_side(k);

  auto vec = fiedler(lg, options);
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return vec[a] < vec[b]; });

  // Sweep over balanced prefixes.
  std::vector<char> side(k, 0);
  double cut = 0.0;
  double best_cut = 0.0;
  std::size_t best_size = 0;
  for (std::size_t s = 0; s + lo <= k; ++s) {
    if (s > 0) {
      std::size_t v = order[s - 1];
      for (const auto& [j, w] : lg.adj[v]) cut += side[j] ? -w : w;
      side[v] = 1;
    }
    if (s >= lo && (best_size == 0 || cut < best_cut - 1e-12)) {
      best_cut = cut;
      best_size = s;
    }
  }
  // Refinement from a sweep prefix; the sweep's best prefix goes first and up
  // to 16 evenly spaced balanced prefixes serve as extra starts.
  auto refine = [&](std::size_t prefix) {
    std::vector<char> side(k, 0);
    for (std::size_t s = 0; s < prefix; ++s) side[order[s]] = 1;
    // Local refinement: single moves and pair swaps that keep the balance and
    // strictly reduce the cut. gain[v] is the cut decrease when v changes side.
    std::size_t ones = prefix;
    std::vector<double> gain(k, 0.0);
    for (std::size_t v = 0; v < k; ++v) {
      for (const auto& [j, w] : lg.adj[v]) gain[v] += side[j] == side[v] ? -w : w;
    }
    auto flip = [&](std::size_t v) {
      side[v] ^= 1;
      gain[v] = -gain[v];
      for (const auto& [j, w] : lg.adj[v]) gain[j] += side[j] == side[v] ? -2.0 * w : 2.0 * w;
    };
    auto edge_weight = [&](std::size_t a, std::size_t b) {
      for (const auto& [j, w] : lg.adj[a]) {
        if (j == b) return w;
      }
      return 0.0;
    };
    std::vector<std::size_t> zeros;
    bool improved = true;
    std::size_t rounds = 0;
    while (improved && rounds++ < k * k + 1) {
      improved = false;
      for (std::size_t v = 0; v < k && !improved; ++v) {
        std::size_t new_ones = side[v] ? ones - 1 : ones + 1;
        if (new_ones < lo || k - new_ones < lo) continue;
        if (gain[v] > 1e-12) {
          flip(v);
          ones = new_ones;
          improved = true;
        }
      }
      if (improved) continue;
      // Fiduccia-Mattheyses pass: move every node once, best balanced gain
      // first even when negative, then keep the best prefix of the sequence.
      {
        std::vector<char> locked(k, 0);
        std::vector<std::size_t> moved;
        double total = 0.0, best_total = 0.0;
        std::size_t best_len = 0, pass_ones = ones;
        while (true) {
          std::optional<std::size_t> pick;
          for (std::size_t v = 0; v < k; ++v) {
            if (locked[v]) continue;
            std::size_t after = side[v] ? pass_ones - 1 : pass_ones + 1;
            if (after < lo || k - after < lo) continue;
            if (!pick || gain[v] > gain[*pick] + 1e-12) pick = v;
          }
          if (!pick) break;
          pass_ones = side[*pick] ? pass_ones - 1 : pass_ones + 1;
          total += gain[*pick];
          flip(*pick);
          locked[*pick] = 1;
          moved.push_back(*pick);
          if (total > best_total + 1e-12) {
            best_total = total;
            best_len = moved.size();
          }
        }
        for (std::size_t i = moved.size(); i > best_len; --i) {
          const std::size_t v = moved[i - 1];
          pass_ones = side[v] ? pass_ones - 1 : pass_ones + 1;
          flip(v);
        }
        ones = pass_ones;
        if (best_len > 0) {
          improved = true;
          continue;
        }
      }
      // Side-zero candidates by decreasing gain, so each scan stops once no
      // partner can pay for a. A swapped pair keeps its own edge cut.
      zeros.clear();
      for (std::size_t b = 0; b < k; ++b) {
        if (!side[b]) zeros.push_back(b);
      }
      std::stable_sort(zeros.begin(), zeros.end(),
                       [&](std::size_t x, std::size_t y) { return gain[x] > gain[y]; });
      for (std::size_t a = 0; a < k && !improved; ++a) {
        if (!side[a]) continue;
        for (std::size_t b : zeros) {
          if (gain[a] + gain[b] <= 1e-12) break;
          if (gain[a] + gain[b] - 2.0 * edge_weight(a, b) > 1e-12) {
            flip(a);
            flip(b);
            improved = true;
            break;
          }
        }
      }
    }
    double value = 0.0;
    for (std::size_t v = 0; v < k; ++v) {
      for (const auto& [j, w] : lg.adj[v]) value += side[v] && !side[j] ? w : 0.0;
    }
    return std::make_pair(value, side);
  };
  std::vector<std::size_t> starts{best_size};
  const std::size_t span = k - 2 * lo;
  const std::size_t count = std::min<std::size_t>(span + 1, 16);
  for (std::size_t i = 0; i < count; ++i) {
    starts.push_back(lo + (count == 1 ? 0 : i * span / (count - 1)));
  }
  auto best = refine(best_size);
  for (std::size_t i = 1; i < starts.size(); ++i) {
    if (std::find(starts.begin(), starts.begin() + static_cast<long>(i), starts[i]) !=
        starts.begin() + static_cast<long>(i)) {
      continue;
    }
    auto other = refine(starts[i]);
    if (other.first < best.first - 1e-12) best = std::move(other);
  }
  const std::vector<char>& side_final = best.second;

  std::vector<NodeId> one;
  for (std::size_t i = 0; i < k; ++i) {
    if (side_final[i]) one.push_back(local.nodes[i]);
  }
  return make_result(g, bag, std::move(one), CutStrategy::SpectralRefined);
}

}  // namespace

BalancedCutResult balanced_cut(const WeightedGraph& g, const Bag& bag, CutStrategy strategy,
                               const BalancedCutOptions& options) {
  if (bag.size() < 2) throw DomainError("balanced_cut needs a bag of at least two nodes");
  for (NodeId v : bag) g.check_node(v);
  if (strategy == CutStrategy::Auto) {
    strategy = bag.size() <= options.exact_limit ? CutStrategy::Exact : CutStrategy::SpectralRefined;
  }
  if (strategy == CutStrategy::Exact) {
    detail::check_capacity(bag.size(), options.exact_limit, "balanced_cut");
    return exact_cut(g, bag);
  }
  return spectral_cut(g, bag, options);
}

std::vector<double> fiedler_vector(const WeightedGraph& g, const Bag& bag,
                                   const BalancedCutOptions& options) {
  LocalBag local(g, bag);
  if (local.size() == 0) return {};
  return fiedler(local_graph(g, local), options);
}

}  // namespace curenet
