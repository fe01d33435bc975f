#include "curenet/netdesign.hpp"

#include <algorithm>
#include <bit>
#include <type_traits>
#include <numeric>
#include <set>

#include "curenet/errors.hpp"
#include "curenet/exact.hpp"
#include "curenet/simplex.hpp"
#include "exact_arith.hpp"

namespace curenet {

std::string_view to_string(PlanMode mode) {
  switch (mode) {
    case PlanMode::Fractional: return "fractional";
    case PlanMode::Integral: return "integral";
    case PlanMode::Unweighted: return "unweighted";
    case PlanMode::SdpMinimax: return "sdp-minimax";
  }
  return "unknown";
}

namespace {

constexpr std::int64_t kGrid = 1000000000;  // decimal grid for float results

void check_full_crusade(const Bag& a, const Crusade& p) {
  if (!(p.start() == a) || !p.reaches_empty()) {
    throw DomainError("expected a crusade from the bag to the empty bag");
  }
}

Rational sum(const std::vector<Rational>& v) {
  return std::accumulate(v.begin(), v.end(), Rational(0));
}

// pos[v] = index of v in the removal order, -1 outside the bag. v lies in p_i
// iff i <= pos[v].
std::vector<long> removal_positions(const WeightedGraph& g, const Crusade& p) {
  std::vector<long> pos(g.node_count(), -1);
  const auto& order = p.removal_order();
  for (std::size_t i = 0; i < order.size(); ++i) {
    g.check_node(order[i]);
    pos[order[i]] = static_cast<long>(i);
  }
  return pos;
}

// Crusade indices i in [lo, hi) whose bag the edge crosses; empty if lo >= hi.
std::pair<long, long> crossing_range(const Edge& e, const std::vector<long>& pos) {
  long pu = pos[e.u];
  long pv = pos[e.v];
  if (pu < 0 && pv < 0) return {0, 0};
  return {std::min(pu, pv) + 1, std::max(pu, pv) + 1};
}

ReductionPlan finish_width_plan(const WeightedGraph& g, const Crusade& p,
                                std::vector<Rational> deltas, PlanMode mode,
                                const Rational& b) {
  ReductionPlan plan;
  plan.deltas = std::move(deltas);
  plan.total_cost = sum(plan.deltas);
  plan.mode = mode;
  plan.threshold = b;
  plan.certified_bound = reduced_width(g, p, plan);
  return plan;
}

}  // namespace

WeightedGraph apply_plan(const WeightedGraph& g, const ReductionPlan& plan) {
  if (plan.deltas.size() != g.edge_count()) {
    throw ContractError("reduction plan does not match the graph's edge count");
  }
  std::vector<Rational> w(g.edge_count());
  for (std::size_t e = 0; e < w.size(); ++e) {
    const Rational& d = plan.deltas[e];
    if (d < 0 || d > g.edge(e).w) throw ContractError("reduction outside [0, w]");
    w[e] = g.edge(e).w - d;
  }
  return g.with_weights(w);
}

Rational reduced_width(const WeightedGraph& g, const Crusade& p, const ReductionPlan& plan) {
  return crusade_width(apply_plan(g, plan), p);
}

ReductionPlan solve_width_lp(const WeightedGraph& g, const Bag& a, const Crusade& p,
                             const Rational& b) {
  check_full_crusade(a, p);
  if (b < 0) throw DomainError("width threshold must be nonnegative");
  const auto pos = removal_positions(g, p);
  const auto profile = crusade_cut_profile(g, p);
  const std::size_t m = g.edge_count();

  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    if (profile[i] > b) active.push_back(i);
  }
  std::vector<std::pair<long, long>> range(m);
  std::vector<long> column(m, -1);
  std::size_t columns = 0;
  for (std::size_t e = 0; e < m; ++e) {
    range[e] = crossing_range(g.edge(e), pos);
    for (std::size_t i : active) {
      if (range[e].first <= static_cast<long>(i) && static_cast<long>(i) < range[e].second) {
        column[e] = static_cast<long>(columns++);
        break;
      }
    }
  }

  bool exact = denominator_at_most(b, 10000);
  for (const auto& e : g.edges()) exact = exact && denominator_at_most(e.w, 10000);

  std::vector<Rational> deltas(m, Rational(0));
  std::size_t iterations = 0;
  auto build = [&](auto tag) {
    using T = decltype(tag);
    auto conv = [](const Rational& q) {
      if constexpr (std::is_same_v<T, double>) {
        return q.get_d();
      } else {
        return q;
      }
    };
    LinearProgram<T> lp;
    for (std::size_t e = 0; e < m; ++e) {
      if (column[e] >= 0) lp.add_variable(T(1), T(0), conv(g.edge(e).w));
    }
    for (std::size_t i : active) {
      std::vector<std::pair<std::size_t, T>> terms;
      for (std::size_t e = 0; e < m; ++e) {
        if (column[e] >= 0 && range[e].first <= static_cast<long>(i) &&
            static_cast<long>(i) < range[e].second) {
          terms.push_back({static_cast<std::size_t>(column[e]), T(1)});
        }
      }
      lp.add_row(std::move(terms), RowSense::GreaterEqual, conv(profile[i] - b));
    }
    return lp;
  };

  if (columns > 0) {
    if (exact) {
      auto sol = solve_lp(build(Rational()), 1000000);
      if (sol.status != LpStatus::Optimal) {
        throw NumericError(std::string("width LP ended with status ") +
                           std::string(to_string(sol.status)));
      }
      iterations = sol.iterations;
      for (std::size_t e = 0; e < m; ++e) {
        if (column[e] >= 0) deltas[e] = sol.x[static_cast<std::size_t>(column[e])];
      }
    } else {
      auto sol = solve_lp(build(0.0), 1000000);
      if (sol.status != LpStatus::Optimal) {
        throw NumericError(std::string("width LP ended with status ") +
                           std::string(to_string(sol.status)));
      }
      iterations = sol.iterations;
      for (std::size_t e = 0; e < m; ++e) {
        if (column[e] < 0) continue;
        Rational d = round_up(sol.x[static_cast<std::size_t>(column[e])], kGrid);
        deltas[e] = std::clamp(d, Rational(0), g.edge(e).w);
      }
    }
  }
  auto plan = finish_width_plan(g, p, std::move(deltas), PlanMode::Fractional, b);
  plan.diagnostics.iterations = iterations;
  plan.diagnostics.exact = exact;
  return plan;
}

ReductionPlan width_opt_rounding(const WeightedGraph& g, const Bag& a, const Crusade& p,
                                 const ReductionPlan& lp) {
  if (lp.mode != PlanMode::Fractional) {
    throw ContractError("width_opt_rounding expects a fractional plan");
  }
  if (lp.deltas.size() != g.edge_count()) {
    throw ContractError("fractional plan does not match the graph");
  }
  check_full_crusade(a, p);
  const std::size_t k = a.size();
  const auto& order = p.removal_order();
  const auto in_a = a.mask(g.node_count());

  // Labels 1..k for the bag, then k+1.. for outside nodes in ascending id.
  // With edges leaving the bag the labels follow the reverse removal order so
  // that the edges crossing each bag stay a prefix of every sorted list.
  bool leaves_bag = false;
  for (const auto& e : g.edges()) leaves_bag = leaves_bag || (in_a[e.u] != in_a[e.v]);
  std::vector<std::size_t> label(g.node_count(), 0);
  std::vector<NodeId> by_label(k + 1);
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t l = leaves_bag ? k - i : i + 1;
    label[order[i]] = l;
    by_label[l] = order[i];
  }
  std::size_t next = k + 1;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (!in_a[v]) label[v] = next++;
  }

  std::vector<Rational> deltas(g.edge_count(), Rational(0));
  for (std::size_t i = 1; i <= k; ++i) {
    NodeId v = by_label[i];
    std::vector<std::pair<std::size_t, std::size_t>> list;  // (label of other end, edge)
    for (const auto& inc : g.neighbors(v)) {
      if (label[inc.neighbor] > i) list.push_back({label[inc.neighbor], inc.edge});
    }
    std::sort(list.begin(), list.end(), std::greater<>());
    Rational goal = 0;
    for (const auto& [l, e] : list) goal += lp.deltas[e];
    Rational x = 0;
    for (const auto& [l, e] : list) {
      if (!(x < goal)) break;
      x += g.edge(e).w;
      deltas[e] = g.edge(e).w;
    }
  }
  auto plan = finish_width_plan(g, p, std::move(deltas), PlanMode::Integral, lp.threshold);
  plan.diagnostics.exact = lp.diagnostics.exact;
  Rational slack = lp.diagnostics.exact ? Rational(0) : Rational(1, 1000000);
  if (plan.certified_bound > lp.threshold + slack) {
    throw InvariantViolation("rounded plan leaves width " + to_string(plan.certified_bound) +
                             " above b = " + to_string(lp.threshold));
  }
  return plan;
}

ReductionPlan uwcmp_solve(const WeightedGraph& g, const Bag& a, const Crusade& p,
                          std::size_t b) {
  check_full_crusade(a, p);
  for (const auto& e : g.edges()) {
    if (e.w != 1) throw DomainError("uwcmp_solve requires unit edge weights");
  }
  const auto pos = removal_positions(g, p);
  struct Interval {
    long start;
    long finish;
    std::size_t edge;
  };
  std::vector<Interval> intervals;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    auto [lo, hi] = crossing_range(g.edge(e), pos);
    if (lo < hi) intervals.push_back({lo, hi, e});
  }
  std::sort(intervals.begin(), intervals.end(), [](const Interval& x, const Interval& y) {
    return std::tie(x.finish, x.start, x.edge) < std::tie(y.finish, y.start, y.edge);
  });

  std::vector<Rational> deltas(g.edge_count(), Rational(0));
  std::multiset<long> machines;  // finish time of the last job on each machine
  for (std::size_t i = 0; i < std::min(b, intervals.size()); ++i) machines.insert(-1);
  for (const auto& iv : intervals) {
    // Machine that became free latest, but no later than the start.
    auto it = machines.upper_bound(iv.start);
    if (it == machines.begin()) {
      deltas[iv.edge] = 1;
      continue;
    }
    --it;
    machines.erase(it);
    machines.insert(iv.finish);
  }
  return finish_width_plan(g, p, std::move(deltas), PlanMode::Unweighted, Rational(static_cast<long>(b)));
}

namespace {

template <class Arith>
std::vector<char> cheapest_deletion(const Arith& arith, const std::vector<std::size_t>& candidates,
                                    const std::vector<std::vector<std::size_t>>& crossing,
                                    const std::vector<typename Arith::Value>& excess) {
  using Value = typename Arith::Value;
  const std::size_t m = candidates.size();
  // Bit masks of candidate edges crossing each over-threshold bag.
  std::vector<std::uint32_t> bag_mask(crossing.size(), 0);
  std::vector<int> slot(*std::max_element(candidates.begin(), candidates.end()) + 1, -1);
  for (std::size_t j = 0; j < m; ++j) slot[candidates[j]] = static_cast<int>(j);
  for (std::size_t i = 0; i < crossing.size(); ++i) {
    for (auto e : crossing[i]) {
      if (slot[e] >= 0) bag_mask[i] |= std::uint32_t{1} << slot[e];
    }
  }
  std::vector<Value> mass(std::size_t{1} << m, Arith::zero());
  for (std::uint32_t mask = 1; mask < mass.size(); ++mask) {
    unsigned low = static_cast<unsigned>(std::countr_zero(mask));
    mass[mask] = mass[mask & (mask - 1)] + arith.weight(candidates[low]);
  }
  std::optional<std::uint32_t> best;
  for (std::uint32_t mask = 0; mask < mass.size(); ++mask) {
    if (best && !(mass[mask] < mass[*best])) continue;
    bool ok = true;
    for (std::size_t i = 0; i < bag_mask.size() && ok; ++i) ok = !(mass[mask & bag_mask[i]] < excess[i]);
    if (ok) best = mask;
  }
  std::vector<char> chosen(m, 0);
  for (std::size_t j = 0; j < m; ++j) chosen[j] = (*best >> j) & 1U;
  return chosen;
}

}  // namespace

ReductionPlan integral_width_exact(const WeightedGraph& g, const Bag& a, const Crusade& p,
                                   const Rational& b, std::size_t limit) {
  check_full_crusade(a, p);
  if (b < 0) throw DomainError("width threshold must be nonnegative");
  const auto pos = removal_positions(g, p);
  const auto profile = crusade_cut_profile(g, p);
  std::vector<std::size_t> over;  // crusade indices with cut > b
  for (std::size_t i = 0; i < profile.size(); ++i) {
    if (profile[i] > b) over.push_back(i);
  }
  std::vector<std::vector<std::size_t>> crossing(over.size());
  std::vector<char> candidate(g.edge_count(), 0);
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    auto [lo, hi] = crossing_range(g.edge(e), pos);
    for (std::size_t j = 0; j < over.size(); ++j) {
      long i = static_cast<long>(over[j]);
      if (lo <= i && i < hi && g.edge(e).w > 0) {
        crossing[j].push_back(e);
        candidate[e] = 1;
      }
    }
  }
  std::vector<std::size_t> candidates;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    if (candidate[e]) candidates.push_back(e);
  }
  detail::check_capacity(candidates.size(), std::min<std::size_t>(limit, 30), "integral_width_exact");

  std::vector<Rational> deltas(g.edge_count(), Rational(0));
  if (!candidates.empty()) {
    auto chosen = detail::with_exact_arith(g, [&](const auto& arith) {
      using Value = typename std::decay_t<decltype(arith)>::Value;
      std::vector<Value> excess;
      for (auto i : over) {
        Rational need = profile[i] - b;
        if constexpr (std::is_same_v<Value, std::int64_t>) {
          // Integer masses over the common denominator: compare against the ceiling.
          mpz_class scaled = need.get_num() * arith.denominator;
          mpz_class q;
          mpz_cdiv_q(q.get_mpz_t(), scaled.get_mpz_t(), need.get_den_mpz_t());
          excess.push_back(q.get_si());
        } else {
          excess.push_back(need);
        }
      }
      return cheapest_deletion(arith, candidates, crossing, excess);
    });
    for (std::size_t j = 0; j < candidates.size(); ++j) {
      if (chosen[j]) deltas[candidates[j]] = g.edge(candidates[j]).w;
    }
  }
  return finish_width_plan(g, p, std::move(deltas), PlanMode::Integral, b);
}

namespace {

struct Contracted {
  std::size_t node_count = 0;
  std::vector<SdpEdge> edges;
  std::vector<std::vector<std::size_t>> originals;  // per SDP edge, ascending far end
};

Contracted contract(const WeightedGraph& g, const Bag& a) {
  Contracted out;
  std::vector<long> local(g.node_count(), -1);
  for (std::size_t i = 0; i < a.size(); ++i) local[a[i]] = static_cast<long>(i);
  const std::size_t s = a.size();
  std::vector<std::vector<std::pair<NodeId, std::size_t>>> outside(a.size());
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const Edge& edge = g.edge(e);
    if (edge.w == 0) continue;
    long lu = local[edge.u];
    long lv = local[edge.v];
    if (lu >= 0 && lv >= 0) {
      out.edges.push_back({static_cast<std::size_t>(lu), static_cast<std::size_t>(lv), edge.w.get_d()});
      out.originals.push_back({e});
    } else if (lu >= 0) {
      outside[static_cast<std::size_t>(lu)].push_back({edge.v, e});
    } else if (lv >= 0) {
      outside[static_cast<std::size_t>(lv)].push_back({edge.u, e});
    }
  }
  bool has_super = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (outside[i].empty()) continue;
    std::sort(outside[i].begin(), outside[i].end());
    Rational w = 0;
    std::vector<std::size_t> list;
    for (const auto& [v, e] : outside[i]) {
      w += g.edge(e).w;
      list.push_back(e);
    }
    out.edges.push_back({i, s, w.get_d()});
    out.originals.push_back(std::move(list));
    has_super = true;
  }
  out.node_count = a.size() + (has_super ? 1 : 0);
  return out;
}

}  // namespace

ReductionPlan minimax_sdp(const WeightedGraph& g, const Bag& a, const Rational& budget,
                          const SdpOptions& options) {
  if (budget < 0) throw DomainError("reduction budget must be nonnegative");
  for (NodeId v : a) g.check_node(v);
  ReductionPlan plan;
  plan.mode = PlanMode::SdpMinimax;
  plan.budget = budget;
  plan.deltas.assign(g.edge_count(), Rational(0));
  plan.diagnostics.exact = false;

  Contracted c = contract(g, a);
  Rational touching = 0;
  for (const auto& list : c.originals) {
    for (std::size_t e : list) touching += g.edge(e).w;
  }
  if (c.edges.empty()) {
    plan.total_cost = 0;
    plan.certified_bound = 0;
    return plan;
  }
  if (budget >= touching) {
    for (const auto& list : c.originals) {
      for (std::size_t e : list) plan.deltas[e] = g.edge(e).w;
    }
    plan.total_cost = touching;
    plan.certified_bound = 0;
    return plan;
  }

  SdpResult r = solve_minimax_sdp(c.node_count, c.edges, budget.get_d(), options);
  for (std::size_t k = 0; k < c.edges.size(); ++k) {
    Rational left = round_down(std::max(0.0, r.delta[k]), kGrid);
    for (std::size_t e : c.originals[k]) {
      Rational take = std::min(left, g.edge(e).w);
      plan.deltas[e] = take;
      left -= take;
    }
  }
  plan.total_cost = sum(plan.deltas);
  // Grid rounding can only lower the total, but guard the exact budget anyway.
  for (std::size_t e = plan.deltas.size(); plan.total_cost > budget && e-- > 0;) {
    Rational over = plan.total_cost - budget;
    Rational cut = plan.deltas[e] < over ? plan.deltas[e] : over;
    plan.deltas[e] -= cut;
    plan.total_cost -= cut;
  }

  // Bound at the rounded reductions with the solver's diagonal shift.
  std::vector<SdpEdge> residual = c.edges;
  for (std::size_t k = 0; k < c.edges.size(); ++k) {
    Rational w = 0;
    for (std::size_t e : c.originals[k]) w += g.edge(e).w - plan.deltas[e];
    residual[k].w = w.get_d();
  }
  double bound = gw_upper_bound(c.node_count, residual, r.u);
  plan.certified_bound = round_up(std::max(0.0, bound) + 1e-9, kGrid);
  plan.diagnostics.iterations = r.newton_steps;
  plan.diagnostics.duality_gap = r.upper_bound - r.lower_bound;
  plan.diagnostics.lower_bound = r.lower_bound;
  return plan;
}

ReductionPlan budget_search(const WeightedGraph& g, const Bag& a, const Rational& target,
                            const Rational& eps, const SdpOptions& options) {
  if (target < 0) throw DomainError("target must be nonnegative");
  if (eps <= 0) throw DomainError("eps must be positive");
  ReductionPlan best = minimax_sdp(g, a, Rational(0), options);
  if (best.certified_bound <= target) return best;

  Rational lo = 0;
  Rational hi = 0;
  for (const auto& e : g.edges()) {
    if (a.contains(e.u) || a.contains(e.v)) hi += e.w;
  }
  best = minimax_sdp(g, a, hi, options);
  while (hi - lo > eps) {
    Rational mid = (lo + hi) / 2;
    auto plan = minimax_sdp(g, a, mid, options);
    if (plan.certified_bound <= target) {
      hi = mid;
      best = std::move(plan);
    } else {
      lo = mid;
    }
  }
  return best;
}

ReductionPlan minimax_exact(const WeightedGraph& g, const Bag& a, const Rational& budget,
                            std::size_t limit) {
  if (a.size() > limit) {
    throw CapacityError("minimax_exact: bag of size " + std::to_string(a.size()) +
                        " exceeds the limit " + std::to_string(limit));
  }
  if (budget < 0) throw DomainError("reduction budget must be nonnegative");
  const auto in_a = a.mask(g.node_count());
  std::vector<std::size_t> touching;
  Rational total = 0;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const Edge& edge = g.edge(e);
    if ((in_a[edge.u] || in_a[edge.v]) && edge.w > 0) {
      touching.push_back(e);
      total += edge.w;
    }
  }

  ReductionPlan plan;
  plan.mode = PlanMode::SdpMinimax;
  plan.budget = budget;
  plan.deltas.assign(g.edge_count(), Rational(0));
  if (touching.empty() || budget >= total) {
    for (std::size_t e : touching) plan.deltas[e] = g.edge(e).w;
    plan.total_cost = sum(plan.deltas);
    plan.certified_bound = 0;
    return plan;
  }

  LinearProgram<Rational> lp;
  for (std::size_t e : touching) lp.add_variable(Rational(0), Rational(0), g.edge(e).w);
  const std::size_t t = lp.add_variable(Rational(1), Rational(0), std::nullopt);
  {
    std::vector<std::pair<std::size_t, Rational>> terms;
    for (std::size_t j = 0; j < touching.size(); ++j) terms.push_back({j, Rational(1)});
    lp.add_row(std::move(terms), RowSense::LessEqual, budget);
  }
  auto add_cut = [&](const Bag& q) {
    std::vector<std::pair<std::size_t, Rational>> terms{{t, Rational(1)}};
    Rational rhs = 0;
    for (std::size_t j = 0; j < touching.size(); ++j) {
      const Edge& edge = g.edge(touching[j]);
      if (q.contains(edge.u) != q.contains(edge.v)) {
        terms.push_back({j, Rational(1)});
        rhs += edge.w;
      }
    }
    lp.add_row(std::move(terms), RowSense::GreaterEqual, rhs);
  };
  add_cut(restricted_max_cut_exact(g, a, limit).maximizer);

  std::size_t rounds = 0;
  std::size_t iterations = 0;
  while (true) {
    ++rounds;
    auto sol = solve_lp(lp, 1000000);
    if (sol.status != LpStatus::Optimal) {
      throw NumericError(std::string("minimax LP ended with status ") +
                         std::string(to_string(sol.status)));
    }
    iterations += sol.iterations;
    for (std::size_t j = 0; j < touching.size(); ++j) plan.deltas[touching[j]] = sol.x[j];
    auto worst = restricted_max_cut_exact(apply_plan(g, plan), a, limit);
    if (worst.value <= sol.x[t]) {
      plan.certified_bound = worst.value;
      break;
    }
    add_cut(worst.maximizer);
  }
  plan.total_cost = sum(plan.deltas);
  plan.diagnostics.iterations = iterations;
  plan.diagnostics.exact = true;
  return plan;
}

}  // namespace curenet
