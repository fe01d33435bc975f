#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "curenet/graph.hpp"
#include "curenet/sdp.hpp"

namespace curenet {

enum class PlanMode { Fractional, Integral, Unweighted, SdpMinimax };

std::string_view to_string(PlanMode mode);

struct PlanDiagnostics {
  std::size_t iterations = 0;
  bool exact = true;          ///< solved in exact rational arithmetic
  double duality_gap = 0.0;   ///< SDP only
  double lower_bound = 0.0;   ///< SDP only: dual value of the relaxation
};

/// Per-edge weight reductions (indexed like g.edges()).
struct ReductionPlan {
  std::vector<Rational> deltas;
  Rational total_cost;
  /// Width z_{G'}(p) for the width modes, an upper bound on phi_{G'}(a) for
  /// SdpMinimax.
  Rational certified_bound;
  PlanMode mode = PlanMode::Fractional;
  Rational threshold;  ///< b of the width problems
  Rational budget;     ///< budget of the minimax problem
  PlanDiagnostics diagnostics;
};

/// G' with w' = w - delta.
WeightedGraph apply_plan(const WeightedGraph& g, const ReductionPlan& plan);

/// Minimum total reduction so that every bag of `p` has cut <= b in G'.
/// Exact simplex when every weight and b have denominator <= 10^4.
ReductionPlan solve_width_lp(const WeightedGraph& g, const Bag& a, const Crusade& p,
                             const Rational& b);

/// Rounds an optimal fractional plan to full deletions: for each node, the
/// edges to later-labelled nodes are deleted farthest-label first until the
/// LP mass on that list is covered. Throws ContractError unless `lp` is a
/// Fractional plan of the same graph.
ReductionPlan width_opt_rounding(const WeightedGraph& g, const Bag& a, const Crusade& p,
                                 const ReductionPlan& lp);

/// Unit-weight binary deletion: every edge touching `a` becomes the interval
/// of crusade indices whose bag it crosses; at most b kept intervals may
/// overlap, solved by best-fit greedy interval scheduling on b machines.
/// Throws DomainError on a non-unit weight.
ReductionPlan uwcmp_solve(const WeightedGraph& g, const Bag& a, const Crusade& p,
                          std::size_t b);

/// Cheapest full-deletion plan with z_{G'}(p) <= b, by enumerating every
/// subset of the edges that cross an over-threshold bag. Ties prefer the
/// smallest subset mask (edges in index order). Throws CapacityError beyond
/// `limit` candidate edges.
ReductionPlan integral_width_exact(const WeightedGraph& g, const Bag& a, const Crusade& p,
                                   const Rational& b, std::size_t limit = 20);

/// Goemans-Williamson relaxation of min_{sum delta <= budget} phi_{G'}(a) on
/// the graph with a^c contracted to one node.
ReductionPlan minimax_sdp(const WeightedGraph& g, const Bag& a, const Rational& budget,
                          const SdpOptions& options = {});

/// Smallest budget (within eps) whose minimax_sdp bound is <= target.
ReductionPlan budget_search(const WeightedGraph& g, const Bag& a, const Rational& target,
                            const Rational& eps, const SdpOptions& options = {});

/// Exact min over reductions of phi_{G'}(a): epigraph LP in exact arithmetic
/// with one constraint per subset of a, generated lazily.
ReductionPlan minimax_exact(const WeightedGraph& g, const Bag& a, const Rational& budget,
                            std::size_t limit = 12);

/// Post-reduction width of a crusade.
Rational reduced_width(const WeightedGraph& g, const Crusade& p, const ReductionPlan& plan);

}  // namespace curenet
