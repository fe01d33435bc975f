#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "curenet/graph.hpp"

namespace curenet {

enum class CutStrategy {
  Exact,            ///< enumerate every 1/3-balanced split
  SpectralRefined,  ///< Fiedler sweep followed by balance-preserving local moves
  Auto,             ///< Exact up to the exhaustive limit, SpectralRefined above
};

CutStrategy parse_cut_strategy(std::string_view name);
std::string_view to_string(CutStrategy strategy);

struct BalancedCutOptions {
  std::size_t exact_limit = 20;
  double fiedler_tolerance = 1e-9;
  /// Power-iteration cap is `fiedler_iteration_factor * |bag|`.
  std::size_t fiedler_iteration_factor = 10;
};

/// Partition of a bag with min(|side_one|, |side_two|) >= ceil(|bag| / 3).
/// side_one always holds the smallest node id of the bag.
struct BalancedCutResult {
  Bag side_one;
  Bag side_two;
  Rational cut_value;  ///< cut of side_one inside G[bag]
  CutStrategy strategy_used;
};

/// Smallest side size admitted for a bag of `size` nodes.
std::size_t min_balanced_side(std::size_t size);

/// Throws DomainError for bags with fewer than two nodes and CapacityError
/// when the Exact strategy is asked to enumerate beyond its limit.
BalancedCutResult balanced_cut(const WeightedGraph& g, const Bag& bag, CutStrategy strategy,
                               const BalancedCutOptions& options = {});

/// Approximate Fiedler vector of the Laplacian of G[bag], indexed like the
/// bag members. Power iteration on (sigma I - L) with the constant vector
/// projected out.
std::vector<double> fiedler_vector(const WeightedGraph& g, const Bag& bag,
                                   const BalancedCutOptions& options = {});

}  // namespace curenet
