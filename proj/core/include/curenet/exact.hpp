#pragma once

#include <cstddef>
#include <optional>

#include "curenet/fairness.hpp"
#include "curenet/graph.hpp"

namespace curenet {

/// Default enumeration limits of the exponential-time oracles.
inline constexpr std::size_t kExhaustiveLimit = 20;
inline constexpr std::size_t kFairExhaustiveLimit = 14;

struct RestrictedMaxCut {
  Rational value;
  Bag maximizer;
};

/// phi(a) = max_{Q ⊆ a} c(Q), by enumerating all subsets of the bag.
/// The maximizer with the smallest subset mask (ascending ids) is returned.
RestrictedMaxCut restricted_max_cut_exact(const WeightedGraph& g, const Bag& bag,
                                          std::size_t limit = kExhaustiveLimit);

struct ImpedanceResult {
  Rational width;
  Crusade crusade;
};

/// delta(a) and an optimal crusade from a to the empty bag, by subset dynamic
/// programming on delta(S) = max(c(S), min_{u in S} delta(S - u)).
/// Ties prefer removing the lowest node id first.
ImpedanceResult impedance_exact(const WeightedGraph& g, const Bag& bag,
                                std::size_t limit = kExhaustiveLimit);

/// Minimum width over gamma-fair crusades from a to the empty bag. Returns
/// nullopt when no fair crusade exists. Checkpoints are positions along the
/// crusade of `bag`.
std::optional<ImpedanceResult> fair_impedance_exact(const WeightedGraph& g, const Bag& bag,
                                                    const FairnessSpec& spec,
                                                    std::size_t limit = kFairExhaustiveLimit);

}  // namespace curenet
