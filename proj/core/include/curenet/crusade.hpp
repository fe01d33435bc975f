#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "curenet/balanced_cut.hpp"
#include "curenet/fairness.hpp"
#include "curenet/graph.hpp"

namespace curenet {

/// Recursive balanced-cut crusade from `bag` to the empty bag: the crusade of
/// side_one runs first with side_two kept in every bag, then side_two's.
Crusade appr_impe(const WeightedGraph& g, const Bag& bag,
                  CutStrategy strategy = CutStrategy::Auto,
                  const BalancedCutOptions& options = {});

/// Binary tree over a bag obtained from recursive balanced cuts. Node 0 is the
/// root. Each non-root node carries the cut of its bag inside G[root bag].
class DecompositionTree {
 public:
  struct Node {
    Bag bag;
    int parent = -1;
    std::array<int, 2> children{-1, -1};
    Rational parent_weight;

    bool is_leaf() const noexcept { return children[0] < 0; }
    NodeId leaf_node() const { return bag[0]; }
  };

  DecompositionTree() = default;
  explicit DecompositionTree(std::vector<Node> nodes);

  const std::vector<Node>& nodes() const noexcept { return nodes_; }
  const Node& node(std::size_t i) const { return nodes_.at(i); }
  const Node& root() const { return nodes_.at(0); }
  std::size_t leaf_count() const { return nodes_.empty() ? 0 : root().bag.size(); }

  /// Minimum total weight of tree edges separating `side` from the rest of
  /// the leaves (internal labels chosen freely).
  Rational separation_cost(const Bag& side) const;

 private:
  std::vector<Node> nodes_;
};

DecompositionTree build_decomposition_tree(const WeightedGraph& g, const Bag& bag,
                                           CutStrategy strategy = CutStrategy::Auto,
                                           const BalancedCutOptions& options = {});

/// Fairness test applied at the root of the partition DP. Counts of the chosen
/// part (and, with `check_rest`, of the remaining leaves) are compared against
/// `reference_counts / reference_total` at factor `gamma`.
struct PartitionFairness {
  std::vector<std::int64_t> reference_counts;
  std::int64_t reference_total = 0;
  Rational gamma{1};
  bool check_rest = true;
};

struct FairPartition {
  Rational cut;
  Bag part_zero;
};

/// Largest supported number of groups in the partition DP.
inline constexpr std::size_t kMaxPartitionGroups = 4;

/// Minimum tree cut over leaf subsets of size `target_size` that pass the
/// fairness test. nullopt when no such subset exists. Ties prefer part-zero
/// group counts closest to exact proportionality (L1), then lexicographically
/// smaller count vectors.
std::optional<FairPartition> fair_partition_dp(const DecompositionTree& tree,
                                               const FairnessSpec& spec,
                                               std::size_t target_size,
                                               const PartitionFairness& fairness);

/// Reference proportions taken from the tree's own leaves, factor spec.gamma(),
/// both parts checked.
std::optional<FairPartition> fair_partition_dp(const DecompositionTree& tree,
                                               const FairnessSpec& spec,
                                               std::size_t target_size);

struct FairCrusadeResult {
  std::optional<Crusade> crusade;  ///< nullopt: the partition DP found no fair split
  Rational guaranteed_gamma;       ///< gamma for one checkpoint, 2*gamma for more
};

/// Sequential fair partitions at each checkpoint followed by appr_impe inside
/// each part. Fairness is always measured against the group proportions of
/// `bag`. With several checkpoints every partition is solved at factor 2*gamma.
FairCrusadeResult fair_appr_impe(const WeightedGraph& g, const Bag& bag,
                                 const FairnessSpec& spec,
                                 CutStrategy strategy = CutStrategy::Auto,
                                 const BalancedCutOptions& options = {});

/// tau_i - tau_{i-1} >= tau_{i-1} for every i >= 2.
bool verify_doubling_condition(const FairnessSpec& spec);

}  // namespace curenet
