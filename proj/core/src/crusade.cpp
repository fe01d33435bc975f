#include "curenet/crusade.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "curenet/errors.hpp"

namespace curenet {

__extension__ typedef __int128 wide_int;

namespace {

void appr_impe_into(const WeightedGraph& g, const Bag& bag, CutStrategy strategy,
                    const BalancedCutOptions& options, std::vector<NodeId>& order) {
  if (bag.size() == 1) {
    order.push_back(bag[0]);
    return;
  }
  auto cut = balanced_cut(g, bag, strategy, options);
  appr_impe_into(g, cut.side_one, strategy, options, order);
  appr_impe_into(g, cut.side_two, strategy, options, order);
}

}  // namespace

Crusade appr_impe(const WeightedGraph& g, const Bag& bag, CutStrategy strategy,
                  const BalancedCutOptions& options) {
  if (bag.empty()) throw DomainError("appr_impe needs a nonempty bag");
  std::vector<NodeId> order;
  order.reserve(bag.size());
  appr_impe_into(g, bag, strategy, options, order);
  return Crusade(bag, std::move(order));
}

DecompositionTree::DecompositionTree(std::vector<Node> nodes) : nodes_(std::move(nodes)) {
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const auto& n = nodes_[i];
    if ((n.children[0] < 0) != (n.children[1] < 0)) {
      throw StructureError("decomposition tree node with a single child");
    }
    if (n.is_leaf() && n.bag.size() != 1) {
      throw StructureError("decomposition tree leaf must hold exactly one node");
    }
    for (int c : n.children) {
      if (c < 0) continue;
      if (static_cast<std::size_t>(c) <= i || static_cast<std::size_t>(c) >= nodes_.size() ||
          nodes_[static_cast<std::size_t>(c)].parent != static_cast<int>(i)) {
        throw StructureError("decomposition tree children must follow their parent");
      }
    }
    if (n.parent_weight < 0) throw StructureError("negative decomposition tree weight");
  }
}

Rational DecompositionTree::separation_cost(const Bag& side) const {
  // cost[v][l]: cheapest labelling of v's subtree with v labelled l.
  std::vector<std::array<Rational, 2>> cost(nodes_.size());
  const Rational inf = Rational(1) + std::accumulate(
      nodes_.begin(), nodes_.end(), Rational(0),
      [](Rational acc, const Node& n) { return acc + n.parent_weight; });
  for (std::size_t i = nodes_.size(); i-- > 0;) {
    const auto& n = nodes_[i];
    if (n.is_leaf()) {
      bool in = side.contains(n.leaf_node());
      cost[i][0] = in ? Rational(0) : inf;
      cost[i][1] = in ? inf : Rational(0);
      continue;
    }
    for (int l = 0; l < 2; ++l) {
      Rational total = 0;
      for (int c : n.children) {
        const auto& child = cost[static_cast<std::size_t>(c)];
        const Rational& w = nodes_[static_cast<std::size_t>(c)].parent_weight;
        Rational keep = child[static_cast<std::size_t>(l)];
        Rational flip = child[static_cast<std::size_t>(1 - l)] + w;
        total += keep < flip ? keep : flip;
      }
      cost[i][static_cast<std::size_t>(l)] = total;
    }
  }
  if (nodes_.empty()) return 0;
  return std::min(cost[0][0], cost[0][1]);
}

DecompositionTree build_decomposition_tree(const WeightedGraph& g, const Bag& bag,
                                           CutStrategy strategy,
                                           const BalancedCutOptions& options) {
  if (bag.empty()) throw DomainError("decomposition tree needs a nonempty bag");
  std::vector<DecompositionTree::Node> nodes;
  nodes.push_back({bag, -1, {-1, -1}, Rational(0)});
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].bag.size() < 2) continue;
    auto cut = balanced_cut(g, nodes[i].bag, strategy, options);
    for (int side = 0; side < 2; ++side) {
      Bag child = side == 0 ? std::move(cut.side_one) : std::move(cut.side_two);
      Rational w = cut_within(g, child, bag);
      nodes[i].children[static_cast<std::size_t>(side)] = static_cast<int>(nodes.size());
      nodes.push_back({std::move(child), static_cast<int>(i), {-1, -1}, std::move(w)});
    }
  }
  return DecompositionTree(std::move(nodes));
}

namespace {

// Mixed-radix index over per-group counts 0..pop_h.
struct CountSpace {
  std::vector<std::int64_t> pop;
  std::vector<std::size_t> stride;
  std::size_t size = 1;

  explicit CountSpace(std::vector<std::int64_t> population) : pop(std::move(population)) {
    stride.resize(pop.size());
    for (std::size_t h = 0; h < pop.size(); ++h) {
      stride[h] = size;
      size *= static_cast<std::size_t>(pop[h] + 1);
    }
  }

  std::vector<std::int64_t> decode(std::size_t code) const {
    std::vector<std::int64_t> out(pop.size());
    for (std::size_t h = 0; h < pop.size(); ++h) {
      out[h] = static_cast<std::int64_t>(code / stride[h] % static_cast<std::size_t>(pop[h] + 1));
    }
    return out;
  }

  std::size_t encode(const std::vector<std::int64_t>& counts) const {
    std::size_t code = 0;
    for (std::size_t h = 0; h < pop.size(); ++h) code += static_cast<std::size_t>(counts[h]) * stride[h];
    return code;
  }
};

struct Choice {
  std::uint8_t left_label = 0;
  std::uint8_t right_label = 0;
  std::size_t left_code = 0;
  std::size_t right_code = 0;
};

// Integer view of the tree weights over a common denominator, when it fits.
std::optional<std::vector<std::int64_t>> scaled_tree_weights(const DecompositionTree& tree) {
  mpz_class lcm = 1;
  for (const auto& n : tree.nodes()) {
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), n.parent_weight.get_den_mpz_t());
    if (lcm > (mpz_class(1) << 40)) return std::nullopt;
  }
  mpz_class total = 0;
  std::vector<std::int64_t> out;
  for (const auto& n : tree.nodes()) {
    mpz_class num = n.parent_weight.get_num() * (lcm / n.parent_weight.get_den());
    total += num;
    if (total > (mpz_class(1) << 60)) return std::nullopt;
    out.push_back(num.get_si());
  }
  return out;
}

template <class Value>
class PartitionDp {
 public:
  PartitionDp(const DecompositionTree& tree, const FairnessSpec& spec, std::size_t target,
              const PartitionFairness& fairness, std::vector<Value> weights)
      : tree_(tree), spec_(spec), target_(static_cast<std::int64_t>(target)),
        fairness_(fairness), weights_(std::move(weights)), groups_(spec.group_count()) {}

  std::optional<std::pair<Value, Bag>> solve() {
    const auto& nodes = tree_.nodes();
    spaces_.reserve(nodes.size());
    for (const auto& n : nodes) spaces_.emplace_back(population(n.bag));
    values_.resize(nodes.size());
    feasible_.resize(nodes.size());
    choices_.resize(nodes.size());
    for (std::size_t i = nodes.size(); i-- > 0;) fill(i);

    const CountSpace& root = spaces_[0];
    std::optional<std::size_t> best;
    std::vector<std::int64_t> best_counts;
    wide_int best_distance = 0;
    for (std::size_t slot = 0; slot < 2 * root.size; ++slot) {
      if (!feasible_[0][slot]) continue;
      auto counts = root.decode(slot % root.size);
      if (std::accumulate(counts.begin(), counts.end(), std::int64_t{0}) != target_) continue;
      if (!passes(counts)) continue;
      wide_int distance = 0;
      for (std::size_t h = 0; h < groups_; ++h) {
        wide_int diff = static_cast<wide_int>(counts[h]) * fairness_.reference_total -
                        static_cast<wide_int>(ref(h)) * target_;
        distance += diff < 0 ? -diff : diff;
      }
      bool better = !best || values_[0][slot] < values_[0][*best] ||
                    (values_[0][slot] == values_[0][*best] &&
                     (distance < best_distance ||
                      (distance == best_distance && counts < best_counts)));
      if (better) {
        best = slot;
        best_counts = std::move(counts);
        best_distance = distance;
      }
    }
    if (!best) return std::nullopt;

    std::vector<NodeId> part;
    collect(0, static_cast<std::uint8_t>(*best / root.size), *best % root.size, part);
    std::sort(part.begin(), part.end());
    return std::make_pair(values_[0][*best], Bag(std::move(part)));
  }

 private:
  std::int64_t ref(std::size_t h) const {
    return h < fairness_.reference_counts.size() ? fairness_.reference_counts[h] : 0;
  }

  std::vector<std::int64_t> population(const Bag& bag) const {
    std::vector<std::int64_t> pop(groups_, 0);
    for (NodeId v : bag) ++pop[spec_.group_of(v)];
    return pop;
  }

  bool passes(const std::vector<std::int64_t>& counts) const {
    if (!segment_is_fair(counts, target_, fairness_.reference_counts,
                         fairness_.reference_total, fairness_.gamma)) {
      return false;
    }
    if (!fairness_.check_rest) return true;
    const auto& pop = spaces_[0].pop;
    std::vector<std::int64_t> rest(groups_);
    std::int64_t rest_size = 0;
    for (std::size_t h = 0; h < groups_; ++h) {
      rest[h] = pop[h] - counts[h];
      rest_size += rest[h];
    }
    return segment_is_fair(rest, rest_size, fairness_.reference_counts,
                           fairness_.reference_total, fairness_.gamma);
  }

  void fill(std::size_t i) {
    const auto& n = tree_.node(i);
    const CountSpace& space = spaces_[i];
    values_[i].assign(2 * space.size, Value{});
    feasible_[i].assign(2 * space.size, 0);
    if (n.is_leaf()) {
      // Label 0 puts the leaf into part zero.
      std::vector<std::int64_t> counts(groups_, 0);
      feasible_[i][space.size + 0] = 1;
      counts[spec_.group_of(n.leaf_node())] = 1;
      feasible_[i][space.encode(counts)] = 1;
      return;
    }
    choices_[i].assign(2 * space.size, Choice{});
    const auto left = static_cast<std::size_t>(n.children[0]);
    const auto right = static_cast<std::size_t>(n.children[1]);
    const CountSpace& ls = spaces_[left];
    const CountSpace& rs = spaces_[right];
    std::vector<std::vector<std::int64_t>> rdecoded(rs.size);
    for (std::size_t c = 0; c < rs.size; ++c) rdecoded[c] = rs.decode(c);

    for (std::size_t lslot = 0; lslot < 2 * ls.size; ++lslot) {
      if (!feasible_[left][lslot]) continue;
      const auto ll = static_cast<std::uint8_t>(lslot / ls.size);
      const std::size_t lcode = lslot % ls.size;
      auto lcounts = ls.decode(lcode);
      std::int64_t lsum = std::accumulate(lcounts.begin(), lcounts.end(), std::int64_t{0});
      if (lsum > target_) continue;
      for (std::size_t rslot = 0; rslot < 2 * rs.size; ++rslot) {
        if (!feasible_[right][rslot]) continue;
        const auto rl = static_cast<std::uint8_t>(rslot / rs.size);
        const std::size_t rcode = rslot % rs.size;
        const auto& rcounts = rdecoded[rcode];
        std::vector<std::int64_t> sum(groups_);
        std::int64_t total = 0;
        for (std::size_t h = 0; h < groups_; ++h) {
          sum[h] = lcounts[h] + rcounts[h];
          total += sum[h];
        }
        if (total > target_) continue;
        const std::size_t code = space.encode(sum);
        const Value base = values_[left][lslot] + values_[right][rslot];
        for (std::uint8_t l = 0; l < 2; ++l) {
          Value v = base;
          if (l != ll) v = v + weights_[left];
          if (l != rl) v = v + weights_[right];
          const std::size_t slot = l * space.size + code;
          if (!feasible_[i][slot] || v < values_[i][slot]) {
            feasible_[i][slot] = 1;
            values_[i][slot] = std::move(v);
            choices_[i][slot] = Choice{ll, rl, lcode, rcode};
          }
        }
      }
    }
  }

  void collect(std::size_t i, std::uint8_t label, std::size_t code,
               std::vector<NodeId>& part) const {
    const auto& n = tree_.node(i);
    if (n.is_leaf()) {
      if (label == 0) part.push_back(n.leaf_node());
      return;
    }
    const Choice& c = choices_[i][label * spaces_[i].size + code];
    collect(static_cast<std::size_t>(n.children[0]), c.left_label, c.left_code, part);
    collect(static_cast<std::size_t>(n.children[1]), c.right_label, c.right_code, part);
  }

  const DecompositionTree& tree_;
  const FairnessSpec& spec_;
  std::int64_t target_;
  const PartitionFairness& fairness_;
  std::vector<Value> weights_;
  std::size_t groups_;
  std::vector<CountSpace> spaces_;
  std::vector<std::vector<Value>> values_;
  std::vector<std::vector<char>> feasible_;
  std::vector<std::vector<Choice>> choices_;
};

}  // namespace

std::optional<FairPartition> fair_partition_dp(const DecompositionTree& tree,
                                               const FairnessSpec& spec,
                                               std::size_t target_size,
                                               const PartitionFairness& fairness) {
  const std::size_t k = tree.leaf_count();
  if (target_size == 0 || target_size >= k) {
    throw DomainError("partition target size must lie in [1, " + std::to_string(k) + " - 1]");
  }
  if (spec.group_count() > kMaxPartitionGroups) {
    throw DomainError("fair partition supports at most 4 groups");
  }
  if (fairness.reference_total <= 0) throw DomainError("empty fairness reference");

  if (auto scaled = scaled_tree_weights(tree)) {
    PartitionDp<std::int64_t> dp(tree, spec, target_size, fairness, std::move(*scaled));
    auto out = dp.solve();
    if (!out) return std::nullopt;
    // Recompute exactly rather than unscale.
    Rational cut = tree.separation_cost(out->second);
    return FairPartition{std::move(cut), std::move(out->second)};
  }
  std::vector<Rational> weights;
  for (const auto& n : tree.nodes()) weights.push_back(n.parent_weight);
  PartitionDp<Rational> dp(tree, spec, target_size, fairness, std::move(weights));
  auto out = dp.solve();
  if (!out) return std::nullopt;
  return FairPartition{std::move(out->first), std::move(out->second)};
}

std::optional<FairPartition> fair_partition_dp(const DecompositionTree& tree,
                                               const FairnessSpec& spec,
                                               std::size_t target_size) {
  if (tree.nodes().empty()) throw DomainError("empty decomposition tree");
  PartitionFairness fairness;
  fairness.reference_counts = spec.counts(tree.root().bag.members());
  fairness.reference_total = static_cast<std::int64_t>(tree.leaf_count());
  fairness.gamma = spec.gamma();
  fairness.check_rest = true;
  return fair_partition_dp(tree, spec, target_size, fairness);
}

FairCrusadeResult fair_appr_impe(const WeightedGraph& g, const Bag& bag,
                                 const FairnessSpec& spec, CutStrategy strategy,
                                 const BalancedCutOptions& options) {
  if (bag.empty()) throw DomainError("fair_appr_impe needs a nonempty bag");
  spec.validate_for(bag.size());
  const auto& taus = spec.checkpoints();
  if (taus.empty()) return {appr_impe(g, bag, strategy, options), spec.gamma()};

  PartitionFairness fairness;
  fairness.reference_counts = spec.counts(bag.members());
  fairness.reference_total = static_cast<std::int64_t>(bag.size());
  fairness.gamma = taus.size() == 1 ? spec.gamma() : 2 * spec.gamma();

  std::vector<NodeId> order;
  order.reserve(bag.size());
  Bag remaining = bag;
  std::size_t previous = 0;
  for (std::size_t i = 0; i < taus.size(); ++i) {
    fairness.check_rest = i + 1 == taus.size() && spec.include_final_segment();
    auto tree = build_decomposition_tree(g, remaining, strategy, options);
    auto part = fair_partition_dp(tree, spec, taus[i] - previous, fairness);
    if (!part) return {std::nullopt, fairness.gamma};
    auto head = appr_impe(g, part->part_zero, strategy, options);
    order.insert(order.end(), head.removal_order().begin(), head.removal_order().end());
    remaining = remaining.minus(part->part_zero);
    previous = taus[i];
  }
  auto tail = appr_impe(g, remaining, strategy, options);
  order.insert(order.end(), tail.removal_order().begin(), tail.removal_order().end());
  return {Crusade(bag, std::move(order)), fairness.gamma};
}

bool verify_doubling_condition(const FairnessSpec& spec) {
  const auto& taus = spec.checkpoints();
  for (std::size_t i = 1; i < taus.size(); ++i) {
    if (taus[i] - taus[i - 1] < taus[i - 1]) return false;
  }
  return true;
}

}  // namespace curenet
