#include "curenet/exact.hpp"

#include <bit>
#include <unordered_map>

#include "curenet/errors.hpp"
#include "exact_arith.hpp"

namespace curenet {

using detail::LocalBag;

RestrictedMaxCut restricted_max_cut_exact(const WeightedGraph& g, const Bag& bag,
                                          std::size_t limit) {
  detail::check_capacity(bag.size(), limit, "restricted_max_cut_exact");
  LocalBag local(g, bag);
  return detail::with_exact_arith(g, [&](const auto& arith) {
    auto cut = detail::subset_cuts(g, local, arith, true);
    std::uint32_t best = 0;
    for (std::uint32_t mask = 1; mask < cut.size(); ++mask) {
      if (cut[mask] > cut[best]) best = mask;
    }
    return RestrictedMaxCut{arith.to_rational(cut[best]), detail::bag_from_mask(local, best)};
  });
}

ImpedanceResult impedance_exact(const WeightedGraph& g, const Bag& bag, std::size_t limit) {
  detail::check_capacity(bag.size(), limit, "impedance_exact");
  LocalBag local(g, bag);
  const std::size_t k = local.size();
  return detail::with_exact_arith(g, [&](const auto& arith) {
    using Value = typename std::decay_t<decltype(arith)>::Value;
    auto cut = detail::subset_cuts(g, local, arith, true);
    std::vector<Value> delta(cut.size(), arith.zero());
    for (std::uint32_t mask = 1; mask < cut.size(); ++mask) {
      std::uint32_t bits = mask;
      std::uint32_t low = bits & (~bits + 1);
      const Value* best = &delta[mask ^ low];
      for (bits &= bits - 1; bits != 0; bits &= bits - 1) {
        std::uint32_t bit = bits & (~bits + 1);
        if (delta[mask ^ bit] < *best) best = &delta[mask ^ bit];
      }
      delta[mask] = cut[mask] > *best ? cut[mask] : *best;
    }

    std::vector<NodeId> order;
    order.reserve(k);
    std::uint32_t mask = static_cast<std::uint32_t>(cut.size() - 1);
    while (mask != 0) {
      int choice = -1;
      for (std::size_t u = 0; u < k; ++u) {
        if (!(mask >> u & 1U)) continue;
        if (choice < 0 || delta[mask ^ (1U << u)] < delta[mask ^ (1U << choice)]) {
          choice = static_cast<int>(u);
        }
      }
      order.push_back(local.nodes[static_cast<std::size_t>(choice)]);
      mask ^= 1U << choice;
    }
    return ImpedanceResult{arith.to_rational(delta.back()), Crusade(bag, std::move(order))};
  });
}

namespace {

template <class Arith>
class FairImpedanceSearch {
 public:
  using Value = typename Arith::Value;

  FairImpedanceSearch(const WeightedGraph& g, const LocalBag& local, const FairnessSpec& spec,
                      const Arith& arith)
      : local_(local), spec_(spec), arith_(arith), k_(local.size()) {
    cut_ = detail::subset_cuts(g, local, arith, true);
    groups_ = spec.group_count();
    if (groups_ > 8) throw DomainError("fair_impedance_exact supports at most 8 groups");
    group_masks_.assign(groups_, 0);
    for (std::size_t i = 0; i < k_; ++i) {
      group_masks_[spec.group_of(local.nodes[i])] |= 1U << i;
    }
    full_ = static_cast<std::uint32_t>((std::size_t{1} << k_) - 1);
    reference_ = counts(full_);
    is_checkpoint_.assign(k_ + 1, false);
    for (std::size_t tau : spec.checkpoints()) is_checkpoint_[tau] = true;
    final_checked_ = spec.include_final_segment() && !spec.checkpoints().empty();
  }

  std::optional<Value> solve() { return best(full_, reference_); }

  std::vector<NodeId> order() {
    std::vector<NodeId> out;
    std::uint32_t mask = full_;
    auto prev = reference_;
    while (mask != 0) {
      const auto& entry = memo_.at(key(mask, prev));
      unsigned u = static_cast<unsigned>(entry.choice);
      out.push_back(local_.nodes[u]);
      mask ^= 1U << u;
      if (is_checkpoint_[k_ - std::popcount(mask)]) prev = counts(mask);
    }
    return out;
  }

 private:
  struct Entry {
    std::optional<Value> value;
    int choice = -1;
  };

  std::vector<std::int64_t> counts(std::uint32_t mask) const {
    std::vector<std::int64_t> out(groups_);
    for (std::size_t h = 0; h < groups_; ++h) out[h] = std::popcount(mask & group_masks_[h]);
    return out;
  }

  std::uint64_t key(std::uint32_t mask, const std::vector<std::int64_t>& prev) const {
    std::uint64_t code = 0;
    for (auto c : prev) code = code * (k_ + 1) + static_cast<std::uint64_t>(c);
    return code << 20 | mask;
  }

  bool segment_fair(const std::vector<std::int64_t>& prev, std::uint32_t after) const {
    auto now = counts(after);
    std::vector<std::int64_t> seg(groups_);
    std::int64_t size = 0;
    for (std::size_t h = 0; h < groups_; ++h) {
      seg[h] = prev[h] - now[h];
      size += seg[h];
    }
    return segment_is_fair(seg, size, reference_, static_cast<std::int64_t>(k_), spec_.gamma());
  }

  std::optional<Value> best(std::uint32_t mask, const std::vector<std::int64_t>& prev) {
    if (mask == 0) {
      if (final_checked_ && !segment_fair(prev, 0)) return std::nullopt;
      return arith_.zero();
    }
    std::uint64_t id = key(mask, prev);
    if (auto it = memo_.find(id); it != memo_.end()) return it->second.value;

    Entry entry;
    for (std::size_t u = 0; u < k_; ++u) {
      if (!(mask >> u & 1U)) continue;
      std::uint32_t next = mask ^ (1U << u);
      std::size_t position = k_ - static_cast<std::size_t>(std::popcount(next));
      std::optional<Value> sub;
      if (is_checkpoint_[position]) {
        if (!segment_fair(prev, next)) continue;
        sub = best(next, counts(next));
      } else {
        sub = best(next, prev);
      }
      if (sub && (!entry.value || *sub < *entry.value)) {
        entry.value = std::move(sub);
        entry.choice = static_cast<int>(u);
      }
    }
    if (entry.value && cut_[mask] > *entry.value) entry.value = cut_[mask];
    auto result = entry.value;
    memo_.emplace(id, std::move(entry));
    return result;
  }

  const LocalBag& local_;
  const FairnessSpec& spec_;
  const Arith& arith_;
  std::size_t k_;
  std::size_t groups_ = 0;
  std::vector<Value> cut_;
  std::vector<std::uint32_t> group_masks_;
  std::uint32_t full_ = 0;
  std::vector<std::int64_t> reference_;
  std::vector<bool> is_checkpoint_;
  bool final_checked_ = false;
  std::unordered_map<std::uint64_t, Entry> memo_;
};

}  // namespace

std::optional<ImpedanceResult> fair_impedance_exact(const WeightedGraph& g, const Bag& bag,
                                                    const FairnessSpec& spec,
                                                    std::size_t limit) {
  detail::check_capacity(bag.size(), limit, "fair_impedance_exact");
  spec.validate_for(bag.size());
  if (spec.checkpoints().empty()) return impedance_exact(g, bag, limit);

  LocalBag local(g, bag);
  return detail::with_exact_arith(g, [&](const auto& arith) -> std::optional<ImpedanceResult> {
    FairImpedanceSearch search(g, local, spec, arith);
    auto value = search.solve();
    if (!value) return std::nullopt;
    return ImpedanceResult{arith.to_rational(*value), Crusade(bag, search.order())};
  });
}

}  // namespace curenet
