#include "curenet/fairness.hpp"

#include <algorithm>

#include "curenet/errors.hpp"

namespace curenet {

__extension__ typedef __int128 wide_int;

FairnessSpec::FairnessSpec(std::vector<GroupId> groups,
                           std::vector<std::size_t> checkpoints, Rational gamma,
                           bool include_final_segment)
    : groups_(std::move(groups)),
      checkpoints_(std::move(checkpoints)),
      gamma_(std::move(gamma)),
      include_final_(include_final_segment) {
  if (gamma_ < 1) throw DomainError("fairness factor gamma must be >= 1");
  if (!to_int64_pair(gamma_)) throw DomainError("fairness factor has too large a denominator");
  for (GroupId h : groups_) group_count_ = std::max<std::size_t>(group_count_, h + 1);
  for (std::size_t i = 0; i < checkpoints_.size(); ++i) {
    if (checkpoints_[i] == 0 || (i > 0 && checkpoints_[i] <= checkpoints_[i - 1])) {
      throw DomainError("checkpoints must be positive and strictly increasing");
    }
  }
}

GroupId FairnessSpec::group_of(NodeId node) const {
  if (node >= groups_.size()) {
    throw DomainError("node " + std::to_string(node) + " has no group assignment");
  }
  return groups_[node];
}

FairnessSpec FairnessSpec::with_checkpoints(std::vector<std::size_t> checkpoints) const {
  return FairnessSpec(groups_, std::move(checkpoints), gamma_, include_final_);
}

FairnessSpec FairnessSpec::with_gamma(Rational gamma) const {
  return FairnessSpec(groups_, checkpoints_, std::move(gamma), include_final_);
}

void FairnessSpec::validate_for(std::size_t crusade_length) const {
  for (std::size_t tau : checkpoints_) {
    if (tau == 0 || tau >= crusade_length) {
      throw DomainError("checkpoint " + std::to_string(tau) +
                        " outside (0, " + std::to_string(crusade_length) + ")");
    }
  }
}

std::vector<std::int64_t> FairnessSpec::counts(std::span<const NodeId> nodes) const {
  std::vector<std::int64_t> out(group_count_, 0);
  for (NodeId v : nodes) ++out[group_of(v)];
  return out;
}

bool segment_is_fair(std::span<const std::int64_t> segment_counts,
                     std::int64_t segment_size,
                     std::span<const std::int64_t> reference_counts,
                     std::int64_t reference_total, const Rational& gamma) {
  auto frac = to_int64_pair(gamma);
  if (!frac) throw DomainError("fairness factor has too large a denominator");
  const wide_int num = frac->first;
  const wide_int den = frac->second;
  const wide_int total = reference_total;
  for (std::size_t h = 0; h < segment_counts.size(); ++h) {
    wide_int ref = h < reference_counts.size() ? reference_counts[h] : 0;
    // count < gamma * ref / total * size + 1, scaled by total * den.
    wide_int lhs = static_cast<wide_int>(segment_counts[h]) * total * den;
    wide_int rhs = num * ref * segment_size + total * den;
    if (!(lhs < rhs)) return false;
  }
  return true;
}

bool is_gamma_fair(const Crusade& p, const FairnessSpec& spec) {
  return is_gamma_fair(p, spec, spec.gamma());
}

bool is_gamma_fair(const Crusade& p, const FairnessSpec& spec, const Rational& gamma) {
  const auto& taus = spec.checkpoints();
  spec.validate_for(p.length());
  if (taus.empty()) return true;

  auto reference = spec.counts(p.start().members());
  auto total = static_cast<std::int64_t>(p.start().size());
  const auto& order = p.removal_order();

  std::vector<std::size_t> bounds{0};
  bounds.insert(bounds.end(), taus.begin(), taus.end());
  if (spec.include_final_segment()) bounds.push_back(p.length());

  for (std::size_t i = 0; i + 1 < bounds.size(); ++i) {
    std::span<const NodeId> segment(order.data() + bounds[i], bounds[i + 1] - bounds[i]);
    auto counts = spec.counts(segment);
    if (!segment_is_fair(counts, static_cast<std::int64_t>(segment.size()), reference,
                         total, gamma)) {
      return false;
    }
  }
  return true;
}

}  // namespace curenet
