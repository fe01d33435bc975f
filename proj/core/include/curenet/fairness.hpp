#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "curenet/graph.hpp"

namespace curenet {

using GroupId = std::uint32_t;

/// Group membership of every node, checkpoint positions along a crusade and
/// the fairness factor gamma >= 1.
///
/// A crusade is gamma-fair when, for every set S_i of nodes removed between
/// consecutive checkpoints and every group h,
///   |S_i ∩ V_h| < gamma * |p_0 ∩ V_h| / |p_0| * |S_i| + 1.
/// The segment after the last checkpoint is checked too unless
/// `include_final_segment` is cleared.
class FairnessSpec {
 public:
  FairnessSpec() = default;
  FairnessSpec(std::vector<GroupId> groups, std::vector<std::size_t> checkpoints,
               Rational gamma, bool include_final_segment = true);

  const std::vector<GroupId>& groups() const noexcept { return groups_; }
  GroupId group_of(NodeId node) const;
  std::size_t group_count() const noexcept { return group_count_; }
  const std::vector<std::size_t>& checkpoints() const noexcept { return checkpoints_; }
  const Rational& gamma() const noexcept { return gamma_; }
  bool include_final_segment() const noexcept { return include_final_; }

  FairnessSpec with_checkpoints(std::vector<std::size_t> checkpoints) const;
  FairnessSpec with_gamma(Rational gamma) const;

  /// Throws DomainError unless 0 < tau_1 < ... < tau_s < length.
  void validate_for(std::size_t crusade_length) const;

  /// Per-group member counts of `bag`.
  std::vector<std::int64_t> counts(std::span<const NodeId> nodes) const;

 private:
  std::vector<GroupId> groups_;
  std::size_t group_count_ = 0;
  std::vector<std::size_t> checkpoints_;
  Rational gamma_{1};
  bool include_final_ = true;
};

/// Strict fairness inequality for one removed set, in exact arithmetic:
/// count_h * total < gamma * reference_h * size + total for every h.
bool segment_is_fair(std::span<const std::int64_t> segment_counts,
                     std::int64_t segment_size,
                     std::span<const std::int64_t> reference_counts,
                     std::int64_t reference_total, const Rational& gamma);

/// Checks every inter-checkpoint segment of `p` against the proportions of
/// p_0. True when the spec has no checkpoints.
bool is_gamma_fair(const Crusade& p, const FairnessSpec& spec);

/// Same test at an explicit factor (used for the doubled-gamma guarantee).
bool is_gamma_fair(const Crusade& p, const FairnessSpec& spec, const Rational& gamma);

}  // namespace curenet
