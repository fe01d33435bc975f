#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "curenet/policies.hpp"

namespace curenet {

struct ReplicaOutcome {
  std::uint64_t seed = 0;
  std::optional<double> extinction_time;  ///< nullopt: censored or violated
  bool censored = false;
  bool violated = false;
  std::string violation;
  std::size_t transitions = 0;
  std::size_t drift_checks = 0;
  Rational design_cost;
  bool fairness_fallback = false;
};

struct ExtinctionSummary {
  std::size_t replicas = 0;
  std::size_t censored = 0;
  std::size_t violations = 0;
  std::size_t fairness_fallbacks = 0;
  std::size_t drift_checks = 0;
  /// Statistics over the replicas that went extinct.
  double mean = 0;
  double standard_error = 0;
  double median = 0;
  double q10 = 0;
  double q90 = 0;
  std::vector<ReplicaOutcome> outcomes;  ///< in replica order
};

/// Runs `replicas` independent trajectories, replica i seeded with cfg.seed + i,
/// spread over `threads` workers (0 = hardware concurrency). Invariant
/// violations are recorded per replica rather than thrown; other errors
/// propagate. Results do not depend on the thread count.
ExtinctionSummary estimate_extinction(const WeightedGraph& g, const Bag& init,
                                      const PolicyConfig& cfg, std::size_t replicas,
                                      std::optional<double> time_cap = std::nullopt,
                                      std::size_t threads = 0);

/// Linear-interpolation quantile of sorted data (type 7).
double quantile(const std::vector<double>& sorted, double p);

}  // namespace curenet
