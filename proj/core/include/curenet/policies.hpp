#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "curenet/balanced_cut.hpp"
#include "curenet/fairness.hpp"
#include "curenet/netdesign.hpp"
#include "curenet/sis.hpp"

namespace curenet {

enum class PolicyKind { Cure, FairCure, DesignCure, MaxCutAdversarial, Baseline };
enum class Adversary { Uniform, AntiGreedy };

PolicyKind parse_policy_kind(std::string_view name);
std::string_view to_string(PolicyKind kind);
Adversary parse_adversary(std::string_view name);
std::string_view to_string(Adversary adversary);

/// Largest width / impedance ratio of appr_impe (exact balanced cuts) seen on
/// all connected graphs of the regression corpus, used as the default alpha.
inline constexpr double kDefaultAlpha = 2.25;

/// Restricted max-cut designs keyed by bag. Budget search is deterministic, so
/// sharing one cache between replicas does not change any trajectory.
class PlanCache {
 public:
  std::shared_ptr<const ReductionPlan> find(const Bag& bag) const;
  void store(const Bag& bag, std::shared_ptr<const ReductionPlan> plan);

 private:
  mutable std::mutex mutex_;
  std::map<Bag, std::shared_ptr<const ReductionPlan>> plans_;
};

struct PolicyConfig {
  PolicyKind kind = PolicyKind::Cure;
  Rational r{1};            ///< curing budget (r' for the max-cut policy)
  Rational alpha = from_double(kDefaultAlpha);
  CutStrategy strategy = CutStrategy::Auto;
  std::optional<FairnessSpec> fairness;  ///< FairCure only
  Adversary adversary = Adversary::Uniform;
  std::optional<Rational> design_eps;    ///< budget-search precision, default r/64
  bool idle_waiting = false;
  Rational restart_divisor{4};  ///< design policy restarts once divisor * d_max * |D| >= r
  std::uint64_t seed = 0;
  std::optional<double> time_cap;        ///< default 1000 n / r
  bool record_events = true;
  std::shared_ptr<PlanCache> plan_cache;

  /// Throws DomainError when a parameter required by `kind` is missing or out
  /// of range.
  void validate(const WeightedGraph& g) const;
  double effective_time_cap(const WeightedGraph& g) const;
};

struct SimEvent {
  double time;
  EventKind kind;
  std::int64_t node = -1;  ///< -1 for phase events
  std::string detail;
};

struct SimTrajectory {
  std::vector<SimEvent> events;  ///< empty unless record_events
  std::optional<double> extinction_time;  ///< nullopt when censored
  double end_time = 0.0;
  bool censored = false;
  std::size_t transitions = 0;
  std::size_t segments = 0;
  std::size_t waiting_periods = 0;
  std::size_t designs = 0;
  std::vector<Rational> segment_max_cut;
  Rational design_cost;          ///< summed plan costs
  std::size_t crusades_checked = 0;
  std::size_t crusades_fair = 0;
  bool fairness_fallback = false;
  std::size_t drift_checks = 0;  ///< events at which the policy's bound was asserted
};

SimTrajectory run_cure_policy(const WeightedGraph& g, const Bag& init, const PolicyConfig& cfg);
SimTrajectory run_fair_cure_policy(const WeightedGraph& g, const Bag& init,
                                   const PolicyConfig& cfg);
SimTrajectory run_design_cure_policy(const WeightedGraph& g, const Bag& init,
                                     const PolicyConfig& cfg);
SimTrajectory run_maxcut_policy(const WeightedGraph& g, const Bag& init,
                                const PolicyConfig& cfg);
SimTrajectory run_baseline_policy(const WeightedGraph& g, const Bag& init,
                                  const PolicyConfig& cfg);

/// Dispatches on cfg.kind.
SimTrajectory run_policy(const WeightedGraph& g, const Bag& init, const PolicyConfig& cfg);

/// log2(n) floored at 1, the factor used by the waiting-period threshold.
double policy_log2(std::size_t n);

}  // namespace curenet
