#include "curenet/extinction.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <thread>

#include "curenet/errors.hpp"

namespace curenet {

double quantile(const std::vector<double>& sorted, double p) {
  if (sorted.empty()) return 0.0;
  double h = p * static_cast<double>(sorted.size() - 1);
  auto lo = static_cast<std::size_t>(std::floor(h));
  std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

ExtinctionSummary estimate_extinction(const WeightedGraph& g, const Bag& init,
                                      const PolicyConfig& cfg, std::size_t replicas,
                                      std::optional<double> time_cap, std::size_t threads) {
  if (replicas == 0) throw DomainError("need at least one replica");
  cfg.validate(g);
  PolicyConfig base = cfg;
  base.record_events = false;
  if (time_cap) base.time_cap = time_cap;
  if (base.kind == PolicyKind::MaxCutAdversarial && !base.plan_cache) {
    base.plan_cache = std::make_shared<PlanCache>();
  }

  ExtinctionSummary out;
  out.replicas = replicas;
  out.outcomes.resize(replicas);
  std::vector<std::exception_ptr> errors(replicas);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < replicas; i = next++) {
      PolicyConfig local = base;
      local.seed = cfg.seed + i;
      ReplicaOutcome& o = out.outcomes[i];
      o.seed = local.seed;
      try {
        SimTrajectory t = run_policy(g, init, local);
        o.extinction_time = t.extinction_time;
        o.censored = t.censored;
        o.transitions = t.transitions;
        o.drift_checks = t.drift_checks;
        o.design_cost = t.design_cost;
        o.fairness_fallback = t.fairness_fallback;
      } catch (const InvariantViolation& e) {
        o.violated = true;
        o.violation = e.what();
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, replicas);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  std::vector<double> times;
  for (const auto& o : out.outcomes) {
    out.censored += o.censored;
    out.violations += o.violated;
    out.fairness_fallbacks += o.fairness_fallback;
    out.drift_checks += o.drift_checks;
    if (o.extinction_time) times.push_back(*o.extinction_time);
  }
  if (!times.empty()) {
    double sum = 0;
    for (double t : times) sum += t;
    out.mean = sum / static_cast<double>(times.size());
    double ss = 0;
    for (double t : times) ss += (t - out.mean) * (t - out.mean);
    if (times.size() > 1) {
      out.standard_error =
          std::sqrt(ss / static_cast<double>(times.size() - 1) / static_cast<double>(times.size()));
    }
    std::sort(times.begin(), times.end());
    out.median = quantile(times, 0.5);
    out.q10 = quantile(times, 0.1);
    out.q90 = quantile(times, 0.9);
  }
  return out;
}

}  // namespace curenet
