#include "curenet/policies.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "curenet/crusade.hpp"
#include "curenet/errors.hpp"

namespace curenet {

PolicyKind parse_policy_kind(std::string_view name) {
  if (name == "cure") return PolicyKind::Cure;
  if (name == "fair") return PolicyKind::FairCure;
  if (name == "design") return PolicyKind::DesignCure;
  if (name == "maxcut") return PolicyKind::MaxCutAdversarial;
  if (name == "baseline") return PolicyKind::Baseline;
  throw DomainError("unknown policy '" + std::string(name) + "'");
}

std::string_view to_string(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::Cure: return "cure";
    case PolicyKind::FairCure: return "fair";
    case PolicyKind::DesignCure: return "design";
    case PolicyKind::MaxCutAdversarial: return "maxcut";
    case PolicyKind::Baseline: return "baseline";
  }
  return "unknown";
}

Adversary parse_adversary(std::string_view name) {
  if (name == "uniform") return Adversary::Uniform;
  if (name == "anti-greedy") return Adversary::AntiGreedy;
  throw DomainError("unknown adversary '" + std::string(name) + "'");
}

std::string_view to_string(Adversary adversary) {
  return adversary == Adversary::Uniform ? "uniform" : "anti-greedy";
}

std::shared_ptr<const ReductionPlan> PlanCache::find(const Bag& bag) const {
  std::lock_guard lock(mutex_);
  auto it = plans_.find(bag);
  return it == plans_.end() ? nullptr : it->second;
}

void PlanCache::store(const Bag& bag, std::shared_ptr<const ReductionPlan> plan) {
  std::lock_guard lock(mutex_);
  plans_.emplace(bag, std::move(plan));
}

double policy_log2(std::size_t n) {
  return std::max(1.0, std::log2(static_cast<double>(std::max<std::size_t>(n, 1))));
}

void PolicyConfig::validate(const WeightedGraph& g) const {
  if (r <= 0) throw DomainError("curing budget r must be positive");
  if (alpha <= 0) throw DomainError("alpha must be positive");
  if (restart_divisor <= 0) throw DomainError("threshold divisor must be positive");
  if (design_eps && *design_eps <= 0) throw DomainError("design eps must be positive");
  if (time_cap && !(*time_cap > 0)) throw DomainError("time cap must be positive");
  if (kind == PolicyKind::FairCure) {
    if (!fairness) throw DomainError("the fair policy needs a fairness spec");
    if (fairness->groups().size() != g.node_count()) {
      throw DomainError("group assignment does not cover every node");
    }
  }
}

double PolicyConfig::effective_time_cap(const WeightedGraph& g) const {
  if (time_cap) return *time_cap;
  return 1000.0 * static_cast<double>(std::max<std::size_t>(g.node_count(), 1)) / r.get_d();
}

namespace {

std::string cut_note(const Rational& value) { return "cut=" + to_string(value); }

// Event loop shared by the policies: stepping, logging, time cap.
class Runner {
 public:
  Runner(const WeightedGraph& g, const Bag& init, const PolicyConfig& cfg)
      : cfg_(cfg), state_(g, init, cfg.seed), cap_(cfg.effective_time_cap(g)) {}

  SisState& state() { return state_; }
  SimTrajectory& trajectory() { return traj_; }

  void log(EventKind kind, std::int64_t node, std::string detail = {}) {
    if (!cfg_.record_events) return;
    traj_.events.push_back({state_.clock(), kind, node, std::move(detail)});
  }

  // Returns false when the run is over (extinct or censored).
  bool advance(std::span<const CureRate> cures) {
    Transition t = state_.step(cures);
    ++traj_.transitions;
    if (t.time > cap_) {
      traj_.censored = true;
      traj_.end_time = cap_;
      return false;
    }
    log(t.kind, t.node);
    if (state_.infected_count() == 0) {
      traj_.extinction_time = t.time;
      traj_.end_time = t.time;
      return false;
    }
    return true;
  }

  bool extinct_at_start() {
    if (state_.infected_count() > 0) return false;
    traj_.extinction_time = 0.0;
    return true;
  }

 private:
  const PolicyConfig& cfg_;
  SisState state_;
  SimTrajectory traj_;
  double cap_;
};

NodeId lowest_infected(const SisState& s, const std::vector<char>* exclude) {
  for (NodeId v = 0; v < s.graph().node_count(); ++v) {
    if (s.is_infected(v) && !(exclude && (*exclude)[v])) return v;
  }
  throw InvariantViolation("no eligible infected node to cure");
}

using CrusadeSource = std::function<Crusade(const Bag&, SimTrajectory&)>;

// Waiting periods and segments along a crusade computed at each chain start.
SimTrajectory run_segments(const WeightedGraph& g, const Bag& init, const PolicyConfig& cfg,
                           const CrusadeSource& source) {
  cfg.validate(g);
  Runner run(g, init, cfg);
  auto& traj = run.trajectory();
  if (run.extinct_at_start()) return traj;
  auto& s = run.state();

  const Rational dmax = max_degree(g);
  const double log2n = policy_log2(g.node_count());
  const double wait_factor = 2.0 * cfg.alpha.get_d() * log2n * log2n;
  const Rational half_r = cfg.r / 2;

  bool in_segment = false;
  Crusade crusade;
  std::size_t index = 0;           // C = bag(index + 1)
  std::vector<char> in_target;     // membership of C
  std::size_t target_size = 0;

  auto waiting_over = [&] { return s.cut().get_d() * wait_factor <= cfg.r.get_d(); };
  auto set_target = [&] {
    in_target = crusade.bag(index + 1).mask(g.node_count());
    target_size = crusade.length() - index - 1;
    ++traj.segments;
    traj.segment_max_cut.push_back(s.cut());
    run.log(EventKind::SegmentStart, -1, "target=" + std::to_string(target_size));
  };
  auto start_chain = [&] {
    crusade = source(s.infected_bag(), traj);
    index = 0;
    in_segment = true;
    set_target();
  };
  auto start_waiting = [&] {
    in_segment = false;
    ++traj.waiting_periods;
    run.log(EventKind::WaitingStart, -1, cut_note(s.cut()));
  };

  if (waiting_over()) {
    start_chain();
  } else {
    start_waiting();
  }

  std::vector<CureRate> cures;
  while (true) {
    cures.clear();
    if (in_segment) {
      cures.push_back({lowest_infected(s, &in_target), cfg.r.get_d()});
    } else if (!cfg.idle_waiting) {
      cures.push_back({lowest_infected(s, nullptr), cfg.r.get_d()});
    }
    if (!run.advance(cures)) break;

    if (in_segment) {
      const std::size_t outside = s.infected_count() - target_size;
      ++traj.drift_checks;
      if (s.cut() > half_r) {
        std::ostringstream msg;
        msg << "segment cut " << to_string(s.cut()) << " exceeds r/2 = " << to_string(half_r)
            << " at t = " << s.clock();
        throw InvariantViolation(msg.str());
      }
      auto& seg_max = traj.segment_max_cut.back();
      if (s.cut() > seg_max) seg_max = s.cut();
      if (outside == 0) {
        ++index;
        set_target();
      } else if (dmax > 0 && 8 * dmax * static_cast<long>(outside) >= cfg.r) {
        start_waiting();
      }
    } else if (waiting_over()) {
      start_chain();
    }
  }
  return traj;
}

}  // namespace

SimTrajectory run_cure_policy(const WeightedGraph& g, const Bag& init, const PolicyConfig& cfg) {
  return run_segments(g, init, cfg, [&](const Bag& b, SimTrajectory&) {
    return appr_impe(g, b, cfg.strategy);
  });
}

SimTrajectory run_fair_cure_policy(const WeightedGraph& g, const Bag& init,
                                   const PolicyConfig& cfg) {
  if (!cfg.fairness) throw DomainError("the fair policy needs a fairness spec");
  const FairnessSpec& spec = *cfg.fairness;
  return run_segments(g, init, cfg, [&](const Bag& b, SimTrajectory& traj) {
    std::vector<std::size_t> taus;
    for (std::size_t tau : spec.checkpoints()) {
      if (tau < b.size()) taus.push_back(tau);
    }
    FairnessSpec local = spec.with_checkpoints(std::move(taus));
    auto result = fair_appr_impe(g, b, local, cfg.strategy);
    ++traj.crusades_checked;
    if (result.crusade && is_gamma_fair(*result.crusade, local, result.guaranteed_gamma)) {
      ++traj.crusades_fair;
      return *result.crusade;
    }
    traj.fairness_fallback = true;
    return appr_impe(g, b, cfg.strategy);
  });
}

SimTrajectory run_design_cure_policy(const WeightedGraph& g, const Bag& init,
                                     const PolicyConfig& cfg) {
  cfg.validate(g);
  Runner run(g, init, cfg);
  auto& traj = run.trajectory();
  traj.design_cost = 0;
  if (run.extinct_at_start()) return traj;
  auto& s = run.state();

  const Rational dmax = max_degree(g);
  const Rational b = cfg.r / 4;
  const bool unit = g.all_unit_weights();

  Crusade crusade;
  std::size_t index = 0;
  std::vector<char> in_target;
  std::size_t target_size = 0;

  auto set_target = [&] {
    in_target = crusade.bag(index + 1).mask(g.node_count());
    target_size = crusade.length() - index - 1;
    ++traj.segments;
    traj.segment_max_cut.push_back(s.cut());
    run.log(EventKind::SegmentStart, -1, "target=" + std::to_string(target_size));
  };
  auto design = [&] {
    Bag bag = s.infected_bag();
    crusade = appr_impe(g, bag, cfg.strategy);
    ReductionPlan plan;
    if (unit) {
      auto whole = static_cast<std::size_t>(mpz_class(b.get_num() / b.get_den()).get_ui());
      plan = uwcmp_solve(g, bag, crusade, whole);
    } else {
      plan = width_opt_rounding(g, bag, crusade, solve_width_lp(g, bag, crusade, b));
    }
    s.set_graph(apply_plan(g, plan));
    ++traj.designs;
    traj.design_cost += plan.total_cost;
    run.log(EventKind::DesignApplied, -1, "cost=" + to_string(plan.total_cost));
    index = 0;
    set_target();
  };
  design();

  std::vector<CureRate> cures;
  while (true) {
    cures.assign(1, {lowest_infected(s, &in_target), cfg.r.get_d()});
    if (!run.advance(cures)) break;
    const std::size_t outside = s.infected_count() - target_size;
    ++traj.drift_checks;
    Rational limit = b + dmax * static_cast<long>(outside);
    if (s.cut() > limit) {
      throw InvariantViolation("designed segment cut " + to_string(s.cut()) +
                               " exceeds r/4 + d_max |D| = " + to_string(limit));
    }
    auto& seg_max = traj.segment_max_cut.back();
    if (s.cut() > seg_max) seg_max = s.cut();
    if (outside == 0) {
      ++index;
      set_target();
    } else if (dmax > 0 &&
               cfg.restart_divisor * dmax * static_cast<long>(outside) >= cfg.r) {
      design();
    }
  }
  return traj;
}

SimTrajectory run_maxcut_policy(const WeightedGraph& g, const Bag& init,
                                const PolicyConfig& cfg) {
  cfg.validate(g);
  Runner run(g, init, cfg);
  auto& traj = run.trajectory();
  traj.design_cost = 0;
  if (run.extinct_at_start()) return traj;
  auto& s = run.state();

  const Rational dmax = max_degree(g);
  const Rational target = cfg.r / 4;
  const Rational eps = cfg.design_eps.value_or(cfg.r / 64);
  const double rate = cfg.r.get_d();

  std::vector<char> in_design;
  auto design = [&] {
    Bag bag = s.infected_bag();
    std::shared_ptr<const ReductionPlan> plan;
    if (cfg.plan_cache) plan = cfg.plan_cache->find(bag);
    if (!plan) {
      plan = std::make_shared<const ReductionPlan>(budget_search(g, bag, target, eps));
      if (cfg.plan_cache) cfg.plan_cache->store(bag, plan);
    }
    if (plan->certified_bound > target) {
      throw InvariantViolation("designed restricted max-cut bound above r'/4");
    }
    s.set_graph(apply_plan(g, *plan));
    in_design = bag.mask(g.node_count());
    ++traj.designs;
    ++traj.segments;
    traj.design_cost += plan->total_cost;
    run.log(EventKind::DesignApplied, -1, "cost=" + to_string(plan->total_cost));
  };
  design();

  std::vector<CureRate> cures;
  while (true) {
    cures.clear();
    const std::size_t infected = s.infected_count();
    if (cfg.adversary == Adversary::Uniform) {
      for (NodeId v = 0; v < g.node_count(); ++v) {
        if (s.is_infected(v)) cures.push_back({v, rate / static_cast<double>(infected)});
      }
    } else {
      // All of r' on the node whose cure raises the cut the most.
      const WeightedGraph& cur = s.graph();
      std::optional<NodeId> pick;
      Rational best;
      for (NodeId v = 0; v < cur.node_count(); ++v) {
        if (!s.is_infected(v)) continue;
        Rational gain = 0;
        for (const auto& inc : cur.neighbors(v)) {
          const Rational& w = cur.edge(inc.edge).w;
          gain += s.is_infected(inc.neighbor) ? w : Rational(-w);
        }
        if (!pick || gain > best) {
          pick = v;
          best = gain;
        }
      }
      cures.push_back({*pick, rate});
    }
    if (!run.advance(cures)) break;

    std::size_t outside = 0;
    for (NodeId v = 0; v < g.node_count(); ++v) outside += s.is_infected(v) && !in_design[v];
    // |D| >= r'/(4 d_max) - 1. With D empty I(t) lies inside the designed bag,
    // and phi only shrinks on subsets, so no redesign is needed.
    if (outside > 0 && 4 * dmax * static_cast<long>(outside + 1) >= cfg.r) design();

    // Rates in force until the next event: downward r' against upward c_{G'}(I).
    ++traj.drift_checks;
    if (2 * s.cut() > cfg.r) {
      throw InvariantViolation("cure rate " + to_string(cfg.r) + " below twice the cut " +
                               to_string(s.cut()));
    }
  }
  return traj;
}

SimTrajectory run_baseline_policy(const WeightedGraph& g, const Bag& init,
                                  const PolicyConfig& cfg) {
  cfg.validate(g);
  Runner run(g, init, cfg);
  auto& traj = run.trajectory();
  if (run.extinct_at_start()) return traj;
  auto& s = run.state();
  const double rate = cfg.r.get_d();
  std::vector<CureRate> cures;
  while (true) {
    cures.clear();
    const auto infected = static_cast<double>(s.infected_count());
    for (NodeId v = 0; v < g.node_count(); ++v) {
      if (s.is_infected(v)) cures.push_back({v, rate / infected});
    }
    if (!run.advance(cures)) break;
  }
  return traj;
}

SimTrajectory run_policy(const WeightedGraph& g, const Bag& init, const PolicyConfig& cfg) {
  switch (cfg.kind) {
    case PolicyKind::Cure: return run_cure_policy(g, init, cfg);
    case PolicyKind::FairCure: return run_fair_cure_policy(g, init, cfg);
    case PolicyKind::DesignCure: return run_design_cure_policy(g, init, cfg);
    case PolicyKind::MaxCutAdversarial: return run_maxcut_policy(g, init, cfg);
    case PolicyKind::Baseline: return run_baseline_policy(g, init, cfg);
  }
  throw DomainError("unknown policy kind");
}

}  // namespace curenet
