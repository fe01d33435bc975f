#include <doctest.h>

#include <cmath>

#include "curenet/crusade.hpp"
#include "curenet/errors.hpp"
#include "curenet/extinction.hpp"
#include "curenet/generators.hpp"
#include "curenet/policies.hpp"

using namespace curenet;

namespace {

PolicyConfig config(PolicyKind kind, Rational r, std::uint64_t seed = 1) {
  PolicyConfig cfg;
  cfg.kind = kind;
  cfg.r = std::move(r);
  cfg.seed = seed;
  return cfg;
}

}  // namespace

TEST_CASE("empty initial infection is extinct at time zero") {
  WeightedGraph g = path_graph(4);
  for (auto kind : {PolicyKind::Cure, PolicyKind::DesignCure, PolicyKind::MaxCutAdversarial,
                    PolicyKind::Baseline}) {
    auto t = run_policy(g, Bag{}, config(kind, 8));
    REQUIRE(t.extinction_time);
    CHECK(*t.extinction_time == 0.0);
    CHECK(t.transitions == 0);
  }
}

TEST_CASE("single node is cured at rate r") {
  WeightedGraph g(1);
  const int samples = 4000;
  double sum = 0;
  for (int i = 0; i < samples; ++i) {
    auto t = run_cure_policy(g, Bag{0}, config(PolicyKind::Cure, 2, static_cast<std::uint64_t>(i)));
    REQUIRE(t.extinction_time);
    sum += *t.extinction_time;
  }
  CHECK(sum / samples == doctest::Approx(0.5).epsilon(0.05));
}

TEST_CASE("configuration errors") {
  WeightedGraph g = path_graph(3);
  CHECK_THROWS_AS(run_policy(g, Bag{0}, config(PolicyKind::Cure, 0)), DomainError);
  CHECK_THROWS_AS(run_policy(g, Bag{0}, config(PolicyKind::FairCure, 4)), DomainError);
  auto cfg = config(PolicyKind::FairCure, 4);
  cfg.fairness = FairnessSpec({0, 1}, {}, 1);
  CHECK_THROWS_AS(run_policy(g, Bag{0}, cfg), DomainError);
  CHECK(parse_policy_kind("maxcut") == PolicyKind::MaxCutAdversarial);
  CHECK_THROWS_AS(parse_policy_kind("nope"), DomainError);
}

TEST_CASE("fair policy without checkpoints follows the plain policy") {
  WeightedGraph g = erdos_renyi(14, 0.3, 3);
  const double log2n = policy_log2(14);
  Rational r = from_double(std::ceil(std::max(2.0 * log2n * log2n * 4, 8 * 14 * log2n)));
  auto plain = config(PolicyKind::Cure, r, 7);
  auto fair = plain;
  fair.kind = PolicyKind::FairCure;
  fair.fairness = FairnessSpec(std::vector<GroupId>(14, 0), {}, 1);
  auto a = run_policy(g, Bag::all(14), plain);
  auto b = run_policy(g, Bag::all(14), fair);
  CHECK(a.extinction_time == b.extinction_time);
  CHECK(a.transitions == b.transitions);
  CHECK(b.crusades_checked == b.crusades_fair);
  CHECK_FALSE(b.fairness_fallback);
}

TEST_CASE("fair policy bookkeeping") {
  // Checkpoints at every position; the fallback flag must agree with the counters.
  WeightedGraph g = path_graph(6);
  auto cfg = config(PolicyKind::FairCure, 400, 3);
  std::vector<GroupId> groups{0, 0, 0, 1, 1, 1};
  cfg.fairness = FairnessSpec(groups, {1, 2, 3, 4, 5}, 1);
  auto t = run_policy(g, Bag::all(6), cfg);
  CHECK(t.extinction_time);
  CHECK(t.crusades_checked >= 1);
  CHECK(t.fairness_fallback == (t.crusades_fair < t.crusades_checked));
}

TEST_CASE("design policy records its plans") {
  WeightedGraph g = complete_graph(6);
  auto cfg = config(PolicyKind::DesignCure, 12, 5);
  auto t = run_policy(g, Bag::all(6), cfg);
  REQUIRE(t.extinction_time);
  CHECK(t.designs >= 1);
  CHECK(t.design_cost >= 0);
  std::size_t applied = 0;
  for (const auto& e : t.events) applied += e.kind == EventKind::DesignApplied;
  CHECK(applied == t.designs);
}

TEST_CASE("max-cut policy keeps the drift condition on K6") {
  WeightedGraph g = complete_graph(6);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto cfg = config(PolicyKind::MaxCutAdversarial, 6, seed);
    cfg.adversary = seed % 2 ? Adversary::AntiGreedy : Adversary::Uniform;
    auto t = run_policy(g, Bag::all(6), cfg);
    CHECK(t.extinction_time);
    CHECK(t.drift_checks == t.transitions - 1);
  }
}

TEST_CASE("cure policy segments respect r/2") {
  WeightedGraph g = star_graph(12);
  const double log2n = policy_log2(12);
  const double width = to_double(crusade_width(g, appr_impe(g, Bag::all(12))));
  const double r = std::max(kDefaultAlpha * width * log2n * log2n * 2, 8 * 11 * log2n);
  auto cfg = config(PolicyKind::Cure, from_double(std::ceil(r)), 11);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    cfg.seed = seed;
    auto t = run_policy(g, Bag::all(12), cfg);
    CHECK(t.extinction_time);
    for (const auto& c : t.segment_max_cut) CHECK(2 * c <= cfg.r);
  }
}

TEST_CASE("runs are reproducible") {
  WeightedGraph g = cycle_graph(10);
  auto cfg = config(PolicyKind::Cure, 60, 99);
  auto a = run_policy(g, Bag::all(10), cfg);
  auto b = run_policy(g, Bag::all(10), cfg);
  REQUIRE(a.events.size() == b.events.size());
  for (std::size_t i = 0; i < a.events.size(); ++i) {
    CHECK(a.events[i].time == b.events[i].time);
    CHECK(a.events[i].node == b.events[i].node);
  }
  cfg.record_events = false;
  auto c = run_policy(g, Bag::all(10), cfg);
  CHECK(c.events.empty());
  CHECK(c.extinction_time == a.extinction_time);
}

TEST_CASE("time cap censors the run") {
  WeightedGraph g = complete_graph(8);
  auto cfg = config(PolicyKind::Baseline, Rational(1, 10), 2);
  cfg.time_cap = 5.0;
  auto t = run_policy(g, Bag::all(8), cfg);
  CHECK(t.censored);
  CHECK_FALSE(t.extinction_time);
  CHECK(t.end_time == 5.0);
}

TEST_CASE("replica estimates") {
  WeightedGraph g = path_graph(8);
  auto cfg = config(PolicyKind::Cure, 120, 17);
  auto one = estimate_extinction(g, Bag::all(8), cfg, 1, std::nullopt, 1);
  auto single = run_policy(g, Bag::all(8), cfg);
  REQUIRE(one.outcomes.size() == 1);
  CHECK(one.outcomes[0].extinction_time == single.extinction_time);
  CHECK(one.mean == *single.extinction_time);

  auto serial = estimate_extinction(g, Bag::all(8), cfg, 40, std::nullopt, 1);
  auto parallel = estimate_extinction(g, Bag::all(8), cfg, 40, std::nullopt, 4);
  CHECK(serial.mean == parallel.mean);
  CHECK(serial.median == parallel.median);
  for (std::size_t i = 0; i < 40; ++i) {
    CHECK(serial.outcomes[i].seed == cfg.seed + i);
    CHECK(serial.outcomes[i].extinction_time == parallel.outcomes[i].extinction_time);
  }
  CHECK(serial.q10 <= serial.median);
  CHECK(serial.median <= serial.q90);
}

TEST_CASE("quantiles") {
  std::vector<double> v{1, 2, 3, 4, 5};
  CHECK(quantile(v, 0.5) == 3);
  CHECK(quantile(v, 0.1) == doctest::Approx(1.4));
  CHECK(quantile(v, 1.0) == 5);
}
