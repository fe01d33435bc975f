#include "cli/oracle_suite.hpp"

#include <algorithm>
#include <ostream>
#include <random>

#include "cli/common.hpp"
#include "curenet/crusade.hpp"
#include "curenet/errors.hpp"
#include "curenet/exact.hpp"
#include "curenet/generators.hpp"
#include "curenet/netdesign.hpp"

namespace curenet::cli {

namespace {

constexpr std::size_t kEdgeCap = 16;  // exhaustive deletion oracles

const std::vector<Rational>& quarter_weights() {
  static const std::vector<Rational> w{Rational(1, 4), Rational(1, 2), Rational(3, 4), Rational(1)};
  return w;
}

const std::vector<Rational>& unit_weight() {
  static const std::vector<Rational> w{Rational(1)};
  return w;
}

std::size_t pick(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

WeightedGraph instance(std::mt19937_64& rng, std::size_t max_nodes, const std::vector<Rational>& w,
                       std::size_t edge_cap = 1000) {
  while (true) {
    std::size_t n = pick(rng, 1, std::max<std::size_t>(max_nodes, 1));
    double density = std::uniform_real_distribution<double>(0.1, 0.7)(rng);
    WeightedGraph g = random_connected_graph(n, density, w, rng);
    if (g.edge_count() <= edge_cap) return g;
  }
}

double ratio(const Rational& approx, const Rational& oracle) {
  if (oracle == 0) return approx == 0 ? 1.0 : std::numeric_limits<double>::infinity();
  return to_double(approx) / to_double(oracle);
}

struct Tracker {
  explicit Tracker(std::string name) { pair.name = std::move(name); }
  OraclePair pair;
  void check(bool ok, const std::string& what) {
    if (!ok) {
      if (pair.failures == 0) pair.first_failure = what;
      ++pair.failures;
    }
  }
  void note(double r) { pair.worst_ratio = std::max(pair.worst_ratio, r); }
};

OraclePair impedance_pair(std::mt19937_64& rng, const OracleSuiteOptions& o) {
  Tracker t("appr_impe/impedance_exact");
  for (std::size_t i = 0; i < o.instances; ++i, ++t.pair.instances) {
    WeightedGraph g = instance(rng, o.size_limit, quarter_weights());
    Bag a = Bag::all(g.node_count());
    Crusade p = appr_impe(g, a, CutStrategy::Exact);
    auto exact = impedance_exact(g, a);
    Rational width = crusade_width(g, p);
    t.check(p.start() == a && p.reaches_empty(), "crusade does not run from V to the empty bag");
    t.check(width >= exact.width, "approximate width below the impedance");
    t.note(ratio(width, exact.width));
  }
  return t.pair;
}

OraclePair fair_pair(std::mt19937_64& rng, const OracleSuiteOptions& o) {
  Tracker t("fair_appr_impe/fair_impedance_exact");
  const std::size_t limit = std::min<std::size_t>(o.size_limit, 10);
  const Rational gammas[] = {Rational(1), Rational(3, 2), Rational(2)};
  for (std::size_t i = 0; i < o.instances; ++i, ++t.pair.instances) {
    WeightedGraph g = instance(rng, limit, quarter_weights());
    const std::size_t n = g.node_count();
    std::vector<GroupId> groups(n);
    for (auto& h : groups) h = static_cast<GroupId>(pick(rng, 0, 1));
    std::vector<std::size_t> checkpoints;
    if (n >= 2) checkpoints.push_back(pick(rng, 1, n - 1));
    FairnessSpec spec(groups, checkpoints, gammas[pick(rng, 0, 2)]);
    Bag a = Bag::all(n);
    auto fair = fair_appr_impe(g, a, spec, CutStrategy::Exact);
    auto exact = fair_impedance_exact(g, a, spec);
    t.check(fair.crusade.has_value(), "no fair crusade returned");
    t.check(exact.has_value(), "exhaustive search found no fair crusade");
    if (!fair.crusade || !exact) continue;
    t.check(is_gamma_fair(*fair.crusade, spec, fair.guaranteed_gamma), "crusade fails the fairness test");
    Rational width = crusade_width(g, *fair.crusade);
    t.check(width >= exact->width, "fair width below the fair impedance");
    t.note(ratio(width, exact->width));
  }
  return t.pair;
}

OraclePair rounding_pair(std::mt19937_64& rng, const OracleSuiteOptions& o) {
  Tracker t("width_opt_rounding/integral_width_exact");
  for (std::size_t i = 0; i < o.instances; ++i, ++t.pair.instances) {
    WeightedGraph g = instance(rng, std::min<std::size_t>(o.size_limit, 8), quarter_weights(), kEdgeCap);
    Bag a = Bag::all(g.node_count());
    Crusade p = appr_impe(g, a, CutStrategy::Exact);
    Rational b = crusade_width(g, p) * Rational(static_cast<long>(pick(rng, 0, 4)), 4);
    auto lp = solve_width_lp(g, a, p, b);
    auto rounded = width_opt_rounding(g, a, p, lp);
    auto best = integral_width_exact(g, a, p, b, kEdgeCap);
    const Rational k(static_cast<long>(p.length()));
    t.check(reduced_width(g, p, rounded) <= b, "rounded plan violates the width threshold");
    t.check(rounded.total_cost <= lp.total_cost + k, "rounded cost exceeds LP cost + k");
    t.check(rounded.total_cost <= best.total_cost + k, "rounded cost exceeds optimum + k");
    t.check(lp.total_cost <= best.total_cost, "LP value above the integral optimum");
    t.note(ratio(rounded.total_cost, best.total_cost));
  }
  return t.pair;
}

OraclePair uwcmp_pair(std::mt19937_64& rng, const OracleSuiteOptions& o) {
  Tracker t("uwcmp_solve/integral_width_exact");
  for (std::size_t i = 0; i < o.instances; ++i, ++t.pair.instances) {
    WeightedGraph g = instance(rng, o.size_limit, unit_weight(), kEdgeCap);
    Bag a = Bag::all(g.node_count());
    Crusade p = appr_impe(g, a, CutStrategy::Exact);
    auto width = crusade_width(g, p);
    std::size_t b = pick(rng, 0, static_cast<std::size_t>(width.get_num().get_ui()));
    auto plan = uwcmp_solve(g, a, p, b);
    auto best = integral_width_exact(g, a, p, Rational(static_cast<long>(b)), kEdgeCap);
    t.check(reduced_width(g, p, plan) <= b, "interval plan violates the width threshold");
    t.check(plan.total_cost == best.total_cost, "interval plan is not optimal");
    t.note(ratio(plan.total_cost, best.total_cost));
  }
  return t.pair;
}

OraclePair sdp_pair(std::mt19937_64& rng, const OracleSuiteOptions& o) {
  Tracker t("minimax_sdp/minimax_exact");
  const std::size_t limit = std::min<std::size_t>(o.size_limit, 10);
  for (std::size_t i = 0; i < o.instances; ++i, ++t.pair.instances) {
    WeightedGraph g = instance(rng, o.size_limit, quarter_weights());
    const std::size_t n = g.node_count();
    std::vector<NodeId> members;
    for (NodeId v = 0; v < n; ++v) {
      if (members.size() < limit && (n == 1 || pick(rng, 0, 3) != 0)) members.push_back(v);
    }
    if (members.empty()) members.push_back(0);
    Bag a(members);
    Rational touching = 0;
    for (const auto& e : g.edges()) {
      if (a.contains(e.u) || a.contains(e.v)) touching += e.w;
    }
    Rational budget = touching * Rational(static_cast<long>(pick(rng, 0, 3)), 8);
    auto sdp = minimax_sdp(g, a, budget);
    auto exact = minimax_exact(g, a, budget);
    Rational phi = restricted_max_cut_exact(apply_plan(g, sdp), a).value;
    t.check(sdp.total_cost <= budget, "SDP plan exceeds the budget");
    t.check(phi <= sdp.certified_bound, "certified bound below the restricted max-cut");
    t.check(to_double(phi) <= 1.14 * to_double(exact.certified_bound) + 1e-4,
            "restricted max-cut above 1.14 times the minimax optimum");
    t.check(sdp.diagnostics.duality_gap <= 1e-6, "duality gap above 1e-6");
    t.note(ratio(phi, exact.certified_bound));
  }
  return t.pair;
}

}  // namespace

bool OracleReport::ok() const {
  return std::all_of(pairs.begin(), pairs.end(), [](const OraclePair& p) { return p.failures == 0; });
}

OracleReport oracle_suite(const OracleSuiteOptions& options) {
  if (options.size_limit == 0 || options.size_limit > 12) {
    throw DomainError("size limit must be in [1, 12]");
  }
  OracleReport report;
  // Separate streams so adding instances to one pair leaves the others unchanged.
  std::uint64_t salt = 0;
  auto stream = [&] { return std::mt19937_64(options.seed * 0x9E3779B97F4A7C15ULL + ++salt); };
  auto r1 = stream(), r2 = stream(), r3 = stream(), r4 = stream(), r5 = stream();
  report.pairs.push_back(impedance_pair(r1, options));
  report.pairs.push_back(fair_pair(r2, options));
  report.pairs.push_back(rounding_pair(r3, options));
  report.pairs.push_back(uwcmp_pair(r4, options));
  report.pairs.push_back(sdp_pair(r5, options));
  return report;
}

void write_report_csv(std::ostream& out, const OracleReport& report) {
  out << "pair,instances,failures,worst_ratio,first_failure\n";
  for (const auto& p : report.pairs) {
    out << p.name << ',' << p.instances << ',' << p.failures << ',' << fmt(p.worst_ratio) << ','
        << p.first_failure << '\n';
  }
}

}  // namespace curenet::cli
