#include "cli/manifest.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>

#include "cli/common.hpp"
#include "cli/svg.hpp"
#include "curenet/errors.hpp"
#include "curenet/exact.hpp"
#include "curenet/extinction.hpp"
#include "curenet/generators.hpp"
#include "curenet/io.hpp"
#include "curenet/netdesign.hpp"

namespace curenet::cli {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct Field {
  std::string value;
  std::size_t line;
  std::size_t column;  // of the value
};

[[noreturn]] void fail(const Field& f, const std::string& why) {
  throw ParseError(why, f.line, f.column);
}

std::uint64_t to_uint(const Field& f) {
  if (f.value.empty() || f.value.size() > 19) fail(f, "expected a nonnegative integer");
  std::uint64_t v = 0;
  for (char c : f.value) {
    if (c < '0' || c > '9') fail(f, "expected a nonnegative integer, got '" + f.value + "'");
    v = v * 10 + static_cast<std::uint64_t>(c - '0');
  }
  return v;
}

Rational to_rational(const Field& f) {
  try {
    return parse_rational(f.value);
  } catch (const DomainError& e) {
    fail(f, e.what());
  }
}

double to_real(const Field& f) {
  Rational q = to_rational(f);
  return to_double(q);
}

bool to_bool(const Field& f) {
  if (f.value == "true" || f.value == "yes" || f.value == "1") return true;
  if (f.value == "false" || f.value == "no" || f.value == "0") return false;
  fail(f, "expected true or false");
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::string item;
  for (char c : v + ",") {
    if (c == ',' || c == ' ' || c == '\t') {
      if (!item.empty()) out.push_back(item);
      item.clear();
    } else {
      item += c;
    }
  }
  return out;
}

void assign(RunSpec& run, const std::string& key, const Field& f) {
  if (key == "name") {
    run.name = f.value;
  } else if (key == "kind") {
    if (f.value == "simulate") run.kind = RunKind::Simulate;
    else if (f.value == "integrality-gap") run.kind = RunKind::IntegralityGap;
    else fail(f, "unknown run kind '" + f.value + "'");
  } else if (key == "graph") {
    run.graph = f.value;
  } else if (key == "init") {
    run.init = f.value;
  } else if (key == "policy") {
    run.policy = f.value;
  } else if (key == "r") {
    run.budgets.clear();
    for (const auto& item : split_list(f.value)) {
      Rational r = to_rational({item, f.line, f.column});
      if (r <= 0) fail(f, "budgets must be positive");
      run.budgets.push_back(r);
    }
    if (run.budgets.empty()) fail(f, "empty budget list");
  } else if (key == "replicas") {
    run.replicas = to_uint(f);
    if (run.replicas == 0 || run.replicas > 1000000) fail(f, "replicas must be in [1, 10^6]");
  } else if (key == "seed") {
    run.seed = to_uint(f);
  } else if (key == "time_cap") {
    run.time_cap = to_real(f);
    if (!(*run.time_cap > 0)) fail(f, "time_cap must be positive");
  } else if (key == "alpha") {
    run.alpha = to_rational(f);
  } else if (key == "balanced_cut") {
    run.balanced_cut = f.value;
  } else if (key == "adversary") {
    run.adversary = f.value;
  } else if (key == "groups") {
    run.groups = f.value;
  } else if (key == "checkpoints") {
    run.checkpoints.clear();
    for (const auto& item : split_list(f.value)) {
      run.checkpoints.push_back(to_uint({item, f.line, f.column}));
    }
  } else if (key == "gamma") {
    run.gamma = to_rational(f);
  } else if (key == "idle_waiting") {
    run.idle_waiting = to_bool(f);
  } else if (key == "edges") {
    run.edges = to_uint(f);
    if (run.edges == 0 || run.edges > 20) fail(f, "edges must be in [1, 20]");
  } else if (key == "b") {
    run.threshold = to_rational(f);
    if (run.threshold < 0) fail(f, "b must be nonnegative");
  } else {
    throw ParseError("unknown key '" + key + "'", f.line, 1);
  }
}

void check_run(const RunSpec& run) {
  auto missing = [&](const char* what) {
    throw ParseError(std::string("run is missing '") + what + "'", run.line, 1);
  };
  if (run.kind == RunKind::Simulate) {
    if (run.graph.empty()) missing("graph");
    if (!run.seed) missing("seed");
    if (run.budgets.empty()) missing("r");
  } else if (run.edges == 0) {
    missing("edges");
  }
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  return path.is_absolute() ? path : base / path;
}

WeightedGraph run_graph(const RunSpec& run, const std::filesystem::path& base) {
  if (run.graph.rfind("file:", 0) == 0) return read_graph_file(resolve(base, run.graph.substr(5)));
  return generate_graph(run.graph);
}

Bag run_init(const RunSpec& run, const WeightedGraph& g, const std::filesystem::path& base) {
  if (run.init == "all") return Bag::all(g.node_count());
  if (run.init == "none") return Bag{};
  if (run.init.rfind("file:", 0) == 0) return read_bag_file(resolve(base, run.init.substr(5)), g.node_count());
  std::istringstream in(run.init);
  return read_bag(in, g.node_count());
}

std::string label(const RunSpec& run, std::size_t index) {
  return run.name.empty() ? "run" + std::to_string(index + 1) : run.name;
}

}  // namespace

Manifest parse_manifest(std::istream& in) {
  Manifest m;
  std::string raw;
  std::size_t line = 0;
  RunSpec* current = nullptr;
  std::map<std::string, std::size_t> seen;
  while (std::getline(in, raw)) {
    ++line;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    std::string text = trim(raw);
    if (text.empty()) continue;
    std::size_t indent = raw.find_first_not_of(" \t") + 1;
    if (text.front() == '[') {
      if (text != "[run]") throw ParseError("unknown section '" + text + "'", line, indent);
      m.runs.emplace_back();
      current = &m.runs.back();
      current->line = line;
      seen.clear();
      continue;
    }
    auto eq = raw.find('=');
    if (eq == std::string::npos) throw ParseError("expected 'key = value'", line, indent);
    std::string key = trim(raw.substr(0, eq));
    std::string value = trim(raw.substr(eq + 1));
    if (key.empty()) throw ParseError("missing key", line, indent);
    std::size_t value_col = raw.find_first_not_of(" \t", eq + 1);
    Field f{value, line, value_col == std::string::npos ? eq + 2 : value_col + 1};
    if (value.empty()) throw ParseError("missing value for '" + key + "'", line, f.column);
    if (!seen.emplace(key, line).second) {
      throw ParseError("duplicate key '" + key + "'", line, indent);
    }
    if (!current) {
      if (key == "out_dir") m.out_dir = value;
      else if (key == "threads") m.threads = to_uint(f);
      else throw ParseError("unknown global key '" + key + "'", line, indent);
      continue;
    }
    assign(*current, key, f);
  }
  for (const auto& run : m.runs) check_run(run);
  return m;
}

Manifest parse_manifest_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  return parse_manifest(in);
}

ManifestResult run_manifest(const Manifest& manifest, const std::filesystem::path& out_dir,
                            const std::filesystem::path& base_dir) {
  ManifestResult result;
  std::ostringstream runs_csv, gap_csv, svg;
  runs_csv << "run,policy,nodes,r,replicas,censored,violations,mean,standard_error,median,q10,"
              "q90,fairness_fallbacks,drift_checks\n";
  gap_csv << "run,edges,b,lp_cost,integral_cost,exhaustive_cost,ratio\n";
  std::vector<Series> curves;

  for (std::size_t i = 0; i < manifest.runs.size(); ++i) {
    const RunSpec& run = manifest.runs[i];
    const std::string name = label(run, i);
    ++result.runs;
    if (run.kind == RunKind::IntegralityGap) {
      // Unit path on edges+1 nodes cured from one end.
      WeightedGraph g = path_graph(run.edges + 1);
      Bag a = Bag::all(g.node_count());
      std::vector<NodeId> order(g.node_count());
      for (NodeId v = 0; v < order.size(); ++v) order[v] = v;
      Crusade p(a, order);
      auto lp = solve_width_lp(g, a, p, run.threshold);
      auto rounded = width_opt_rounding(g, a, p, lp);
      auto best = integral_width_exact(g, a, p, run.threshold);
      gap_csv << name << ',' << run.edges << ',' << to_string(run.threshold) << ','
              << to_string(lp.total_cost) << ',' << to_string(rounded.total_cost) << ','
              << to_string(best.total_cost) << ','
              << (lp.total_cost > 0 ? to_string(Rational(rounded.total_cost / lp.total_cost)) : "")
              << '\n';
      continue;
    }

    WeightedGraph g;
    Bag init;
    PolicyConfig cfg;
    try {
      g = run_graph(run, base_dir);
      init = run_init(run, g, base_dir);
      cfg.kind = parse_policy_kind(run.policy);
      cfg.strategy = parse_cut_strategy(run.balanced_cut);
      cfg.adversary = parse_adversary(run.adversary);
    } catch (const DomainError& e) {
      throw ParseError(name + ": " + e.what(), run.line, 1);
    }
    if (run.alpha) cfg.alpha = *run.alpha;
    cfg.seed = *run.seed;
    cfg.idle_waiting = run.idle_waiting;
    cfg.record_events = false;
    if (cfg.kind == PolicyKind::FairCure) {
      if (run.groups.empty()) throw ParseError(name + ": fair policy needs 'groups'", run.line, 1);
      std::vector<GroupId> groups;
      if (run.groups.rfind("file:", 0) == 0) {
        groups = read_groups_file(resolve(base_dir, run.groups.substr(5)), g.node_count());
      } else {
        groups = parse_group_list(run.groups, g.node_count());
      }
      cfg.fairness = FairnessSpec(std::move(groups), run.checkpoints, run.gamma);
    }
    Series curve{name, {}, {}};
    for (const Rational& r : run.budgets) {
      cfg.r = r;
      auto summary = estimate_extinction(g, init, cfg, run.replicas, run.time_cap, manifest.threads);
      result.violations += summary.violations;
      runs_csv << name << ',' << run.policy << ',' << g.node_count() << ',' << to_string(r) << ','
               << summary.replicas << ',' << summary.censored << ',' << summary.violations << ','
               << fmt(summary.mean) << ',' << fmt(summary.standard_error) << ','
               << fmt(summary.median) << ',' << fmt(summary.q10) << ',' << fmt(summary.q90) << ','
               << summary.fairness_fallbacks << ',' << summary.drift_checks << '\n';
      if (summary.censored + summary.violations < summary.replicas) {
        curve.x.push_back(to_double(r));
        curve.y.push_back(summary.mean);
      }
    }
    curves.push_back(std::move(curve));
  }

  write_line_chart(svg, curves, "curing budget r", "mean extinction time");
  write_file(out_dir / "runs.csv", runs_csv.str());
  write_file(out_dir / "gap.csv", gap_csv.str());
  write_file(out_dir / "extinction.svg", svg.str());
  return result;
}

}  // namespace curenet::cli
