#include "cli/app.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <optional>
#include <ostream>
#include <sstream>

#include "cli/common.hpp"
#include "cli/manifest.hpp"
#include "cli/oracle_suite.hpp"
#include "curenet/crusade.hpp"
#include "curenet/errors.hpp"
#include "curenet/exact.hpp"
#include "curenet/extinction.hpp"
#include "curenet/io.hpp"
#include "curenet/netdesign.hpp"

namespace curenet::cli {

namespace {

using json = nlohmann::ordered_json;

struct Globals {
  std::string graph;
  std::string groups;
  std::uint64_t seed = 1;
  std::string out_dir;
  std::string format = "csv";
};

class Emitter {
 public:
  Emitter(const Globals& globals, std::ostream& out) : globals_(globals), out_(out) {}

  bool json_format() const { return globals_.format == "json"; }

  /// The verb's main result: CSV or JSON, to stdout or into the output directory.
  void primary(const std::string& base, const std::string& csv, const json& doc) {
    std::string text = json_format() ? doc.dump(2) + "\n" : csv;
    if (globals_.out_dir.empty()) {
      out_ << text;
    } else {
      write_file(std::filesystem::path(globals_.out_dir) / (base + (json_format() ? ".json" : ".csv")),
                 text);
    }
  }

  /// Extra artifacts exist only on disk.
  void side(const std::string& name, const std::string& text) {
    if (!globals_.out_dir.empty()) write_file(std::filesystem::path(globals_.out_dir) / name, text);
  }

 private:
  const Globals& globals_;
  std::ostream& out_;
};

WeightedGraph require_graph(const Globals& g) {
  if (g.graph.empty()) throw DomainError("--graph is required");
  return load_graph(g.graph);
}

std::vector<GroupId> require_groups(const Globals& g, std::size_t n) {
  if (g.groups.empty()) throw DomainError("--groups is required");
  return read_groups_file(g.groups, n);
}

json order_json(const Crusade& p) {
  json a = json::array();
  for (auto v : p.removal_order()) a.push_back(v);
  return a;
}

json profile_json(const WeightedGraph& g, const Crusade& p) {
  json a = json::array();
  for (const auto& c : crusade_cut_profile(g, p)) a.push_back(to_string(c));
  return a;
}

std::string crusade_csv(const WeightedGraph& g, const Crusade& p) {
  std::ostringstream s;
  write_crusade_csv(s, g, p);
  return s.str();
}

json plan_json(const WeightedGraph& g, const ReductionPlan& plan) {
  json rows = json::array();
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const auto& edge = g.edge(e);
    rows.push_back({{"u", edge.u}, {"v", edge.v}, {"w", to_string(edge.w)},
                    {"delta", to_string(plan.deltas[e])}});
  }
  return rows;
}

json diagnostics_json(const ReductionPlan& plan) {
  json d;
  d["mode"] = std::string(to_string(plan.mode));
  d["total_cost"] = to_string(plan.total_cost);
  d["certified_bound"] = to_string(plan.certified_bound);
  if (plan.mode == PlanMode::SdpMinimax) {
    d["budget"] = to_string(plan.budget);
    d["duality_gap"] = plan.diagnostics.duality_gap;
    d["lower_bound"] = plan.diagnostics.lower_bound;
  } else {
    d["threshold"] = to_string(plan.threshold);
  }
  d["iterations"] = plan.diagnostics.iterations;
  d["exact_arithmetic"] = plan.diagnostics.exact;
  return d;
}

void emit_plan(Emitter& emit, const WeightedGraph& g, const ReductionPlan& plan,
               const std::optional<Crusade>& p) {
  std::ostringstream csv;
  write_plan_csv(csv, g, plan);
  json doc = diagnostics_json(plan);
  if (p) doc["removal_order"] = order_json(*p);
  doc["deltas"] = plan_json(g, plan);
  emit.primary("plan", csv.str(), doc);
  emit.side("diagnostics.json", diagnostics_json(plan).dump(2) + "\n");
}

Rational rational_arg(const std::string& text, const char* flag) {
  try {
    return parse_rational(text);
  } catch (const DomainError& e) {
    throw DomainError(std::string(flag) + ": " + e.what());
  }
}

// --- verbs -----------------------------------------------------------------

struct ImpedanceArgs {
  bool exact = false;
  bool approx = false;
  std::string bag = "all";
  std::string strategy = "auto";
};

int cmd_impedance(const Globals& globals, const ImpedanceArgs& args, Emitter& emit) {
  WeightedGraph g = require_graph(globals);
  Bag a = load_bag(args.bag, g.node_count());
  Crusade p;
  if (args.exact) {
    p = impedance_exact(g, a).crusade;
  } else {
    p = appr_impe(g, a, parse_cut_strategy(args.strategy));
  }
  json doc;
  doc["method"] = args.exact ? "exact" : "approx";
  doc["width"] = to_string(crusade_width(g, p));
  doc["removal_order"] = order_json(p);
  doc["cuts"] = profile_json(g, p);
  emit.primary("crusade", crusade_csv(g, p), doc);
  return kExitOk;
}

struct FairArgs {
  std::string bag = "all";
  std::string checkpoints;
  std::string gamma = "1";
  bool skip_final = false;
  bool exact = false;
  std::string strategy = "auto";
};

int cmd_fair_crusade(const Globals& globals, const FairArgs& args, Emitter& emit,
                     std::ostream& err) {
  WeightedGraph g = require_graph(globals);
  Bag a = load_bag(args.bag, g.node_count());
  FairnessSpec spec(require_groups(globals, g.node_count()), parse_index_list(args.checkpoints),
                    rational_arg(args.gamma, "--gamma"), !args.skip_final);
  spec.validate_for(a.size());
  std::optional<Crusade> p;
  Rational level = spec.gamma();
  if (args.exact) {
    if (auto r = fair_impedance_exact(g, a, spec)) p = r->crusade;
  } else {
    auto r = fair_appr_impe(g, a, spec, parse_cut_strategy(args.strategy));
    p = r.crusade;
    level = r.guaranteed_gamma;
  }
  json doc;
  doc["method"] = args.exact ? "exact" : "approx";
  doc["guaranteed_gamma"] = to_string(level);
  if (!p) {
    err << "no fair crusade exists for this specification\n";
    doc["crusade"] = nullptr;
    emit.primary("crusade", "step,removed,bag_size,cut\n", doc);
    return kExitOk;
  }
  doc["fair"] = is_gamma_fair(*p, spec, level);
  doc["width"] = to_string(crusade_width(g, *p));
  doc["removal_order"] = order_json(*p);
  doc["cuts"] = profile_json(g, *p);
  emit.primary("crusade", crusade_csv(g, *p), doc);
  return kExitOk;
}

struct WidthArgs {
  std::string mode;
  std::string b;
  std::string bag = "all";
  std::string crusade = "approx";
  std::string strategy = "auto";
};

int cmd_design_width(const Globals& globals, const WidthArgs& args, Emitter& emit) {
  WeightedGraph g = require_graph(globals);
  Bag a = load_bag(args.bag, g.node_count());
  Rational b = rational_arg(args.b, "--b");
  Crusade p = args.crusade == "exact" ? impedance_exact(g, a).crusade
                                      : appr_impe(g, a, parse_cut_strategy(args.strategy));
  ReductionPlan plan;
  if (args.mode == "uwcmp") {
    if (b.get_den() != 1 || b < 0) throw DomainError("--b must be a nonnegative integer for uwcmp");
    plan = uwcmp_solve(g, a, p, b.get_num().get_ui());
  } else {
    plan = solve_width_lp(g, a, p, b);
    if (args.mode == "round") plan = width_opt_rounding(g, a, p, plan);
  }
  emit_plan(emit, g, plan, p);
  return kExitOk;
}

struct MaxCutArgs {
  std::optional<std::string> budget;
  std::optional<std::string> target;
  std::optional<std::string> eps;
  std::string bag = "all";
  double gap = 1e-6;
};

int cmd_design_maxcut(const Globals& globals, const MaxCutArgs& args, Emitter& emit) {
  WeightedGraph g = require_graph(globals);
  Bag a = load_bag(args.bag, g.node_count());
  SdpOptions options;
  options.gap_tolerance = args.gap;
  ReductionPlan plan;
  if (args.budget) {
    plan = minimax_sdp(g, a, rational_arg(*args.budget, "--budget"), options);
  } else {
    if (!args.target || !args.eps) throw DomainError("give --budget, or --target with --eps");
    plan = budget_search(g, a, rational_arg(*args.target, "--target"),
                         rational_arg(*args.eps, "--eps"), options);
  }
  emit_plan(emit, g, plan, std::nullopt);
  return kExitOk;
}

struct SimArgs {
  std::string policy = "cure";
  std::string init = "all";
  std::string r;
  std::size_t replicas = 1;
  std::optional<double> time_cap;
  std::string strategy = "auto";
  bool idle_waiting = false;
  std::string remark_threshold = "4";
  std::optional<std::string> alpha;
  std::string adversary = "uniform";
  std::string checkpoints;
  std::string gamma = "1";
  std::optional<std::string> design_eps;
  std::size_t threads = 0;
  std::size_t trajectories = 1;
};

json event_json(std::size_t replica, const SimEvent& e) {
  json j;
  j["replica"] = replica;
  j["time"] = e.time;
  j["kind"] = std::string(to_string(e.kind));
  if (e.node >= 0) j["node"] = e.node;
  if (!e.detail.empty()) j["plan"] = e.detail;
  return j;
}

int cmd_simulate(const Globals& globals, const SimArgs& args, Emitter& emit) {
  WeightedGraph g = require_graph(globals);
  Bag init = load_bag(args.init, g.node_count());
  PolicyConfig cfg;
  cfg.kind = parse_policy_kind(args.policy);
  cfg.r = rational_arg(args.r, "--r");
  cfg.strategy = parse_cut_strategy(args.strategy);
  cfg.adversary = parse_adversary(args.adversary);
  cfg.idle_waiting = args.idle_waiting;
  cfg.restart_divisor = rational_arg(args.remark_threshold, "--remark-threshold");
  if (args.alpha) cfg.alpha = rational_arg(*args.alpha, "--alpha");
  if (args.design_eps) cfg.design_eps = rational_arg(*args.design_eps, "--design-eps");
  cfg.seed = globals.seed;
  cfg.time_cap = args.time_cap;
  if (cfg.kind == PolicyKind::FairCure) {
    cfg.fairness = FairnessSpec(require_groups(globals, g.node_count()),
                                parse_index_list(args.checkpoints), rational_arg(args.gamma, "--gamma"));
  }
  cfg.validate(g);
  if (args.replicas == 0) throw DomainError("--replicas must be at least 1");
  if (cfg.kind == PolicyKind::MaxCutAdversarial) cfg.plan_cache = std::make_shared<PlanCache>();

  cfg.record_events = false;
  auto summary = estimate_extinction(g, init, cfg, args.replicas, args.time_cap, args.threads);

  std::ostringstream csv;
  csv << "policy,nodes,r,replicas,censored,violations,mean,standard_error,median,q10,q90,"
         "fairness_fallbacks,drift_checks\n";
  csv << args.policy << ',' << g.node_count() << ',' << to_string(cfg.r) << ',' << summary.replicas
      << ',' << summary.censored << ',' << summary.violations << ',' << fmt(summary.mean) << ','
      << fmt(summary.standard_error) << ',' << fmt(summary.median) << ',' << fmt(summary.q10) << ','
      << fmt(summary.q90) << ',' << summary.fairness_fallbacks << ',' << summary.drift_checks << '\n';

  std::ostringstream replicas_csv;
  replicas_csv << "replica,seed,extinction_time,censored,violated,transitions,drift_checks,"
                  "design_cost,fairness_fallback,violation\n";
  json outcomes = json::array();
  for (std::size_t i = 0; i < summary.outcomes.size(); ++i) {
    const auto& o = summary.outcomes[i];
    replicas_csv << i << ',' << o.seed << ','
                 << (o.extinction_time ? fmt(*o.extinction_time) : std::string()) << ','
                 << o.censored << ',' << o.violated << ',' << o.transitions << ',' << o.drift_checks
                 << ',' << to_string(o.design_cost) << ',' << o.fairness_fallback << ",\""
                 << o.violation << "\"\n";
    json j;
    j["seed"] = o.seed;
    j["extinction_time"] = o.extinction_time ? json(*o.extinction_time) : json(nullptr);
    j["censored"] = o.censored;
    j["violation"] = o.violated ? json(o.violation) : json(nullptr);
    j["transitions"] = o.transitions;
    j["design_cost"] = to_string(o.design_cost);
    outcomes.push_back(std::move(j));
  }

  json doc;
  doc["policy"] = args.policy;
  doc["nodes"] = g.node_count();
  doc["r"] = to_string(cfg.r);
  doc["replicas"] = summary.replicas;
  doc["censored"] = summary.censored;
  doc["violations"] = summary.violations;
  doc["mean"] = summary.mean;
  doc["standard_error"] = summary.standard_error;
  doc["median"] = summary.median;
  doc["q10"] = summary.q10;
  doc["q90"] = summary.q90;
  doc["outcomes"] = std::move(outcomes);
  emit.primary("summary", csv.str(), doc);
  emit.side("replicas.csv", replicas_csv.str());

  // Event logs replay the first replicas with the same seeds.
  std::ostringstream lines;
  cfg.record_events = true;
  for (std::size_t i = 0; i < std::min(args.trajectories, args.replicas); ++i) {
    PolicyConfig one = cfg;
    one.seed = cfg.seed + i;
    try {
      auto t = run_policy(g, init, one);
      for (const auto& e : t.events) lines << event_json(i, e).dump() << '\n';
    } catch (const InvariantViolation& e) {
      lines << json{{"replica", i}, {"kind", "violation"}, {"detail", e.what()}}.dump() << '\n';
    }
  }
  emit.side("trajectory.jsonl", lines.str());
  return summary.violations > 0 ? kExitInvariant : kExitOk;
}

int cmd_oracle_suite(const Globals& globals, OracleSuiteOptions options, Emitter& emit) {
  options.seed = globals.seed;
  auto report = oracle_suite(options);
  std::ostringstream csv;
  write_report_csv(csv, report);
  json doc;
  doc["size_limit"] = options.size_limit;
  doc["seed"] = options.seed;
  json pairs = json::array();
  for (const auto& p : report.pairs) {
    pairs.push_back({{"pair", p.name}, {"instances", p.instances}, {"failures", p.failures},
                     {"worst_ratio", p.worst_ratio}, {"first_failure", p.first_failure}});
  }
  doc["pairs"] = std::move(pairs);
  emit.primary("oracle_report", csv.str(), doc);
  return report.ok() ? kExitOk : kExitInvariant;
}

int cmd_run_manifest(const Globals& globals, const std::string& path, std::ostream& out) {
  Manifest m = parse_manifest_file(path);
  std::filesystem::path base = std::filesystem::path(path).parent_path();
  std::filesystem::path dir;
  if (!globals.out_dir.empty()) dir = globals.out_dir;
  else if (m.out_dir) dir = base / *m.out_dir;
  else dir = base / "results";
  auto result = run_manifest(m, dir, base);
  out << "runs " << result.runs << ", invariant violations " << result.violations << '\n';
  return result.violations > 0 ? kExitInvariant : kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Curing policies and network design for SIS epidemics", "curenet"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals globals;
  app.add_option("--graph", globals.graph, "Graph file, or gen:SPEC (path:N, cycle:N, star:N, complete:N, er:N:P:SEED)");
  app.add_option("--groups", globals.groups, "Group assignment file");
  app.add_option("--seed", globals.seed, "Random seed");
  app.add_option("--out-dir", globals.out_dir, "Write outputs here instead of stdout");
  app.add_option("--format", globals.format, "Output format")->check(CLI::IsMember({"csv", "json"}));

  const std::vector<std::string> strategies{"exact", "spectral", "auto"};

  ImpedanceArgs imp;
  auto* impedance = app.add_subcommand("impedance", "Crusade from a bag to the empty bag");
  auto* imp_exact = impedance->add_flag("--exact", imp.exact, "Exhaustive subset DP");
  auto* imp_approx = impedance->add_flag("--approx", imp.approx, "Recursive balanced cuts (default)");
  imp_exact->excludes(imp_approx);
  impedance->add_option("--bag", imp.bag, "Bag file, all or none");
  impedance->add_option("--balanced-cut", imp.strategy)->check(CLI::IsMember(strategies));

  FairArgs fair;
  auto* fair_cmd = app.add_subcommand("fair-crusade", "Crusade satisfying the group-fairness test");
  fair_cmd->add_option("--bag", fair.bag);
  fair_cmd->add_option("--checkpoints", fair.checkpoints, "Comma-separated positions, e.g. 2,4");
  fair_cmd->add_option("--gamma", fair.gamma);
  fair_cmd->add_flag("--skip-final-segment", fair.skip_final, "Do not test the segment after the last checkpoint");
  fair_cmd->add_flag("--exact", fair.exact, "Exhaustive search instead of the approximation");
  fair_cmd->add_option("--balanced-cut", fair.strategy)->check(CLI::IsMember(strategies));

  WidthArgs width;
  auto* width_cmd = app.add_subcommand("design-width", "Reduce weights so a crusade has width <= b");
  width_cmd->add_option("--mode", width.mode)->required()->check(CLI::IsMember({"lp", "round", "uwcmp"}));
  width_cmd->add_option("--b", width.b, "Width threshold")->required();
  width_cmd->add_option("--bag", width.bag);
  width_cmd->add_option("--crusade", width.crusade, "Crusade source")->check(CLI::IsMember({"exact", "approx"}));
  width_cmd->add_option("--balanced-cut", width.strategy)->check(CLI::IsMember(strategies));

  MaxCutArgs maxcut;
  auto* maxcut_cmd = app.add_subcommand("design-maxcut", "Reduce weights to lower the restricted max-cut");
  auto* budget_opt = maxcut_cmd->add_option("--budget", maxcut.budget);
  auto* target_opt = maxcut_cmd->add_option("--target", maxcut.target);
  maxcut_cmd->add_option("--eps", maxcut.eps);
  budget_opt->excludes(target_opt);
  maxcut_cmd->add_option("--bag", maxcut.bag);
  maxcut_cmd->add_option("--gap-tolerance", maxcut.gap);

  SimArgs sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Run a curing policy on the SIS chain");
  sim_cmd->add_option("--policy", sim.policy)
      ->check(CLI::IsMember({"cure", "fair", "design", "maxcut", "baseline"}));
  sim_cmd->add_option("--init", sim.init, "Initially infected nodes: file, all or none");
  sim_cmd->add_option("--r", sim.r, "Curing budget")->required();
  sim_cmd->add_option("--replicas", sim.replicas);
  sim_cmd->add_option("--time-cap", sim.time_cap);
  sim_cmd->add_option("--balanced-cut", sim.strategy)->check(CLI::IsMember(strategies));
  sim_cmd->add_flag("--idle-waiting", sim.idle_waiting, "Spend no budget during waiting periods");
  sim_cmd->add_option("--remark-threshold", sim.remark_threshold,
                      "Design policy restarts when divisor * d_max * |D| >= r");
  sim_cmd->add_option("--alpha", sim.alpha);
  sim_cmd->add_option("--adversary", sim.adversary)->check(CLI::IsMember({"uniform", "anti-greedy"}));
  sim_cmd->add_option("--checkpoints", sim.checkpoints);
  sim_cmd->add_option("--gamma", sim.gamma);
  sim_cmd->add_option("--design-eps", sim.design_eps);
  sim_cmd->add_option("--threads", sim.threads);
  sim_cmd->add_option("--trajectories", sim.trajectories, "Replicas whose event log is written");

  OracleSuiteOptions oracle;
  auto* oracle_cmd = app.add_subcommand("oracle-suite", "Approximations against exhaustive oracles");
  oracle_cmd->add_option("--size-limit", oracle.size_limit)->check(CLI::Range(1, 12));
  oracle_cmd->add_option("--instances", oracle.instances);

  std::string manifest_path;
  auto* manifest_cmd = app.add_subcommand("run-manifest", "Execute an experiment manifest");
  manifest_cmd->add_option("manifest", manifest_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  Emitter emit(globals, out);
  try {
    if (*impedance) return cmd_impedance(globals, imp, emit);
    if (*fair_cmd) return cmd_fair_crusade(globals, fair, emit, err);
    if (*width_cmd) return cmd_design_width(globals, width, emit);
    if (*maxcut_cmd) return cmd_design_maxcut(globals, maxcut, emit);
    if (*sim_cmd) return cmd_simulate(globals, sim, emit);
    if (*oracle_cmd) return cmd_oracle_suite(globals, oracle, emit);
    if (*manifest_cmd) return cmd_run_manifest(globals, manifest_path, out);
  } catch (const InvariantViolation& e) {
    err << "invariant violation: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitInput;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    return kExitInput;
  } catch (const DomainError& e) {
    err << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const StructureError& e) {
    err << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const CapacityError& e) {
    err << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    err << "solver failure: " << e.what() << '\n';
    return kExitSolver;
  }
  return kExitOk;
}

}  // namespace curenet::cli
