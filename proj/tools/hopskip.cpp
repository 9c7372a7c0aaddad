// hopskip: period/energy analysis and design space exploration for
// dataflow graphs with always-active and self-powered actors.

#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hopskip/dse.hpp"
#include "hopskip/energy.hpp"
#include "hopskip/errors.hpp"
#include "hopskip/generate.hpp"
#include "hopskip/metrics.hpp"
#include "hopskip/milp.hpp"
#include "hopskip/results.hpp"
#include "hopskip/rng.hpp"
#include "hopskip/sdf3.hpp"
#include "hopskip/timing.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using namespace hopskip;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 2;
constexpr int kExitUsage = 64;
constexpr int kExitData = 65;
constexpr int kExitInternal = 70;

// Exact and readable at once: "11/2 (5.5)", integers as "23 (23/1)".
std::string show(const Rational& r) {
  return r.decimal(6) + " (" + r.str() + ")";
}

std::string show_cycle(const MarkedGraph& g, const std::vector<std::size_t>& ids) {
  std::string out;
  for (std::size_t id : ids) {
    if (!out.empty()) out += " -> ";
    out += g.actor(id).name;
  }
  if (ids.size() > 1) out += " -> " + g.actor(ids.front()).name;
  return out;
}

struct GraphInput {
  std::string xml;
  std::string annotations;
  std::vector<std::string> policy;
  std::size_t instance_cap = kDefaultInstanceCap;
};

void apply_policy(AugmentationPolicy& p, const std::vector<std::string>& overrides) {
  for (const std::string& kv : overrides) {
    auto eq = kv.find('=');
    if (eq == std::string::npos) throw InvalidArgumentError("policy override '" + kv + "' is not KEY=VALUE");
    const std::string key = kv.substr(0, eq);
    const Rational v = Rational::parse(kv.substr(eq + 1));
    auto integer = [&] {
      if (!v.is_integer()) throw InvalidArgumentError("'" + key + "' needs an integer");
      return v.num();
    };
    if (key == "p_exe") p.base.exe = v;
    else if (key == "p_idle") p.base.idle = v;
    else if (key == "p_sd") p.base.sd = v;
    else if (key == "p_wu") p.base.wu = v;
    else if (key == "p_slp") p.base.slp = v;
    else if (key == "w") p.wakeup = integer();
    else if (key == "s") p.shutdown = integer();
    else if (key == "scale_min") p.scale_min = integer();
    else if (key == "scale_max") p.scale_max = integer();
    else throw InvalidArgumentError("unknown policy key '" + key + "'");
  }
  p.validate();
}

UnrolledGraph load_graph(const GraphInput& in, std::string* name = nullptr) {
  Sdf3Options opts;
  apply_policy(opts.defaults, in.policy);
  std::optional<fs::path> ann;
  if (!in.annotations.empty()) ann = in.annotations;
  SdfGraph sdf = load_sdf3(in.xml, ann, opts);
  if (name) *name = sdf.name;
  return unroll(sdf, in.instance_cap);
}

void add_graph_options(CLI::App* cmd, GraphInput& in, bool positional = true) {
  if (positional) cmd->add_option("graph", in.xml, "SDF3 XML file")->required()->check(CLI::ExistingFile);
  cmd->add_option("--annotations,-a", in.annotations, "sidecar JSON with delays and powers")
      ->check(CLI::ExistingFile);
  cmd->add_option("--policy", in.policy, "default override KEY=VALUE (p_exe, p_idle, p_sd, p_wu, p_slp, w, s)");
  cmd->add_option("--cap", in.instance_cap, "maximum number of unrolled actor instances");
}

// --- analyze ---------------------------------------------------------------

struct AnalyzeArgs {
  GraphInput graph;
  std::string x;
  std::string period;
  std::string anchor = "fireability";
  std::string schedule_out;
  std::string gantt_out;
};

int cmd_analyze(const AnalyzeArgs& args) {
  std::string name;
  UnrolledGraph u = load_graph(args.graph, &name);
  const MarkedGraph& g = u.graph;
  const DecisionVector x = args.x.empty() ? DecisionVector(g.group_count()) : DecisionVector::parse(args.x);
  if (x.size() != g.group_count()) {
    throw DimensionMismatchError("x has " + std::to_string(x.size()) + " bits, graph has " +
                                 std::to_string(g.group_count()) + " groups");
  }
  for (const std::string& w : g.lint()) std::cerr << "warning: " << w << "\n";

  if (auto live = validate_liveness(g); !live) {
    std::cout << "deadlock: token-free cycle " << show_cycle(g, live.cycle) << "\n";
    return kExitInfeasible;
  }
  const Rational p_min = min_period(g, x);
  const Rational period = args.period.empty() ? p_min : Rational::parse(args.period);
  ScheduleResult r = schedule_for(g, x, period);
  std::cout << "graph " << name << ": " << g.actor_count() << " actors, " << g.group_count() << " groups\n";
  std::cout << "x = " << x.str() << "\n";
  if (!r) {
    std::cout << "infeasible at P = " << show(period) << "; minimum is " << show(p_min) << "\n";
    std::cout << "critical cycle: " << show_cycle(g, r.witness) << "\n";
    return kExitInfeasible;
  }
  Schedule sched = *r.schedule;
  if (args.anchor == "execution_start") sched = reanchor(g, x, sched, ScheduleAnchor::execution_start);

  std::cout << "P = " << show(period) << "\n";
  std::cout << "schedule (" << args.anchor << "):\n";
  for (const ActorSpec& a : g.actors()) std::cout << "  " << a.name << " " << show(sched.starts[a.id]) << "\n";
  std::cout << "energy per iteration:\n";
  for (const ActorSpec& a : g.actors()) {
    const bool sp = x[a.group];
    std::cout << "  " << a.name << " " << (sp ? "SP" : "AA") << " " << show(actor_energy(a, sp, period)) << "\n";
  }
  std::cout << "E = " << show(total_energy(g, period, x)) << "\n";

  if (!args.schedule_out.empty()) write_text_file(args.schedule_out, write_schedule(make_schedule_record(g, x, sched)));
  if (!args.gantt_out.empty()) write_text_file(args.gantt_out, write_gantt_csv(gantt_rows(g, x, sched)));
  return kExitOk;
}

// --- explore ---------------------------------------------------------------

struct ExploreArgs {
  GraphInput graph;
  std::optional<std::uint64_t> seed;
  std::string strategy = "hs";
  std::string epsilon = "1/10";
  std::size_t workers = 1;
  std::size_t group_cap = 24;
  std::string out = ".";
  std::string reference_front;
  bool no_timing = false;
};

int cmd_explore(const ExploreArgs& args) {
  if (args.graph.xml.empty() == !args.seed.has_value()) {
    throw InvalidArgumentError("give exactly one input: a graph file or --seed");
  }
  std::string name;
  UnrolledGraph u;
  if (args.seed) {
    GeneratorParams p;
    p.seed = *args.seed;
    apply_policy(p.policy, args.graph.policy);
    SdfGraph sdf = generate_random(p);
    name = sdf.name;
    u = unroll(sdf, args.graph.instance_cap);
  } else {
    u = load_graph(args.graph, &name);
  }
  const MarkedGraph& g = u.graph;
  const ExploreOptions opts{args.group_cap, args.workers};
  const Rational eps = Rational::parse(args.epsilon);
  if (args.strategy == "hs" && eps.sign() <= 0) throw InvalidArgumentError("--epsilon must be positive");

  Exploration run;
  if (args.strategy == "xs") {
    try {
      run = dse_xs(g, opts);
    } catch (const TooManyGroupsError& e) {
      throw TooManyGroupsError(std::string(e.what()) + "; try --strategy hs");
    }
  } else if (args.strategy == "ps") {
    run = dse_ps(g, opts);
  } else {
    run = dse_hs(g, eps, opts);
  }

  ResultsDocument doc;
  doc.strategy = run.strategy;
  doc.graph = name;
  if (args.strategy == "hs") doc.epsilon = eps;
  doc.points = run.points;
  doc.front = pareto_filter(run.points);
  doc.stats = run.stats;
  doc.metadata["actors"] = std::to_string(g.actor_count());
  doc.metadata["groups"] = std::to_string(g.group_count());
  doc.metadata["rng"] = Rng::kAlgorithm;
  if (args.seed) doc.metadata["seed"] = std::to_string(*args.seed);

  if (!args.reference_front.empty()) {
    const Front ref = read_front_csv(read_text_file(args.reference_front));
    try {
      doc.hypervolume_ratio = compare_fronts(doc.front, ref);
    } catch (const DegenerateError&) {
      doc.metadata["hypervolume_ratio"] = "undefined: reference hypervolume is 0";
      doc.metadata["covers_reference"] = weakly_covers(doc.front, ref) ? "yes" : "no";
    }
  }

  fs::create_directories(args.out);
  const fs::path dir(args.out);
  write_text_file(dir / "points.csv", write_points_csv(doc.points));
  write_text_file(dir / "front.csv", write_front_csv(doc.front));
  write_text_file(dir / "report.json", write_results(doc, {!args.no_timing}));

  std::cout << "strategy " << doc.strategy << ": " << doc.points.size() << " points, " << doc.front.size()
            << " on the front\n";
  for (const ExploredPoint& p : doc.front) {
    std::cout << "  P = " << show(p.period) << "  E = " << show(p.energy) << "  x = " << p.x.str() << "\n";
  }
  if (doc.hypervolume_ratio) std::cout << "HV = " << show(*doc.hypervolume_ratio) << "\n";
  if (doc.metadata.count("covers_reference")) {
    std::cout << "HV undefined (reference hypervolume is 0); covers reference: "
              << doc.metadata["covers_reference"] << "\n";
  }
  return kExitOk;
}

// --- gen -------------------------------------------------------------------

struct GenArgs {
  GeneratorParams params;
  std::vector<std::string> policy;
  std::string out = ".";
  std::string name;
};

int cmd_gen(GenArgs args) {
  apply_policy(args.params.policy, args.policy);
  args.params.validate();
  SdfGraph sdf = generate_random(args.params);
  if (!args.name.empty()) sdf.name = args.name;
  const auto q = repetition_vector(sdf);
  std::int64_t sum = 0;
  for (auto v : q) sum += v;

  // The sidecar carries the generation metadata next to the annotations.
  auto ann = nlohmann::json::parse(write_annotations(sdf));
  ann["metadata"] = {{"seed", std::to_string(args.params.seed)},
                     {"rng", Rng::kAlgorithm},
                     {"repetition_sum", std::to_string(sum)},
                     {"actors", std::to_string(sdf.actors.size())},
                     {"channels", std::to_string(sdf.channels.size())}};
  fs::create_directories(args.out);
  const fs::path dir(args.out);
  write_text_file(dir / (sdf.name + ".xml"), write_sdf3(sdf));
  write_text_file(dir / (sdf.name + ".annotations.json"), ann.dump(2) + "\n");
  std::cout << "wrote " << (dir / (sdf.name + ".xml")).string() << " (" << sdf.actors.size()
            << " actors, repetition sum " << sum << ")\n";
  return kExitOk;
}

// --- verify ----------------------------------------------------------------

struct VerifyArgs {
  GraphInput graph;
  std::string schedule;
};

int cmd_verify(const VerifyArgs& args) {
  UnrolledGraph u = load_graph(args.graph);
  const MarkedGraph& g = u.graph;
  const ScheduleRecord rec = read_schedule(read_text_file(args.schedule));
  const Schedule sched = schedule_for_graph(g, rec);
  const auto violations = verify_schedule(g, rec.x, sched);
  if (violations.empty()) {
    std::cout << "schedule valid at P = " << show(sched.period) << "\n";
    return kExitOk;
  }
  for (const auto& v : violations) std::cout << "violation: " << v.describe(g) << "\n";
  return kExitInfeasible;
}

// --- hv --------------------------------------------------------------------

struct HvArgs {
  std::string app;
  std::string ref;
};

int cmd_hv(const HvArgs& args) {
  const Front app = read_front_csv(read_text_file(args.app));
  const Front ref = read_front_csv(read_text_file(args.ref));
  const NormalizationBox box = NormalizationBox::enclosing({&app, &ref});
  const auto a = normalize(app, box);
  const auto r = normalize(ref, box);
  std::cout << "hypervolume(app) = " << show(hypervolume(a)) << "\n";
  std::cout << "hypervolume(ref) = " << show(hypervolume(r)) << "\n";
  try {
    const Rational ratio = hypervolume_ratio(a, r);
    std::cout << "HV = " << show(ratio) << "\n";
  } catch (const DegenerateError&) {
    std::cout << "HV undefined (reference hypervolume is 0); covers reference: "
              << (weakly_covers(app, ref) ? "yes" : "no") << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Energy/period design space exploration for dataflow graphs"};
  app.require_subcommand(1);

  AnalyzeArgs analyze;
  auto* c_analyze = app.add_subcommand("analyze", "minimum period, schedule and energy of one configuration");
  add_graph_options(c_analyze, analyze.graph);
  c_analyze->add_option("--x", analyze.x, "decision bits, one per SDF actor (default all 0)");
  c_analyze->add_option("--period,-P", analyze.period, "period to schedule at (default: the minimum)");
  c_analyze->add_option("--anchor", analyze.anchor, "start time convention")
      ->check(CLI::IsMember({"fireability", "execution_start"}));
  c_analyze->add_option("--schedule-out", analyze.schedule_out, "write the schedule as JSON");
  c_analyze->add_option("--gantt", analyze.gantt_out, "write power profile segments as CSV");

  ExploreArgs explore;
  auto* c_explore = app.add_subcommand("explore", "explore the period/energy trade-off");
  add_graph_options(c_explore, explore.graph, false);
  c_explore->add_option("graph", explore.graph.xml, "SDF3 XML file")->check(CLI::ExistingFile);
  c_explore->add_option("--seed", explore.seed, "explore a generated graph instead of a file");
  c_explore->add_option("--strategy", explore.strategy)->check(CLI::IsMember({"xs", "ps", "hs"}));
  c_explore->add_option("--epsilon", explore.epsilon, "hop & skip period decrement, e.g. 1/10");
  c_explore->add_option("--workers", explore.workers)->check(CLI::PositiveNumber);
  c_explore->add_option("--group-cap", explore.group_cap, "largest group count xs accepts");
  c_explore->add_option("--out,-o", explore.out, "output directory");
  c_explore->add_option("--reference-front", explore.reference_front, "front CSV to compare against")
      ->check(CLI::ExistingFile);
  c_explore->add_flag("--no-timing", explore.no_timing, "omit wall-clock time from report.json");

  GenArgs gen;
  auto* c_gen = app.add_subcommand("gen", "generate a random annotated SDF graph");
  c_gen->add_option("--seed", gen.params.seed);
  c_gen->add_option("--actors", gen.params.actors);
  c_gen->add_option("--rate-min", gen.params.rate_min);
  c_gen->add_option("--rate-max", gen.params.rate_max);
  c_gen->add_option("--repetition-sum", gen.params.repetition_sum);
  c_gen->add_option("--degree-mean", gen.params.degree_mean);
  c_gen->add_option("--degree-variance", gen.params.degree_variance);
  c_gen->add_option("--policy", gen.policy, "augmentation override KEY=VALUE");
  c_gen->add_option("--name", gen.name, "graph name (default random_<seed>)");
  c_gen->add_option("--out,-o", gen.out, "output directory");

  VerifyArgs verify;
  auto* c_verify = app.add_subcommand("verify", "check a schedule file against a graph");
  add_graph_options(c_verify, verify.graph);
  c_verify->add_option("schedule", verify.schedule, "schedule JSON")->required()->check(CLI::ExistingFile);

  HvArgs hv;
  auto* c_hv = app.add_subcommand("hv", "hypervolume ratio of two front CSV files");
  c_hv->add_option("app", hv.app, "front to assess")->required()->check(CLI::ExistingFile);
  c_hv->add_option("ref", hv.ref, "reference front")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (c_analyze->parsed()) return cmd_analyze(analyze);
    if (c_explore->parsed()) return cmd_explore(explore);
    if (c_gen->parsed()) return cmd_gen(gen);
    if (c_verify->parsed()) return cmd_verify(verify);
    if (c_hv->parsed()) return cmd_hv(hv);
  } catch (const DeadlockError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const PeriodTooShortError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const InvalidArgumentError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DimensionMismatchError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const TooManyGroupsError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitData;
  } catch (const SchemaError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const InconsistentGraphError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}
