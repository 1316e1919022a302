#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "msm/analysis.hpp"
#include "msm/engine.hpp"
#include "msm/experiments.hpp"
#include "msm/fleet.hpp"
#include "msm/io.hpp"

namespace {

using namespace msm;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<PolicyKind> parse_policy_list(const std::string& text, const Instance& instance) {
  const auto names = split_list(text);
  if (static_cast<int>(names.size()) != instance.n()) {
    throw UsageError("--policies needs one entry per agent (" + std::to_string(instance.n()) + ")");
  }
  std::vector<PolicyKind> out;
  for (const std::string& name : names) {
    if (name == "greedy") {
      out.emplace_back(GreedyPolicy{});
    } else if (name == "simultaneous_greedy") {
      out.emplace_back(SimultaneousGreedyPolicy{});
    } else if (name == "example1_strategic") {
      out.push_back(example1_strategic_policy(instance.n()));
    } else {
      throw UsageError("unknown policy \"" + name + "\"");
    }
  }
  return out;
}

std::vector<Theorem> parse_theorem_list(const std::string& text) {
  std::vector<Theorem> out;
  for (const std::string& name : split_list(text)) {
    const auto t = parse_theorem(name);
    if (!t) throw UsageError("unknown theorem \"" + name + "\" (expected T1..T7)");
    out.push_back(*t);
  }
  if (out.empty()) throw UsageError("--theorems needs at least one of T1..T7");
  return out;
}

void apply_rule_and_rounds(ProtocolConfig& config, const std::string& rule, const std::string& rounds) {
  if (rule == "as_written") {
    config.rule = NegativeMarginalRule::as_written;
  } else if (rule == "skip_nonpositive") {
    config.rule = NegativeMarginalRule::skip_nonpositive;
  } else if (!rule.empty()) {
    throw UsageError("--rule must be as_written or skip_nonpositive");
  }
  if (rounds == "ceil_m_over_n") {
    config.rounds = RoundLimit::ceil_m_over_n;
  } else if (rounds == "until_stalled") {
    config.rounds = RoundLimit::until_stalled;
  } else if (!rounds.empty()) {
    throw UsageError("--rounds must be ceil_m_over_n or until_stalled");
  }
}

void emit(const nlohmann::json& doc, const std::string& out_path) {
  const std::string text = doc.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    write_text_file(out_path, text);
  }
}

// ---------------------------------------------------------------------------

struct RunArgs {
  std::string instance;
  std::string policies;
  std::uint64_t seed = 0;
  bool randomized = false;
  std::string trace;
  std::string rule;
  std::string rounds;
};

int cmd_run(const RunArgs& args) {
  InstanceFile file = load_instance(args.instance);
  if (!args.policies.empty()) file.policies = parse_policy_list(args.policies, file.instance);
  apply_rule_and_rounds(file.config, args.rule, args.rounds);
  const Trace trace = args.randomized
                          ? run_randomized_round_robin(file.instance, file.policies, RngSeed{args.seed}, file.config)
                          : run_round_robin(file.instance, file.policies, file.config);
  const Allocation allocation = allocation_of(trace, file.instance);

  std::printf("order:");
  for (int a : trace.permutation) std::printf(" %d", a);
  std::printf("\nrounds: %d\n", trace.rounds());
  for (int i = 0; i < file.instance.n(); ++i) {
    const AgentBundle& b = allocation[i];
    std::printf("agent %d %s", i, trace.policies[static_cast<std::size_t>(i)].c_str());
    for (const ItemSet& s : b.solutions) std::printf(" %s", s.to_string().c_str());
    std::printf(" value %.6f\n", file.instance.objective(i).value(b.selected()));
  }
  if (!args.trace.empty()) write_text_file(args.trace, export_trace(trace));
  return kExitOk;
}

struct VerifyArgs {
  std::string instance;
  std::string theorems;
  std::size_t fleet = 0;
  std::string regime;
  std::uint64_t seed = 1;
  std::uint64_t samples = 2000;
  std::string out;
};

int cmd_verify(const VerifyArgs& args) {
  const std::vector<Theorem> theorems = parse_theorem_list(args.theorems);
  nlohmann::json doc;
  bool passed = true;

  if (args.fleet > 0) {
    std::vector<FleetParams> regimes;
    if (args.regime.empty()) {
      regimes = all_regimes();
    } else {
      const auto r = parse_regime(args.regime);
      if (!r) throw UsageError("unknown regime \"" + args.regime + "\"");
      regimes.push_back(*r);
    }
    nlohmann::json fleets = nlohmann::json::array();
    for (std::size_t k = 0; k < regimes.size(); ++k) {
      const FleetSummary s = verify_fleet(regimes[k], args.fleet, derive_seed(RngSeed{args.seed}, k), theorems);
      passed = passed && s.violations == 0;
      fleets.push_back(to_json(s));
    }
    doc["fleets"] = fleets;
  }

  if (!args.instance.empty()) {
    const InstanceFile file = load_instance(args.instance);
    const Trace trace = run_round_robin(file.instance, file.policies, file.config);
    const BenchmarkReport bench = benchmark_report(file.instance, trace, theorems);
    passed = passed && bench.passed;
    nlohmann::json inst = {{"m", file.instance.m()}, {"n", file.instance.n()}, {"benchmarks", to_json(bench)}};

    bool fairness = false;
    bool exante = false;
    for (Theorem t : theorems) {
      fairness = fairness || t == Theorem::T3 || t == Theorem::T4;
      exante = exante || t == Theorem::T7;
    }
    if (fairness) {
      const FairnessReport f = fairness_report(file.instance, trace);
      passed = passed && f.theorem_bounds_passed;
      inst["fairness"] = to_json(f);
    }
    if (exante) {
      const ExanteMode mode = file.instance.n() <= kExactExanteLimit
                                  ? ExanteMode::exact_mode()
                                  : ExanteMode::monte_carlo(args.samples, RngSeed{args.seed});
      try {
        const ExanteReport r = exante_bound_check(file.instance, file.policies, mode, file.config);
        passed = passed && r.passed;
        inst["exante"] = to_json(r);
      } catch (const BoundMismatch& e) {
        inst["exante"] = {{"not_applicable", e.what()}};
      }
    }
    bool all_greedy = true;
    for (const std::string& p : trace.policies) all_greedy = all_greedy && p == "greedy";
    if (all_greedy) inst["saturation"] = to_json(check_corollary_saturation(file.instance, allocation_of(trace)));
    doc["instance"] = inst;
  }

  if (args.fleet == 0 && args.instance.empty()) throw UsageError("verify needs an instance file or --fleet N");
  doc["passed"] = passed;
  emit(doc, args.out);
  return passed ? kExitOk : kExitCheckFailed;
}

struct ExanteArgs {
  std::string instance;
  bool exact = false;
  std::uint64_t samples = 0;
  std::uint64_t seed = 1;
  std::string out;
};

int cmd_exante(const ExanteArgs& args) {
  const InstanceFile file = load_instance(args.instance);
  ExanteMode mode = ExanteMode::exact_mode();
  if (args.samples > 0) {
    if (args.exact) throw UsageError("--exact and --samples are mutually exclusive");
    mode = ExanteMode::monte_carlo(args.samples, RngSeed{args.seed});
  }
  const ExanteReport r = exante_bound_check(file.instance, file.policies, mode, file.config);
  emit(to_json(r), args.out);
  return r.passed ? kExitOk : kExitCheckFailed;
}

struct ExperimentArgs {
  std::string spec;
  std::string csv;
  unsigned workers = 0;
};

int cmd_experiment(const ExperimentArgs& args) {
  const ExperimentSpec spec = load_experiment(args.spec);
  const auto rows = run_experiment(spec, args.workers == 0 ? default_workers() : args.workers);
  write_text_file(args.csv, format_csv(rows));
  std::printf("%zu rows written to %s\n", rows.size(), args.csv.c_str());
  return kExitOk;
}

struct Example1Args {
  int n = 2;
  bool strategic = false;
  std::string layout = "consistent";
};

int cmd_example1(const Example1Args& args) {
  if (args.n < 2) throw UsageError("--n must be at least 2");
  Example1Layout layout = Example1Layout::consistent;
  if (args.layout == "printed") {
    layout = Example1Layout::printed;
  } else if (args.layout != "consistent") {
    throw UsageError("--layout must be consistent or printed");
  }
  const Instance instance = example1_instance(args.n, layout);
  std::vector<PolicyKind> policies(static_cast<std::size_t>(args.n), GreedyPolicy{});
  ProtocolConfig config;
  if (args.strategic) {
    policies[0] = example1_strategic_policy(args.n);
    config.rule = NegativeMarginalRule::skip_nonpositive;
  }
  const Trace trace = run_round_robin(instance, policies, config);
  const Allocation allocation = allocation_of(trace, instance);
  const double value = instance.objective(0).value(allocation[0].selected());

  std::printf("n %d, items %d\n", args.n, instance.m());
  std::printf("agent 1 %s: %s value %g\n", args.strategic ? "strategic" : "greedy",
              allocation[0].selected().to_string().c_str(), value);
  if (instance.m() <= kBruteForceLimit) {
    const OptResult opt = brute_force_opt(instance.objective(0), instance.constraint(0), ItemSet::range(instance.m()));
    std::printf("OPT_1 %g (brute force)\n", opt.value);
  } else {
    std::printf("OPT_1 %d (additive closed form)\n", 2 * args.n);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Competing submodular maximization: Round-Robin protocols, bound verification, experiments"};
  app.require_subcommand(1);

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Run the Round-Robin protocol on an instance file");
  run_cmd->add_option("instance", run.instance, "Instance JSON file")->required()->check(CLI::ExistingFile);
  run_cmd->add_option("--policies", run.policies, "Comma-separated policy per agent");
  auto* seed_opt = run_cmd->add_option("--seed", run.seed, "Randomize the turn order with this seed");
  run_cmd->add_option("--trace", run.trace, "Write the pick trace to this file");
  run_cmd->add_option("--rule", run.rule, "as_written | skip_nonpositive");
  run_cmd->add_option("--rounds", run.rounds, "ceil_m_over_n | until_stalled");

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Check theorem bounds on an instance or random fleets");
  verify_cmd->add_option("instance", verify.instance, "Instance JSON file")->check(CLI::ExistingFile);
  verify_cmd->add_option("--theorems", verify.theorems, "Comma-separated list, e.g. T1,T3")->required();
  verify_cmd->add_option("--fleet", verify.fleet, "Instances per random regime");
  verify_cmd->add_option("--regime", verify.regime, "Restrict the fleet to one regime");
  verify_cmd->add_option("--seed", verify.seed, "Fleet and Monte-Carlo seed");
  verify_cmd->add_option("--samples", verify.samples, "Monte-Carlo samples for T7 when n > 6");
  verify_cmd->add_option("--out", verify.out, "Write the JSON report here instead of stdout");

  ExanteArgs exante;
  auto* exante_cmd = app.add_subcommand("exante", "Ex-ante guarantee of the randomized protocol");
  exante_cmd->add_option("instance", exante.instance, "Instance JSON file")->required()->check(CLI::ExistingFile);
  exante_cmd->add_flag("--exact", exante.exact, "Enumerate every turn order (default)");
  exante_cmd->add_option("--samples", exante.samples, "Monte-Carlo samples instead of enumeration");
  exante_cmd->add_option("--seed", exante.seed, "Monte-Carlo seed");
  exante_cmd->add_option("--out", exante.out, "Write the JSON report here instead of stdout");

  ExperimentArgs experiment;
  auto* experiment_cmd = app.add_subcommand("experiment", "Competing influence maximization on synthetic graphs");
  experiment_cmd->add_option("spec", experiment.spec, "Experiment JSON file")->required()->check(CLI::ExistingFile);
  experiment_cmd->add_option("--csv", experiment.csv, "Output CSV path")->required();
  experiment_cmd->add_option("--workers", experiment.workers, "Worker threads (0 = all cores)");

  Example1Args example1;
  auto* example1_cmd = app.add_subcommand("example1", "Adversarial instance where greedy agent 1 gets 2");
  example1_cmd->add_option("--n", example1.n, "Number of agents")->required();
  example1_cmd->add_flag("--strategic", example1.strategic, "Agent 1 plays the strategic pick order");
  example1_cmd->add_option("--layout", example1.layout, "consistent | printed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*run_cmd) {
      run.randomized = seed_opt->count() > 0;
      return cmd_run(run);
    }
    if (*verify_cmd) return cmd_verify(verify);
    if (*exante_cmd) return cmd_exante(exante);
    if (*experiment_cmd) return cmd_experiment(experiment);
    if (*example1_cmd) return cmd_example1(example1);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCheckFailed;
  }
  return kExitUsage;
}
