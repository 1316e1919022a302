#include <string>

#include "doctest.h"
#include "msm/io.hpp"

using namespace msm;
using nlohmann::json;

namespace {

std::string data(const std::string& name) { return std::string(MSM_TEST_DATA) + "/" + name; }

std::string error_of(const std::string& text) {
  try {
    parse_instance(text);
  } catch (const InvalidArgument& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("load the two-agent fixture and replay it") {
    const InstanceFile file = load_instance(data("two_agent_additive.json"));
    CHECK(file.instance.n() == 2);
    CHECK(file.instance.m() == 3);
    CHECK(policy_name(file.policies[0]) == "greedy");
    const Trace trace = run_round_robin(file.instance, file.policies, file.config);
    CHECK(export_trace(trace) == "1,1,0,0\n1,2,1,1\n2,1,0,2\n2,2,1,DUMMY\n");
  }

  TEST_CASE("mixed fixtures: defaults, matroids, protocol order") {
    const InstanceFile cut = load_instance(data("cut_pair.json"));
    CHECK_FALSE(cut.instance.monotone(0));
    CHECK(policy_name(cut.policies[1]) == "simultaneous_greedy");
    CHECK(cut.instance.constraint(1).is_matroid());

    const InstanceFile cov = load_instance(data("coverage_three.json"));
    CHECK(cov.instance.n() == 3);
    CHECK(cov.config.order == std::vector<int>{2, 0, 1});
    CHECK(cov.instance.constraint(2).is_matroid());
    CHECK_FALSE(cov.instance.constraint(2).is_independent({0, 1, 2}));
  }

  TEST_CASE("instances round-trip through JSON") {
    for (const char* name : {"two_agent_additive.json", "cut_pair.json", "coverage_three.json"}) {
      const InstanceFile a = load_instance(data(name));
      const std::string text = instance_to_json(a.instance, a.policies, a.config);
      const InstanceFile b = parse_instance(text);
      CHECK(instance_to_json(b.instance, b.policies, b.config) == text);
      CHECK(export_trace(run_round_robin(a.instance, a.policies, a.config)) ==
            export_trace(run_round_robin(b.instance, b.policies, b.config)));
    }
    const Instance ex1 = example1_instance(3, Example1Layout::printed);
    std::vector<PolicyKind> policies = default_policies(ex1);
    policies[0] = example1_strategic_policy(3);
    ProtocolConfig config;
    config.rule = NegativeMarginalRule::skip_nonpositive;
    config.rounds = RoundLimit::until_stalled;
    const std::string text = instance_to_json(ex1, policies, config);
    const InstanceFile back = parse_instance(text);
    CHECK(instance_to_json(back.instance, back.policies, back.config) == text);
    CHECK(back.config.rule == NegativeMarginalRule::skip_nonpositive);

    const Constraint nested = Constraint::intersection(
        {Constraint::partition_matroid(4, {{0, 1}, {2, 3}}, {1, 1}),
         restrict(Constraint::graphic_matroid(3, {{0, 1}, {1, 2}, {2, 0}, {0, 2}}), ItemSet{0, 1, 3})});
    const Instance inst = build_instance(GroundSet{4}, {make_agent(AdditiveParams{{1, 2, 3, 4}}, nested)});
    const std::string nested_text = instance_to_json(inst, default_policies(inst));
    const InstanceFile nb = parse_instance(nested_text);
    CHECK(instance_to_json(nb.instance, nb.policies) == nested_text);
    CHECK(nb.instance.constraint(0).declared_p() == 2);
  }

  TEST_CASE("malformed instances name the offending path") {
    CHECK(error_of("{").find("malformed JSON") != std::string::npos);
    CHECK(error_of(R"({"agents": []})").find("$: missing \"m\"") != std::string::npos);
    CHECK(error_of(R"({"m": 2, "agents": []})").find("$.agents") != std::string::npos);
    CHECK(error_of(R"({"m": 2, "agents": [{"constraint": {"family": "cardinality", "k": 1}}]})")
              .find("$.agents[0]: missing \"objective\"") != std::string::npos);
    CHECK(error_of(R"({"m": 2, "agents": [{"objective": {"family": "magic"},
                       "constraint": {"family": "cardinality", "k": 1}}]})")
              .find("$.agents[0].objective.family") != std::string::npos);
    CHECK(error_of(R"({"m": 2, "agents": [{"objective": {"family": "additive", "weights": [1, 1]},
                       "constraint": {"family": "graphic_matroid", "edges": [[0, 1]]}}]})")
              .find("$.agents[0].constraint") != std::string::npos);
    CHECK(error_of(R"({"m": 2, "agents": [{"objective": {"family": "additive", "weights": [1, 1]},
                       "constraint": {"family": "cardinality", "k": 1}, "policy": {"kind": "lucky"}}]})")
              .find("$.agents[0].policy.kind") != std::string::npos);
    CHECK(error_of(R"({"m": 2, "agents": [{"objective": {"family": "additive", "weights": [1, 1]},
                       "constraint": {"family": "cardinality", "k": 1}}], "protocol": {"rule": "maybe"}})")
              .find("$.protocol.rule") != std::string::npos);
    CHECK(error_of(R"({"m": 2, "agents": [{"objective": {"family": "additive", "weights": [1, 1]},
                       "constraint": {"family": "cardinality", "k": "one"}}]})")
              .find("$.agents[0].constraint.k") != std::string::npos);
    CHECK(error_of(R"({"m": 2, "agents": [{"objective": {"family": "cut", "edges": [[0, 1]]},
                       "constraint": {"family": "cardinality", "k": 1}, "monotone": true}]})") != "");
    CHECK_THROWS_AS(load_instance(data("missing.json")), InvalidArgument);
  }

  TEST_CASE("experiment specs") {
    const ExperimentSpec spec = load_experiment(data("small_experiment.json"));
    CHECK(spec.graph.vertices == 60);
    CHECK(spec.graph.regime == Regime::high);
    CHECK(spec.graph.seed.value == 17);
    CHECK(spec.protocol == ProtocolChoice::randomized);
    CHECK(spec.values == std::vector<int>{1, 2, 3});
    const std::string text = experiment_to_json(spec);
    CHECK(experiment_to_json(parse_experiment(text)) == text);

    CHECK_THROWS_AS(parse_experiment(R"({"graph": {"regime": "extreme"}})"), InvalidArgument);
    CHECK_THROWS_AS(parse_experiment(R"({"graph": {"vertices": 40, "regime": "high"}})"), InvalidArgument);
    CHECK_THROWS_AS(parse_experiment(R"({"sweep": "time"})"), InvalidArgument);
    CHECK_NOTHROW(parse_experiment("{}"));
  }

  TEST_CASE("report rendering") {
    const InstanceFile file = load_instance(data("two_agent_additive.json"));
    const Trace trace = run_round_robin(file.instance, file.policies);
    const json bench = to_json(benchmark_report(file.instance, trace, {Theorem::T1, Theorem::T2}));
    CHECK(bench["passed"] == true);
    CHECK(bench["agents"][1]["bounds"][1]["factor"] == "1/2");
    CHECK(bench["agents"][1]["opt_minus_witness"] == json::array({1, 2}));

    const json fair = to_json(fairness_report(file.instance, trace));
    CHECK(fair["pairs"][0]["alpha_ef1"] == "inf");
    CHECK(fair["min_ef1"] == 3.0);

    const json ex = to_json(exante_bound_check(file.instance, file.policies, ExanteMode::exact_mode()));
    CHECK(ex["mode"] == "exact");
    CHECK(ex["runs"] == 2);
    CHECK(ex["agents"][0]["bound"]["beta"] == 2.0);

    const json sat = to_json(check_corollary_saturation(file.instance, allocation_of(trace, file.instance)));
    CHECK(sat["regime"] == "cardinality");
    CHECK(sat["passed"] == true);
  }

  TEST_CASE("text files") {
    const std::string path = "io_roundtrip.txt";
    write_text_file(path, "a\nb\n");
    CHECK(read_text_file(path) == "a\nb\n");
    std::remove(path.c_str());
    CHECK_THROWS_AS(write_text_file("/nonexistent-dir/x.txt", "x"), Error);
  }
}
