#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "msm/analysis.hpp"
#include "msm/fleet.hpp"

using namespace msm;

namespace {

Instance two_agent_additive() {
  return build_instance(GroundSet{3}, {make_agent(AdditiveParams{{3, 2, 1}}, Constraint::cardinality(3, 2)),
                                       make_agent(AdditiveParams{{1, 3, 2}}, Constraint::cardinality(3, 2))});
}

Instance coverage_instance(int n, RngSeed seed, int m = 8) {
  Rng rng(seed);
  std::vector<AgentSpec> agents;
  for (int i = 0; i < n; ++i) {
    CoverageParams p;
    p.universe = 6;
    p.weights = {1, 2, 1, 3, 1, 2};
    p.covers.resize(static_cast<std::size_t>(m));
    for (auto& c : p.covers) {
      for (int u = 0; u < 6; ++u) {
        if (rng.bernoulli(0.35)) c.push_back(u);
      }
    }
    agents.push_back(make_agent(p, Constraint::cardinality(m, 2)));
  }
  return build_instance(GroundSet{m}, std::move(agents));
}

/// Independent optimum: filter the whole power set of `over`.
double power_set_opt(const Objective& f, const Constraint& c, const ItemSet& over) {
  const auto items = over.items();
  double best = 0.0;
  for (std::uint64_t mask = 0; mask < (1ULL << items.size()); ++mask) {
    ItemSet s;
    for (std::size_t b = 0; b < items.size(); ++b) {
      if (mask >> b & 1ULL) s.insert(items[b]);
    }
    if (c.is_independent(s)) best = std::max(best, f.value(s));
  }
  return best;
}

double factorial(int n) { return n <= 1 ? 1.0 : n * factorial(n - 1); }

}  // namespace

TEST_SUITE("analysis") {
  TEST_CASE("brute force examples") {
    const OptResult r =
        brute_force_opt(Objective(AdditiveParams{{3, 2, 1}}, 3), Constraint::cardinality(3, 2), ItemSet::range(3));
    CHECK(r.value == doctest::Approx(5.0));
    CHECK(r.witness == ItemSet{0, 1});

    const Instance ex1 = example1_instance(4);
    CHECK(brute_force_opt(ex1.objective(0), ex1.constraint(0), ItemSet::range(17)).value == doctest::Approx(8.0));

    const Objective cycle(CutParams{{{0, 1}, {1, 2}, {2, 3}, {3, 0}}, {}}, 4);
    const OptResult cut = brute_force_opt(cycle, Constraint::unconstrained(4), ItemSet::range(4));
    CHECK(cut.value == doctest::Approx(4.0));
    CHECK(cut.witness == ItemSet{0, 2});

    CHECK_THROWS_AS(brute_force_opt(Objective(AdditiveParams{std::vector<double>(23, 1.0)}, 23),
                                    Constraint::unconstrained(23), ItemSet::range(23)),
                    TooLarge);
  }

  TEST_CASE("brute force agrees with a power-set filter") {
    for (std::uint64_t s = 0; s < 30; ++s) {
      const FleetParams params{s % 2 ? FleetObjective::monotone : FleetObjective::non_monotone,
                               static_cast<FleetConstraint>(s % 3), 2, 3, 4, 10};
      const Instance inst = random_instance(params, RngSeed{s});
      Rng rng(derive_seed(RngSeed{s}, 5));
      ItemSet over;
      for (int x = 0; x < inst.m(); ++x) {
        if (rng.bernoulli(0.7)) over.insert(x);
      }
      for (int i = 0; i < inst.n(); ++i) {
        const OptResult r = brute_force_opt(inst.objective(i), inst.constraint(i), over);
        CHECK(r.value == doctest::Approx(power_set_opt(inst.objective(i), inst.constraint(i), over)));
        CHECK(r.witness.is_subset_of(over));
        CHECK(inst.constraint(i).is_independent(r.witness));
        CHECK(inst.objective(i).value(r.witness) == doctest::Approx(r.value));
      }
    }
  }

  TEST_CASE("OPT-minus from the realized trace") {
    const Instance inst = two_agent_additive();
    const Trace trace = run_round_robin(inst, default_policies(inst));
    CHECK(items_lost_before_first_turn(trace, 0).empty());
    CHECK(items_lost_before_first_turn(trace, 1) == ItemSet{0});
    CHECK(opt_minus_from_trace(inst, trace, 0).value == doctest::Approx(5.0));
    const OptResult om = opt_minus_from_trace(inst, trace, 1);
    CHECK(om.value == doctest::Approx(5.0));
    CHECK(om.witness == ItemSet{1, 2});
  }

  TEST_CASE("pessimistic OPT-minus shrinks with position and bounds the realized value") {
    for (std::uint64_t s = 0; s < 10; ++s) {
      const Instance inst = coverage_instance(3, RngSeed{s});
      ProtocolConfig config;
      config.order = fisher_yates_permutation(3, RngSeed{s + 50});
      const Trace trace = run_round_robin(inst, default_policies(inst), config);
      for (int i = 0; i < 3; ++i) {
        double previous = kInfinity;
        for (int lost = 0; lost < 3; ++lost) {
          const double v = pessimistic_opt_minus(inst, i, lost).value;
          CHECK(v <= previous + kTolerance);
          previous = v;
        }
        const int position = trace.position_of(i);
        CHECK(pessimistic_opt_minus(inst, i, position).value <= opt_minus_from_trace(inst, trace, i).value + kTolerance);
      }
    }
  }

  TEST_CASE("bound factors") {
    CHECK(make_bound(Theorem::T1, 3, 2).factor == Rational{1, 5});
    CHECK(make_bound(Theorem::T2, 3, 1).factor == Rational{1, 3});
    CHECK(make_bound(Theorem::T3, 3, 2).factor == Rational{1, 4});
    CHECK(make_bound(Theorem::T4, 3, 1).factor == Rational{1, 2});
    CHECK(make_bound(Theorem::T5, 2, 1).factor == Rational{1, 14});
    CHECK(make_bound(Theorem::T6, 2, 1).factor == Rational{1, 10});
    CHECK_THROWS(make_bound(Theorem::T7, 2, 1));

    CHECK(theorem7_bound(3, 1, true, true).factor == Rational{1, 6});
    CHECK(theorem7_bound(3, 2, true, false).factor == Rational{1, 8});
    CHECK(theorem7_bound(3, 1, false, true).factor == Rational{1, 17});
    CHECK(theorem7_bound(3, 2, false, false).factor == Rational{1, 25});
    CHECK(theorem7_bound(4, 2, false, false).beta == doctest::Approx(5.0 + 10.0 / 4.0));

    CHECK(parse_theorem("t5") == Theorem::T5);
    CHECK_FALSE(parse_theorem("T8").has_value());
    CHECK(theorem_name(Theorem::T3) == "T3");
  }

  TEST_CASE("T2 on the two-agent example: 3 >= 5/2") {
    const Instance inst = two_agent_additive();
    const Trace trace = run_round_robin(inst, default_policies(inst));
    const BoundCheck c = check_theorem_bound(inst, trace, 1, Theorem::T2);
    CHECK(c.achieved == doctest::Approx(3.0));
    CHECK(c.benchmark == doctest::Approx(5.0));
    CHECK(c.required == doctest::Approx(2.5));
    CHECK(c.margin == doctest::Approx(1.2));
    CHECK(c.passed);
  }

  TEST_CASE("T2 is tight for agent 1 of the example1 instance") {
    const Instance inst = example1_instance(3);
    const Trace trace = run_round_robin(inst, default_policies(inst));
    const BoundCheck c = check_theorem_bound(inst, trace, 0, Theorem::T2);
    CHECK(c.achieved == doctest::Approx(2.0));
    CHECK(c.benchmark == doctest::Approx(6.0));
    CHECK(c.required == doctest::Approx(2.0));
    CHECK(c.passed);
  }

  TEST_CASE("bound hypotheses are enforced") {
    const Instance cut = build_instance(GroundSet{3}, {make_agent(CutParams{{{0, 1}, {1, 2}}, {}}, Constraint::cardinality(3, 2)),
                                                       make_agent(AdditiveParams{{1, 1, 1}}, Constraint::cardinality(3, 1))});
    const Trace trace = run_round_robin(cut, default_policies(cut));
    CHECK_THROWS_AS(check_theorem_bound(cut, trace, 0, Theorem::T1), BoundMismatch);
    CHECK_THROWS_AS(check_theorem_bound(cut, trace, 1, Theorem::T5), BoundMismatch);
    CHECK_NOTHROW(check_theorem_bound(cut, trace, 0, Theorem::T6));
    CHECK_THROWS_AS(check_theorem_bound(cut, trace, 1, Theorem::T7), BoundMismatch);

    const Instance single = build_instance(GroundSet{2}, {make_agent(AdditiveParams{{1, 2}}, Constraint::cardinality(2, 1))});
    const Trace t1 = run_round_robin(single, default_policies(single));
    CHECK_THROWS_AS(check_theorem_bound(single, t1, 0, Theorem::T2), BoundMismatch);
    CHECK(check_theorem_bound(single, t1, 0, Theorem::T1).passed);

    const Instance matroid = build_instance(
        GroundSet{4}, {make_agent(AdditiveParams{{1, 2, 3, 4}}, Constraint::partition_matroid(4, {{0, 1}, {2, 3}}, {1, 1})),
                       make_agent(AdditiveParams{{4, 3, 2, 1}}, Constraint::partition_matroid(4, {{0, 1}, {2, 3}}, {1, 1}))});
    const Trace tm = run_round_robin(matroid, default_policies(matroid));
    CHECK_THROWS_AS(check_theorem_bound(matroid, tm, 0, Theorem::T2), BoundMismatch);
    CHECK_THROWS_AS(check_theorem_bound(matroid, tm, 0, Theorem::T4), BoundMismatch);
    CHECK(check_theorem_bound(matroid, tm, 0, Theorem::T3).passed);

    const BenchmarkReport report = benchmark_report(cut, trace, {Theorem::T1, Theorem::T5});
    CHECK(report.agents[0].not_applicable == std::vector<Theorem>{Theorem::T1});
    CHECK(report.agents[1].not_applicable == std::vector<Theorem>{Theorem::T5});
    CHECK(report.passed);
  }

  TEST_CASE("EF1 and FEF1 on the two-agent example") {
    const Instance inst = two_agent_additive();
    const Trace trace = run_round_robin(inst, default_policies(inst));
    const Allocation a = allocation_of(trace, inst);

    const PairFairness first = check_fef1_pair(inst, trace, a, 0, 1);
    CHECK(std::isinf(first.alpha_ef1));
    CHECK(std::isinf(first.alpha_fef1));
    CHECK(first.compared == ItemSet{1});

    const PairFairness second = check_fef1_pair(inst, trace, a, 1, 0);
    CHECK(second.alpha_ef1 == doctest::Approx(3.0));
    CHECK(second.alpha_fef1 == doctest::Approx(3.0));
    CHECK(second.compared == ItemSet{2});
    CHECK(second.compared_opt == doctest::Approx(2.0));
    CHECK(second.alpha_theorem == doctest::Approx(1.5));
    CHECK(second.theorem_applicable);
    CHECK(second.theorem3_passed);
    CHECK(second.theorem4_passed == true);

    const FairnessReport report = fairness_report(inst, trace);
    CHECK(report.pairs.size() == 2);
    CHECK(report.min_ef1 == doctest::Approx(3.0));
    CHECK(report.theorem_bounds_passed);
  }

  TEST_CASE("FEF1 respects the envious agent's constraint") {
    // Agent 1 may hold one item; it envies only the best single item of A_0 - g.
    const Instance inst = build_instance(
        GroundSet{4}, {make_agent(AdditiveParams{{4, 3, 2, 1}}, Constraint::cardinality(4, 3)),
                       make_agent(AdditiveParams{{1, 1, 1, 1}}, Constraint::cardinality(4, 1))});
    const Trace trace = run_round_robin(inst, default_policies(inst));
    const Allocation a = allocation_of(trace, inst);
    REQUIRE(a[0].selected() == ItemSet{0, 2});
    REQUIRE(a[1].selected() == ItemSet{1});
    const PairFairness p = check_fef1_pair(inst, trace, a, 1, 0);
    CHECK(p.alpha_ef1 == doctest::Approx(1.0));
    CHECK(p.alpha_fef1 == doctest::Approx(1.0));
    CHECK(std::isinf(check_fef1_pair(inst, trace, a, 0, 0).alpha_ef1));
  }

  TEST_CASE("ex-ante with one agent is the greedy value") {
    const Instance inst = build_instance(GroundSet{3}, {make_agent(AdditiveParams{{3, 2, 1}}, Constraint::cardinality(3, 2))});
    const ExanteReport r = exante_bound_check(inst, default_policies(inst), ExanteMode::exact_mode());
    CHECK(r.runs == 1);
    CHECK(r.agents[0].expected == doctest::Approx(5.0));
    CHECK(r.agents[0].opt == doctest::Approx(5.0));
    CHECK(r.agents[0].bound.factor == Rational{1, 2});
    CHECK(r.passed);
  }

  TEST_CASE("ex-ante: identical agents with one valuable item get exactly OPT/n") {
    for (int n = 2; n <= 5; ++n) {
      std::vector<double> w(static_cast<std::size_t>(n), 0.0);
      w[0] = 1.0;
      const AgentSpec agent = make_agent(AdditiveParams{w}, Constraint::cardinality(n, 1));
      const Instance inst = build_instance(GroundSet{n}, std::vector<AgentSpec>(static_cast<std::size_t>(n), agent));
      const ExanteReport r = exante_bound_check(inst, default_policies(inst), ExanteMode::exact_mode());
      CHECK(r.runs == static_cast<std::uint64_t>(factorial(n)));
      for (const auto& a : r.agents) {
        CHECK(a.expected == doctest::Approx(1.0 / n).epsilon(1e-12));
        CHECK(a.required == doctest::Approx(1.0 / (2.0 * n)));
      }
      CHECK(r.passed);
    }
  }

  TEST_CASE("ex-ante exact mode equals the mean over enumerated orders") {
    const Instance inst = coverage_instance(3, RngSeed{8});
    const ExanteReport r = exante_bound_check(inst, default_policies(inst), ExanteMode::exact_mode());
    std::vector<int> order{0, 1, 2};
    std::vector<double> sum(3, 0.0);
    int count = 0;
    do {
      ProtocolConfig config;
      config.order = order;
      const Trace t = run_round_robin(inst, default_policies(inst), config);
      const Allocation a = allocation_of(t, inst);
      for (int i = 0; i < 3; ++i) sum[static_cast<std::size_t>(i)] += inst.objective(i).value(a[i].selected());
      ++count;
    } while (std::next_permutation(order.begin(), order.end()));
    for (int i = 0; i < 3; ++i) {
      CHECK(r.agents[static_cast<std::size_t>(i)].expected == doctest::Approx(sum[static_cast<std::size_t>(i)] / count));
    }
    CHECK(r.passed);

    const ExanteReport mc = exante_bound_check(inst, default_policies(inst), ExanteMode::monte_carlo(4000, RngSeed{3}));
    CHECK_FALSE(mc.exact);
    for (int i = 0; i < 3; ++i) {
      const auto& a = mc.agents[static_cast<std::size_t>(i)];
      CHECK(a.ci_low <= a.expected);
      CHECK(a.expected <= a.ci_high);
      CHECK(std::abs(a.expected - r.agents[static_cast<std::size_t>(i)].expected) < 0.2);
    }
  }

  TEST_CASE("ex-ante: symmetric pair splits evenly") {
    const AgentSpec agent = make_agent(AdditiveParams{{5, 3, 2, 1}}, Constraint::cardinality(4, 2));
    const Instance inst = build_instance(GroundSet{4}, {agent, agent});
    const ExanteReport r = exante_bound_check(inst, default_policies(inst), ExanteMode::exact_mode());
    CHECK(r.agents[0].expected == doctest::Approx(r.agents[1].expected));
    CHECK(r.agents[0].expected == doctest::Approx(5.5));
  }

  TEST_CASE("ex-ante argument errors") {
    const AgentSpec agent = make_agent(AdditiveParams{std::vector<double>(7, 1.0)}, Constraint::cardinality(7, 1));
    const Instance seven = build_instance(GroundSet{7}, std::vector<AgentSpec>(7, agent));
    CHECK_THROWS_AS(exante_bound_check(seven, default_policies(seven), ExanteMode::exact_mode()), InvalidArgument);
    CHECK_THROWS_AS(exante_bound_check(seven, default_policies(seven), ExanteMode::monte_carlo(0, RngSeed{1})),
                    InvalidArgument);
    const Instance two = two_agent_additive();
    CHECK_THROWS_AS(exante_bound_check(two, {SimultaneousGreedyPolicy{}, GreedyPolicy{}}, ExanteMode::exact_mode()),
                    BoundMismatch);
  }

  TEST_CASE("saturation after an all-greedy run") {
    const Instance inst = two_agent_additive();
    const SaturationReport r = check_corollary_saturation(inst, allocation_of(run_round_robin(inst, default_policies(inst)), inst));
    CHECK(r.passed);
    CHECK(r.cardinality_regime);
    CHECK(r.complete);

    const AgentSpec agent = make_agent(AdditiveParams{{1, 1, 1, 1, 1}}, Constraint::cardinality(5, 1));
    const Instance capped = build_instance(GroundSet{5}, {agent, agent});
    const SaturationReport c =
        check_corollary_saturation(capped, allocation_of(run_round_robin(capped, default_policies(capped)), capped));
    CHECK(c.passed);
    CHECK_FALSE(c.complete);
  }

  TEST_CASE("saturation flags an agent that stopped early") {
    const Instance inst = two_agent_additive();
    const Trace trace = run_round_robin(inst, {ScriptedPolicy{{}}, GreedyPolicy{}});
    const SaturationReport r = check_corollary_saturation(inst, allocation_of(trace, inst));
    CHECK_FALSE(r.passed);
    CHECK(r.agent == 0);
    REQUIRE(r.item.has_value());

    const Instance matroid = build_instance(
        GroundSet{4}, {make_agent(AdditiveParams{{1, 2, 3, 4}}, Constraint::partition_matroid(4, {{0, 1}, {2, 3}}, {1, 1})),
                       make_agent(AdditiveParams{{4, 3, 2, 1}}, Constraint::partition_matroid(4, {{0, 1}, {2, 3}}, {1, 1}))});
    const SaturationReport m = check_corollary_saturation(matroid, allocation_of(run_round_robin(matroid, default_policies(matroid)), matroid));
    CHECK(m.passed);
    CHECK_FALSE(m.cardinality_regime);
  }

  TEST_CASE("random fleets are reproducible and meet every bound") {
    for (const FleetParams& params : all_regimes()) {
      CHECK(parse_regime(regime_name(params)).has_value());
      const Instance a = random_instance(params, RngSeed{12});
      const Instance b = random_instance(params, RngSeed{12});
      CHECK(a.n() == b.n());
      CHECK(a.m() == b.m());
      CHECK(a.objective(0).value(ItemSet::range(a.m())) == b.objective(0).value(ItemSet::range(b.m())));
      for (int i = 0; i < a.n(); ++i) CHECK(a.monotone(i) == (params.objective == FleetObjective::monotone));

      const std::vector<Theorem> all{Theorem::T1, Theorem::T2, Theorem::T3, Theorem::T4,
                                     Theorem::T5, Theorem::T6, Theorem::T7};
      const FleetSummary s1 = verify_fleet(params, 30, RngSeed{77}, all, 1);
      const FleetSummary s4 = verify_fleet(params, 30, RngSeed{77}, all, 4);
      CHECK(s1.violations == 0);
      CHECK(s1.checks > 0);
      CHECK(s1.checks == s4.checks);
      CHECK(s1.min_margin == s4.min_margin);
    }
  }
}
