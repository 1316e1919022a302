#include <cmath>

#include "doctest.h"
#include "msm/instance.hpp"
#include "msm/objectives.hpp"

using namespace msm;

namespace {

Objective path_cut(int m) {
  CutParams p;
  for (int v = 0; v + 1 < m; ++v) p.edges.emplace_back(v, v + 1);
  return Objective(p, m);
}

InfluenceParams small_influence_graph() {
  return InfluenceParams{{{0, 1}, {0, 2}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {1, 5}, {5, 6}}, 0.3};
}

/// Independent evaluation of the influence objective by simulating the
/// activation process: each seed neighbour of a non-seed user activates it
/// independently with probability q.
std::pair<double, double> simulate_influence(const InfluenceParams& p, int m, const ItemSet& seeds, int trials,
                                             RngSeed seed) {
  Rng rng(seed);
  const auto adj = Graph{m, p.edges}.adjacency();
  double sum = 0.0;
  double sum_sq = 0.0;
  for (int t = 0; t < trials; ++t) {
    double influenced = static_cast<double>(seeds.size());
    for (int v = 0; v < m; ++v) {
      if (seeds.contains(v)) continue;
      bool active = false;
      for (int u : adj[static_cast<std::size_t>(v)]) {
        if (seeds.contains(u) && rng.bernoulli(p.q)) active = true;
      }
      influenced += active ? 1.0 : 0.0;
    }
    sum += influenced;
    sum_sq += influenced * influenced;
  }
  const double mean = sum / trials;
  const double var = (sum_sq - trials * mean * mean) / (trials - 1);
  return {mean, std::sqrt(var / trials)};
}

}  // namespace

TEST_SUITE("objectives") {
  TEST_CASE("additive values and query counting") {
    const Objective f(AdditiveParams{{3, 2, 1}}, 3);
    CHECK(f.value({}) == 0.0);
    CHECK(f.value({0, 2}) == doctest::Approx(4.0));
    CHECK(f.queries() == 2);
    CHECK(f.marginal(1, {0}) == doctest::Approx(2.0));
    CHECK(f.queries() == 4);
    CHECK_THROWS_AS(f.marginal(0, {0}), InvalidArgument);
    CHECK_THROWS_AS(f.value({3}), InvalidArgument);
  }

  TEST_CASE("coverage counts each covered element once") {
    const Objective f(CoverageParams{4, {{0, 1}, {1, 2}, {3}}, {1, 2, 3, 4}}, 3);
    CHECK(f.value({0}) == doctest::Approx(3.0));
    CHECK(f.value({0, 1}) == doctest::Approx(6.0));
    CHECK(f.value({0, 1, 2}) == doctest::Approx(10.0));
    CHECK(f.marginal(1, {0}) == doctest::Approx(3.0));
  }

  TEST_CASE("influence closed form") {
    // Path 0-1-2 with q = 0.5: seeding 1 reaches 0 and 2 with probability 1/2 each.
    const Objective f(InfluenceParams{{{0, 1}, {1, 2}}, 0.5}, 3);
    CHECK(f.value({1}) == doctest::Approx(2.0));
    CHECK(f.value({0, 2}) == doctest::Approx(2.75));
    CHECK(f.value({0, 1, 2}) == doctest::Approx(3.0));
  }

  TEST_CASE("influence closed form agrees with simulation within 3 sigma") {
    const InfluenceParams p = small_influence_graph();
    const int m = 7;
    const Objective f(p, m);
    std::uint64_t stream = 0;
    for (const ItemSet& s : {ItemSet{0}, ItemSet{2}, ItemSet{1, 4}, ItemSet{0, 3, 6}, ItemSet{2, 5}}) {
      const auto [mean, se] = simulate_influence(p, m, s, 40000, derive_seed(RngSeed{77}, stream++));
      CHECK(std::abs(f.value(s) - mean) <= 3.0 * se);
    }
  }

  TEST_CASE("fast marginals equal value differences") {
    const int m = 9;
    Rng rng(RngSeed{3});
    CutParams cut;
    for (int u = 0; u < m; ++u) {
      for (int v = u + 1; v < m; ++v) {
        if (rng.bernoulli(0.4)) cut.edges.emplace_back(u, v);
      }
    }
    cut.weights.assign(cut.edges.size(), 1.5);
    const std::vector<Objective> family = {
        Objective(AdditiveParams{{1, 0, 2, 5, 3, 3, 0.5, 7, 1}}, m),
        Objective(CoverageParams{5, {{0}, {1, 2}, {}, {0, 4}, {3}, {1, 3}, {2}, {4}, {0, 1, 2}}, {1, 1, 2, 1, 3}}, m),
        Objective(InfluenceParams{cut.edges, 0.2}, m),
        Objective(cut, m),
        Objective(Example1Params{2, 2}, 5),
    };
    for (const Objective& f : family) {
      const int size = f.ground_size();
      for (std::uint64_t mask = 0; mask < (1ULL << size); ++mask) {
        const ItemSet s = ItemSet::from_mask(mask);
        for (ItemId x = 0; x < size; ++x) {
          if (s.contains(x)) continue;
          REQUIRE(f.marginal(x, s) == doctest::Approx(f.value(s.with(x)) - f.value(s)).epsilon(1e-12));
        }
      }
    }
  }

  TEST_CASE("memoization returns identical values") {
    Objective f(small_influence_graph(), 7);
    const double plain = f.value({1, 3});
    f.set_memoization(true);
    CHECK(f.value({1, 3}) == plain);
    CHECK(f.value({1, 3}) == plain);
    Objective copy = f;
    CHECK(copy.value({1, 3}) == plain);
  }

  TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(Objective(AdditiveParams{{1, 2}}, 3), InvalidArgument);
    CHECK_THROWS_AS(Objective(AdditiveParams{{1, -2, 0}}, 3), InvalidArgument);
    CHECK_THROWS_AS(Objective(InfluenceParams{{{0, 0}}, 0.2}, 3), InvalidArgument);
    CHECK_THROWS_AS(Objective(InfluenceParams{{{0, 1}, {1, 0}}, 0.2}, 3), InvalidArgument);
    CHECK_THROWS_AS(Objective(InfluenceParams{{{0, 1}}, 1.5}, 3), InvalidArgument);
    CHECK_THROWS_AS(Objective(CutParams{{{0, 5}}, {}}, 3), InvalidArgument);
    CHECK_THROWS_AS(Objective(CoverageParams{2, {{0}, {2}}, {1, 1}}, 2), InvalidArgument);
    Example1Params bad_eps{3, 2};
    bad_eps.eps = {1e-3, 1e-3, 1e-5, 1e-6};
    CHECK_THROWS_AS(Objective(bad_eps, 10), InvalidArgument);
    CHECK_THROWS_AS(Objective(Example1Params{3, 2}, 9), InvalidArgument);
    CHECK_THROWS_AS(Objective(Example1Params{3, 4}, 10), InvalidArgument);
  }

  TEST_CASE("example1: agent i != 1 loses eps3 holding g_{i-1} and its partner") {
    for (Example1Layout layout : {Example1Layout::consistent, Example1Layout::printed}) {
      Example1Params p{4, 3};
      p.layout = layout;
      const Objective f(p, p.ground_size());
      const ItemId prev = 3 - 2;
      const ItemId partner = p.partner(3) - 1;
      const ItemId own = 3 - 1;
      const double separate = f.value({prev}) + f.value({partner}) + f.value({own});
      CHECK(f.value({prev, own, partner}) == doctest::Approx(separate - p.eps[2]).epsilon(1e-15));
      CHECK(f.value({prev}) == doctest::Approx(1 + p.eps[0]));
      CHECK(f.value({own}) == doctest::Approx(1 + p.eps[1]));
      CHECK(f.value({partner}) == doctest::Approx(1 + p.eps[2]));
      CHECK(f.value({p.first_bonus() - 1}) == doctest::Approx(1 + p.eps[3]));
      CHECK(f.value({p.first_bonus() - 2}) == 0.0);
    }
  }

  TEST_CASE("example1: agent 1 is additive over g_1..g_2n") {
    const Objective f(Example1Params{4, 1}, 17);
    CHECK(f.value(ItemSet::range(17)) == doctest::Approx(8.0));
    CHECK(f.value({0, 7}) == doctest::Approx(2.0));
    CHECK(f.value({8, 16}) == 0.0);
  }

  TEST_CASE("example1: no unit item beats a bonus item once g_{i-1} is held") {
    for (int n = 2; n <= 8; ++n) {
      for (int i = 2; i <= n; ++i) {
        const Example1Params p{n, i};
        const Objective f(p, p.ground_size());
        const ItemSet held{i - 2};
        for (int j = 2 * n; j <= 3 * n - 1; ++j) {
          if (held.contains(j - 1)) continue;
          CHECK(f.marginal(j - 1, held) <= 1.0 + kTolerance);
        }
        for (int j = 3 * n; j <= p.ground_size(); ++j) {
          CHECK(f.marginal(j - 1, held) == doctest::Approx(1.0 + p.eps[3]).epsilon(1e-15));
        }
      }
    }
  }

  TEST_CASE("property checks on every family") {
    CHECK(check_submodular(Objective(AdditiveParams{{0.5, 2, 0, 1, 4}}, 5)).passed);
    CHECK(check_monotone(Objective(AdditiveParams{{0.5, 2, 0, 1, 4}}, 5)).passed);
    const Objective coverage(CoverageParams{4, {{0, 1}, {1, 2}, {3}, {0, 3}, {}}, {1, 2, 1, 1}}, 5);
    CHECK(check_submodular(coverage).passed);
    CHECK(check_monotone(coverage).passed);
    const Objective influence(small_influence_graph(), 7);
    CHECK(check_submodular(influence).passed);
    CHECK(check_monotone(influence).passed);
    const Objective ex1(Example1Params{3, 2}, 10);
    CHECK(check_submodular(ex1).passed);
    CHECK(check_monotone(ex1).passed);
  }

  TEST_CASE("cut on a path is submodular but not monotone") {
    const Objective f = path_cut(4);
    const PropertyReport sub = check_submodular(f);
    CHECK(sub.passed);
    CHECK(sub.exhaustive);
    const PropertyReport mono = check_monotone(f);
    CHECK_FALSE(mono.passed);
    CHECK(mono.lhs > mono.rhs);
    CHECK(mono.s.is_subset_of(mono.t));
  }

  TEST_CASE("cut on one edge: monotonicity witness {a} within {a,b}") {
    const Objective f(CutParams{{{0, 1}}, {}}, 2);
    const PropertyReport r = check_monotone(f);
    REQUIRE_FALSE(r.passed);
    CHECK(r.s == ItemSet{0});
    CHECK(r.t == ItemSet{0, 1});
    CHECK(r.lhs == doctest::Approx(1.0));
    CHECK(r.rhs == doctest::Approx(0.0));
    CHECK(r.describe().find("fail") == 0);
  }

  TEST_CASE("sampling mode above the exhaustive limit") {
    std::vector<double> w(20, 1.0);
    const Objective f(AdditiveParams{w}, 20);
    const PropertyReport r = check_submodular(f, 2000, RngSeed{5});
    CHECK(r.passed);
    CHECK_FALSE(r.exhaustive);
    CHECK(r.miss_probability < 1e-6);
  }
}
