#include <algorithm>

#include "msm/fleet.hpp"

namespace msm {
namespace {

int uniform_int(Rng& rng, int lo, int hi) {
  return lo + static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(hi - lo + 1)));
}

std::vector<double> random_weights(Rng& rng, int count) {
  std::vector<double> w(static_cast<std::size_t>(count));
  // Small integers half of the time so ties and zero marginals show up.
  const bool integral = rng.bernoulli(0.5);
  for (double& x : w) x = integral ? static_cast<double>(rng.uniform_below(5)) : rng.uniform01();
  return w;
}

ObjectiveSpec random_monotone(Rng& rng, int m) {
  if (rng.bernoulli(0.5)) return AdditiveParams{random_weights(rng, m)};
  CoverageParams p;
  p.universe = uniform_int(rng, 2, 2 * m);
  const double density = 0.15 + 0.35 * rng.uniform01();
  p.covers.resize(static_cast<std::size_t>(m));
  for (auto& cover : p.covers) {
    for (int u = 0; u < p.universe; ++u) {
      if (rng.bernoulli(density)) cover.push_back(u);
    }
  }
  p.weights.resize(static_cast<std::size_t>(p.universe));
  const bool unit = rng.bernoulli(0.5);
  for (double& w : p.weights) w = unit ? 1.0 : 0.5 + 1.5 * rng.uniform01();
  return p;
}

ObjectiveSpec random_cut(Rng& rng, int m) {
  CutParams p;
  const double density = 0.2 + 0.5 * rng.uniform01();
  for (int u = 0; u < m; ++u) {
    for (int v = u + 1; v < m; ++v) {
      if (rng.bernoulli(density)) p.edges.emplace_back(u, v);
    }
  }
  if (rng.bernoulli(0.5)) {
    p.weights.resize(p.edges.size());
    for (double& w : p.weights) w = 0.5 + 1.5 * rng.uniform01();
  }
  return p;
}

Constraint random_partition(Rng& rng, int m) {
  const int parts = uniform_int(rng, 1, 4);
  std::vector<std::vector<ItemId>> members(static_cast<std::size_t>(parts));
  for (int x = 0; x < m; ++x) members[rng.uniform_below(static_cast<std::uint64_t>(parts))].push_back(x);
  std::vector<int> caps(static_cast<std::size_t>(parts));
  for (int& c : caps) c = uniform_int(rng, 1, 3);
  return Constraint::partition_matroid(m, std::move(members), std::move(caps));
}

Constraint random_graphic(Rng& rng, int m) {
  const int vertices = uniform_int(rng, 3, std::max(3, m / 2 + 2));
  std::vector<Edge> edges;
  for (int e = 0; e < m; ++e) {
    const int u = uniform_int(rng, 0, vertices - 1);
    int v = uniform_int(rng, 0, vertices - 2);
    if (v >= u) ++v;
    edges.emplace_back(u, v);
  }
  return Constraint::graphic_matroid(vertices, std::move(edges));
}

Constraint random_constraint(Rng& rng, FleetConstraint family, int m) {
  switch (family) {
    case FleetConstraint::cardinality:
      return Constraint::cardinality(m, uniform_int(rng, 1, std::max(1, (m + 1) / 2 + 1)));
    case FleetConstraint::partition_matroid:
      return random_partition(rng, m);
    case FleetConstraint::intersection: {
      std::vector<Constraint> members;
      members.push_back(random_partition(rng, m));
      members.push_back(rng.bernoulli(0.5) ? random_partition(rng, m) : random_graphic(rng, m));
      return Constraint::intersection(std::move(members));
    }
  }
  throw InvalidArgument("random_constraint: unknown family");
}

}  // namespace

std::string regime_name(const FleetParams& params) {
  std::string s = params.objective == FleetObjective::monotone ? "monotone-" : "non_monotone-";
  switch (params.constraint) {
    case FleetConstraint::cardinality: return s + "cardinality";
    case FleetConstraint::partition_matroid: return s + "partition_matroid";
    case FleetConstraint::intersection: return s + "intersection";
  }
  return s;
}

std::vector<FleetParams> all_regimes() {
  std::vector<FleetParams> out;
  for (FleetObjective o : {FleetObjective::monotone, FleetObjective::non_monotone}) {
    for (FleetConstraint c :
         {FleetConstraint::cardinality, FleetConstraint::partition_matroid, FleetConstraint::intersection}) {
      FleetParams p;
      p.objective = o;
      p.constraint = c;
      out.push_back(p);
    }
  }
  return out;
}

std::optional<FleetParams> parse_regime(std::string_view text) {
  for (const FleetParams& p : all_regimes()) {
    if (regime_name(p) == text) return p;
  }
  return std::nullopt;
}

Instance random_instance(const FleetParams& params, RngSeed seed) {
  if (params.n_min < 1 || params.n_max < params.n_min || params.m_min < 1 || params.m_max < params.m_min) {
    throw InvalidArgument("random_instance: empty size range");
  }
  Rng rng(seed);
  const int n = uniform_int(rng, params.n_min, params.n_max);
  const int m = uniform_int(rng, params.m_min, params.m_max);
  std::vector<AgentSpec> agents;
  for (int i = 0; i < n; ++i) {
    ObjectiveSpec f = params.objective == FleetObjective::monotone ? random_monotone(rng, m) : random_cut(rng, m);
    agents.push_back(make_agent(std::move(f), random_constraint(rng, params.constraint, m)));
  }
  return build_instance(GroundSet{m}, std::move(agents));
}

FleetSummary verify_fleet(const FleetParams& params, std::size_t count, RngSeed seed,
                          const std::vector<Theorem>& theorems, unsigned workers) {
  std::vector<std::vector<FleetCheck>> per_instance(count);
  std::vector<double> margins(count, kInfinity);

  parallel_for(
      count,
      [&](std::size_t k) {
        const RngSeed instance_seed = derive_seed(seed, k);
        const Instance instance = random_instance(params, instance_seed);
        const auto policies = default_policies(instance);
        ProtocolConfig config;
        config.order = fisher_yates_permutation(instance.n(), derive_seed(instance_seed, 1));
        const Trace trace = run_round_robin(instance, policies, config);
        auto& out = per_instance[k];
        auto record = [&](int agent, std::string name, double achieved, double required, bool passed) {
          out.push_back({k, agent, std::move(name), achieved, required, passed});
          if (required > 0.0) margins[k] = std::min(margins[k], achieved / required);
        };

        for (Theorem t : theorems) {
          if (t == Theorem::T7) {
            if (instance.n() > kExactExanteLimit) continue;
            const ExanteReport r = exante_bound_check(instance, policies, ExanteMode::exact_mode());
            for (const ExanteAgentReport& a : r.agents) {
              record(a.agent, "T7", a.expected, a.required, a.passed);
            }
            continue;
          }
          for (int i = 0; i < instance.n(); ++i) {
            try {
              const BoundCheck c = check_theorem_bound(instance, trace, i, t);
              record(i, std::string(theorem_name(t)), c.achieved, c.required, c.passed);
            } catch (const BoundMismatch&) {
            }
          }
        }
      },
      workers);

  FleetSummary summary;
  summary.regime = regime_name(params);
  summary.instances = count;
  for (std::size_t k = 0; k < count; ++k) {
    summary.min_margin = std::min(summary.min_margin, margins[k]);
    for (FleetCheck& c : per_instance[k]) {
      ++summary.checks;
      if (!c.passed) {
        ++summary.violations;
        summary.failures.push_back(std::move(c));
      }
    }
  }
  return summary;
}

}  // namespace msm
