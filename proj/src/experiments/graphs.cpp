#include <cmath>
#include <numeric>
#include <string>

#include "msm/experiments.hpp"

namespace msm {
namespace {

void require_graph_args(int vertices, double avg_degree, const char* what) {
  if (vertices < 2 || !(avg_degree > 0.0) || !(avg_degree < vertices)) {
    throw InvalidArgument(std::string(what) + ": need V >= 2 and 0 < avg_degree < V");
  }
}

Graph checked(Graph g) {
  if (!g.is_simple()) throw Error("graph generator produced a non-simple graph");
  return g;
}

}  // namespace

std::string_view regime_name(Regime r) {
  switch (r) {
    case Regime::low: return "low";
    case Regime::medium: return "medium";
    case Regime::high: return "high";
  }
  return "low";
}

std::optional<Regime> parse_competition_regime(std::string_view text) {
  for (Regime r : {Regime::low, Regime::medium, Regime::high}) {
    if (regime_name(r) == text) return r;
  }
  return std::nullopt;
}

Graph gen_erdos_renyi(int vertices, double avg_degree, RngSeed seed) {
  require_graph_args(vertices, avg_degree, "gen_erdos_renyi");
  const double p = avg_degree / (vertices - 1);
  Rng rng(seed);
  Graph g;
  g.vertices = vertices;
  for (int u = 0; u < vertices; ++u) {
    for (int v = u + 1; v < vertices; ++v) {
      if (rng.bernoulli(p)) g.edges.emplace_back(u, v);
    }
  }
  return checked(std::move(g));
}

Graph gen_power_law(int vertices, double avg_degree, RngSeed seed) {
  require_graph_args(vertices, avg_degree, "gen_power_law");
  Rng rng(seed);
  std::vector<double> w(static_cast<std::size_t>(vertices));
  // Lomax(shape 2, scale 1) by inversion.
  for (double& x : w) x = std::pow(1.0 - rng.uniform01(), -0.5) - 1.0;
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  const auto probability = [&](double scale, int u, int v) {
    if (total <= 0.0) return 0.0;
    return std::min(1.0, scale * w[static_cast<std::size_t>(u)] * w[static_cast<std::size_t>(v)] / total);
  };
  const auto mean_degree = [&](double scale) {
    double sum = 0.0;
    for (int u = 0; u < vertices; ++u) {
      for (int v = u + 1; v < vertices; ++v) sum += probability(scale, u, v);
    }
    return 2.0 * sum / vertices;
  };

  // Expected mean degree after capping is monotone in the scale.
  double lo = 0.0;
  double hi = 1.0;
  while (mean_degree(hi) < avg_degree && hi < 1e15) hi *= 2.0;
  for (int iter = 0; iter < 100; ++iter) {
    const double mid = 0.5 * (lo + hi);
    (mean_degree(mid) < avg_degree ? lo : hi) = mid;
  }

  Graph g;
  g.vertices = vertices;
  for (int u = 0; u < vertices; ++u) {
    for (int v = u + 1; v < vertices; ++v) {
      if (rng.bernoulli(probability(hi, u, v))) g.edges.emplace_back(u, v);
    }
  }
  return checked(std::move(g));
}

Graph implant_influencers(const Graph& graph, RngSeed seed) {
  const int base = graph.vertices;
  if (base < 60) throw InvalidArgument("implant_influencers: need at least 60 vertices");
  Rng rng(seed);
  Graph g = graph;
  g.vertices = base + 10;
  std::vector<int> pool(static_cast<std::size_t>(base));
  long long power = 1;
  for (int j = 0; j < 10; ++j, power *= 3) {
    const int degree = static_cast<int>(std::min<long long>(base, (base + power - 1) / power));
    std::iota(pool.begin(), pool.end(), 0);
    // Partial Fisher-Yates: the first `degree` slots are a uniform sample.
    for (int t = 0; t < degree; ++t) {
      const auto r = t + static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(base - t)));
      std::swap(pool[static_cast<std::size_t>(t)], pool[static_cast<std::size_t>(r)]);
      g.edges.emplace_back(pool[static_cast<std::size_t>(t)], base + j);
    }
  }
  return checked(std::move(g));
}

void GraphGenSpec::validate() const {
  if (vertices < 20) throw InvalidArgument("graph spec: need at least 20 vertices");
  if (!(avg_degree > 0.0) || !(avg_degree < vertices)) {
    throw InvalidArgument("graph spec: avg_degree must lie in (0, V)");
  }
  if (regime == Regime::high && vertices < 60) {
    throw InvalidArgument("graph spec: the high regime needs at least 60 vertices");
  }
}

Graph generate_graph(const GraphGenSpec& spec) {
  spec.validate();
  switch (spec.regime) {
    case Regime::low:
      return gen_erdos_renyi(spec.vertices, spec.avg_degree, spec.seed);
    case Regime::medium:
      return gen_power_law(spec.vertices, spec.avg_degree, spec.seed);
    case Regime::high:
      return implant_influencers(gen_erdos_renyi(spec.vertices, spec.avg_degree, derive_seed(spec.seed, 0)),
                                 derive_seed(spec.seed, 1));
  }
  throw InvalidArgument("graph spec: unknown regime");
}

}  // namespace msm
