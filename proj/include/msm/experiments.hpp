#pragma once

// Synthetic social graphs and competing influence-maximization runs.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "msm/core.hpp"

namespace msm {

/// Competition level: low = Erdos-Renyi, medium = power-law degrees,
/// high = Erdos-Renyi plus ten implanted influencer vertices.
enum class Regime { low, medium, high };

std::string_view regime_name(Regime r);
std::optional<Regime> parse_competition_regime(std::string_view text);

/// G(V, p) with p = avg_degree / (V-1).
Graph gen_erdos_renyi(int vertices, double avg_degree, RngSeed seed);

/// Chung-Lu graph on Lomax(shape 2) weights: edge {u,v} appears with
/// probability min(1, c w_u w_v / sum w), with c chosen by bisection so the
/// expected mean degree is avg_degree.
Graph gen_power_law(int vertices, double avg_degree, RngSeed seed);

/// Adds vertices V..V+9; vertex V+j is joined to min(V, ceil(V/3^j)) distinct
/// uniformly chosen vertices among the original V. Requires V >= 60.
Graph implant_influencers(const Graph& graph, RngSeed seed);

struct GraphGenSpec {
  int vertices = 100;
  double avg_degree = 10.0;
  Regime regime = Regime::low;
  RngSeed seed{20240601};

  /// Throws InvalidArgument unless V >= 20 and 0 < avg_degree < V.
  void validate() const;
};

Graph generate_graph(const GraphGenSpec& spec);

enum class Sweep { agents, cardinality };
enum class ProtocolChoice { fixed, randomized };

struct ExperimentSpec {
  GraphGenSpec graph;
  int agents = 2;
  int cardinality = 5;
  double q = 0.2;
  int runs = 20;
  Sweep sweep = Sweep::agents;
  /// Sweep points; empty means 2..6 agents or cardinality 2..20.
  std::vector<int> values;
  ProtocolChoice protocol = ProtocolChoice::fixed;

  std::vector<int> sweep_values() const;
  void validate() const;
};

struct ExperimentRow {
  int sweep = 0;
  int run = 0;
  int agent = 0;  // 0-based
  double value = 0.0;
  double baseline = 0.0;  // single-agent greedy on the same graph
  double ratio = 0.0;
  ProtocolChoice protocol = ProtocolChoice::fixed;
  int position = 1;  // 1-based turn position in this run
};

/// Run r uses graph seed derive_seed(graph.seed, r) at every sweep point; the
/// turn order of a randomized run at sweep point v is drawn from
/// derive_seed(derive_seed(graph.seed, r), 1000 + v). Rows are ordered by
/// sweep point, run, agent and do not depend on the worker count.
std::vector<ExperimentRow> run_experiment(const ExperimentSpec& spec, unsigned workers = default_workers());

/// Header `sweep,run,agent,value,baseline,ratio,protocol,position`, LF endings.
std::string format_csv(const std::vector<ExperimentRow>& rows);

}  // namespace msm
