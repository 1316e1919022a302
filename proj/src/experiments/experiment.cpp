#include <cstdio>

#include "msm/engine.hpp"
#include "msm/experiments.hpp"

namespace msm {

std::vector<int> ExperimentSpec::sweep_values() const {
  if (!values.empty()) return values;
  std::vector<int> out;
  const int lo = 2;
  const int hi = sweep == Sweep::agents ? 6 : 20;
  for (int v = lo; v <= hi; ++v) out.push_back(v);
  return out;
}

void ExperimentSpec::validate() const {
  graph.validate();
  if (runs < 1) throw InvalidArgument("experiment: runs must be at least 1");
  if (!(q >= 0.0 && q <= 1.0)) throw InvalidArgument("experiment: q must lie in [0, 1]");
  if (agents < 1) throw InvalidArgument("experiment: agents must be at least 1");
  if (cardinality < 0) throw InvalidArgument("experiment: cardinality must be non-negative");
  for (int v : sweep_values()) {
    if (sweep == Sweep::agents && v < 1) throw InvalidArgument("experiment: agent sweep values must be >= 1");
    if (sweep == Sweep::cardinality && v < 0) throw InvalidArgument("experiment: cardinality values must be >= 0");
  }
}

namespace {

double single_agent_greedy(const Objective& f, const Constraint& c) {
  ItemSet solution;
  ItemSet available = ItemSet::range(f.ground_size());
  for (int step = 0; step < f.ground_size(); ++step) {
    const Pick p = greedy_step(solution, available, f, c);
    if (p.dummy()) break;
    available.erase(*p.item);
  }
  return f.value(solution);
}

}  // namespace

std::vector<ExperimentRow> run_experiment(const ExperimentSpec& spec, unsigned workers) {
  spec.validate();
  const std::vector<int> points = spec.sweep_values();
  const auto runs = static_cast<std::size_t>(spec.runs);

  std::vector<Graph> graphs(runs);
  parallel_for(
      runs,
      [&](std::size_t r) {
        GraphGenSpec g = spec.graph;
        g.seed = derive_seed(spec.graph.seed, r);
        graphs[r] = generate_graph(g);
      },
      workers);

  const std::size_t cells = points.size() * runs;
  std::vector<std::vector<ExperimentRow>> out(cells);
  parallel_for(
      cells,
      [&](std::size_t cell) {
        const std::size_t point = cell / runs;
        const std::size_t r = cell % runs;
        const int value = points[point];
        const int n = spec.sweep == Sweep::agents ? value : spec.agents;
        const int k = spec.sweep == Sweep::cardinality ? value : spec.cardinality;
        const Graph& g = graphs[r];
        const int m = g.vertices;

        const ObjectiveSpec objective = InfluenceParams{g.edges, spec.q};
        const Constraint constraint = Constraint::cardinality(m, std::min(k, m));
        std::vector<AgentSpec> agents(static_cast<std::size_t>(n), make_agent(objective, constraint));
        const Instance instance = build_instance(GroundSet{m}, std::move(agents));
        const double baseline = single_agent_greedy(instance.objective(0), constraint);

        const std::vector<PolicyKind> policies(static_cast<std::size_t>(n), GreedyPolicy{});
        const Trace trace =
            spec.protocol == ProtocolChoice::fixed
                ? run_round_robin(instance, policies)
                : run_randomized_round_robin(instance, policies,
                                             derive_seed(derive_seed(spec.graph.seed, r),
                                                         1000 + static_cast<std::uint64_t>(value)));
        const Allocation allocation = allocation_of(trace, instance);
        for (int i = 0; i < n; ++i) {
          ExperimentRow row;
          row.sweep = value;
          row.run = static_cast<int>(r);
          row.agent = i;
          row.value = instance.objective(i).value(allocation[i].selected());
          row.baseline = baseline;
          row.ratio = baseline > 0.0 ? row.value / baseline : 0.0;
          row.protocol = spec.protocol;
          row.position = trace.position_of(i) + 1;
          out[cell].push_back(row);
        }
      },
      workers);

  std::vector<ExperimentRow> rows;
  for (auto& cell : out) rows.insert(rows.end(), cell.begin(), cell.end());
  return rows;
}

std::string format_csv(const std::vector<ExperimentRow>& rows) {
  std::string out = "sweep,run,agent,value,baseline,ratio,protocol,position\n";
  char line[256];
  for (const ExperimentRow& r : rows) {
    std::snprintf(line, sizeof line, "%d,%d,%d,%.6f,%.6f,%.6f,%s,%d\n", r.sweep, r.run, r.agent, r.value,
                  r.baseline, r.ratio, r.protocol == ProtocolChoice::fixed ? "fixed" : "randomized", r.position);
    out += line;
  }
  return out;
}

}  // namespace msm
