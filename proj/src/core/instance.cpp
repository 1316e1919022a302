#include <sstream>

#include "msm/instance.hpp"

namespace msm {

AgentSpec make_agent(ObjectiveSpec objective, Constraint constraint) {
  const bool monotone = family_is_monotone(objective);
  return AgentSpec{std::move(objective), std::move(constraint), monotone};
}

Instance build_instance(GroundSet ground, std::vector<AgentSpec> agents) {
  if (ground.m < 1) throw InvalidArgument("instance: ground set must have at least one item");
  if (agents.empty()) throw InvalidArgument("instance: needs at least one agent");
  Instance inst;
  inst.ground_ = ground;
  inst.objectives_.reserve(agents.size());
  for (std::size_t i = 0; i < agents.size(); ++i) {
    const auto& a = agents[i];
    const std::string who = "instance: agent " + std::to_string(i);
    if (a.constraint.ground_size() != ground.m) {
      throw InvalidArgument(who + " constraint is over " + std::to_string(a.constraint.ground_size()) +
                            " items, expected " + std::to_string(ground.m));
    }
    if (a.monotone != family_is_monotone(a.objective)) {
      throw InvalidArgument(who + " declares monotone=" + (a.monotone ? "true" : "false") +
                            " but the " + std::string(family_name(a.objective)) + " family is " +
                            (family_is_monotone(a.objective) ? "monotone" : "non-monotone"));
    }
    inst.objectives_.emplace_back(a.objective, ground.m);
  }
  inst.agents_ = std::move(agents);
  return inst;
}

Instance example1_instance(int n, Example1Layout layout) {
  if (n < 1) throw InvalidArgument("example1: n must be positive");
  const int m = n * n + 1;
  std::vector<AgentSpec> agents;
  for (int i = 1; i <= n; ++i) {
    Example1Params p;
    p.n = n;
    p.agent = i;
    p.layout = layout;
    agents.push_back(make_agent(p, Constraint::unconstrained(m)));
  }
  return build_instance(GroundSet{m}, std::move(agents));
}

// ---------------------------------------------------------------------------

int Trace::position_of(int agent) const {
  for (std::size_t t = 0; t < permutation.size(); ++t) {
    if (permutation[t] == agent) return static_cast<int>(t);
  }
  throw InvalidArgument("trace: agent " + std::to_string(agent) + " not in permutation");
}

int Trace::rounds() const { return n == 0 ? 0 : static_cast<int>(events.size()) / n; }

std::string export_trace(const Trace& trace) {
  std::ostringstream out;
  for (const auto& e : trace.events) {
    out << e.round << ',' << e.turn << ',' << e.agent << ',';
    if (e.item) {
      out << *e.item;
    } else {
      out << "DUMMY";
    }
    if (e.slot != 0) out << ',' << e.slot;
    out << '\n';
  }
  return out.str();
}

ItemSet AgentBundle::all_items() const {
  ItemSet out;
  for (const auto& s : solutions) out = out.union_with(s);
  return out;
}

Allocation allocation_of(const Trace& trace) {
  if (trace.n < 1 || static_cast<int>(trace.solution_counts.size()) != trace.n) {
    throw InvalidArgument("trace: malformed agent metadata");
  }
  Allocation alloc;
  alloc.agents.resize(static_cast<std::size_t>(trace.n));
  for (int i = 0; i < trace.n; ++i) {
    const int count = trace.solution_counts[static_cast<std::size_t>(i)];
    if (count != 1 && count != 2) throw InvalidArgument("trace: solution count must be 1 or 2");
    alloc.agents[static_cast<std::size_t>(i)].solutions.resize(static_cast<std::size_t>(count));
  }
  std::vector<char> taken(static_cast<std::size_t>(trace.m), 0);
  for (const auto& e : trace.events) {
    if (e.agent < 0 || e.agent >= trace.n) throw InvalidArgument("trace: event agent out of range");
    if (!e.item) continue;
    const ItemId x = *e.item;
    if (x < 0 || x >= trace.m) throw InvalidArgument("trace: item out of range");
    if (taken[static_cast<std::size_t>(x)]) {
      throw InvalidArgument("trace: item " + std::to_string(x) + " picked more than once");
    }
    taken[static_cast<std::size_t>(x)] = 1;
    auto& bundle = alloc.agents[static_cast<std::size_t>(e.agent)];
    const int slot = e.slot == 0 ? 1 : e.slot;
    if (slot > static_cast<int>(bundle.solutions.size())) {
      throw InvalidArgument("trace: slot out of range for agent " + std::to_string(e.agent));
    }
    bundle.solutions[static_cast<std::size_t>(slot - 1)].insert(x);
  }
  return alloc;
}

Allocation allocation_of(const Trace& trace, const Instance& instance) {
  Allocation alloc = allocation_of(trace);
  for (int i = 0; i < trace.n; ++i) {
    auto& bundle = alloc.agents[static_cast<std::size_t>(i)];
    double best_value = -1.0;
    for (std::size_t t = 0; t < bundle.solutions.size(); ++t) {
      const double v = instance.objective(i).value(bundle.solutions[t]);
      if (v > best_value + kTolerance) {
        best_value = v;
        bundle.best = static_cast<int>(t);
      }
    }
  }
  return alloc;
}

}  // namespace msm
