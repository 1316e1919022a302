#pragma once

// The multi-agent problem statement and the artifacts a protocol run produces.

#include <optional>
#include <string>
#include <vector>

#include "msm/constraints.hpp"
#include "msm/core.hpp"
#include "msm/objectives.hpp"

namespace msm {

struct AgentSpec {
  ObjectiveSpec objective;
  Constraint constraint;
  /// Declared monotonicity; must agree with the objective family.
  bool monotone = true;
};

/// Validated problem: n agents, each with an objective oracle and an
/// independence oracle over the same ground set [m]. Immutable once built.
class Instance {
 public:
  int m() const { return ground_.m; }
  int n() const { return static_cast<int>(agents_.size()); }
  const GroundSet& ground() const { return ground_; }

  const AgentSpec& agent(int i) const { return agents_.at(static_cast<std::size_t>(i)); }
  const Objective& objective(int i) const { return objectives_.at(static_cast<std::size_t>(i)); }
  const Constraint& constraint(int i) const { return agent(i).constraint; }
  bool monotone(int i) const { return agent(i).monotone; }

 private:
  friend Instance build_instance(GroundSet ground, std::vector<AgentSpec> agents);
  GroundSet ground_;
  std::vector<AgentSpec> agents_;
  std::vector<Objective> objectives_;
};

/// Throws InvalidArgument on an empty ground set or agent list, a constraint
/// over a different ground set, invalid objective parameters, or a monotone
/// flag that contradicts the objective family.
Instance build_instance(GroundSet ground, std::vector<AgentSpec> agents);

/// AgentSpec whose monotone flag is taken from the objective family.
AgentSpec make_agent(ObjectiveSpec objective, Constraint constraint);

/// The adversarial greedy instance on n agents and n^2+1 items, with no
/// combinatorial constraints.
Instance example1_instance(int n, Example1Layout layout = Example1Layout::consistent);

// ---------------------------------------------------------------------------

struct PickEvent {
  int round = 1;                // 1-based
  int turn = 1;                 // 1-based position within the round
  int agent = 0;                // 0-based agent index
  std::optional<ItemId> item;   // nullopt: dummy
  int slot = 0;                 // 1 or 2 for two-solution policies, 0 otherwise
  double marginal = 0.0;        // gain recorded by the policy, 0 for dummies

  bool dummy() const { return !item.has_value(); }
};

struct Trace {
  int m = 0;
  int n = 0;
  /// permutation[t] is the agent acting at turn t+1 of every round.
  std::vector<int> permutation;
  std::vector<PickEvent> events;
  /// Solutions maintained per agent (1, or 2 for simultaneous greedy).
  std::vector<int> solution_counts;
  /// Policy kind name per agent.
  std::vector<std::string> policies;

  /// Turn position (0-based) of `agent` in every round.
  int position_of(int agent) const;
  int rounds() const;
};

/// One line per event: `round,turn,agent,item|DUMMY[,slot]`.
std::string export_trace(const Trace& trace);

struct AgentBundle {
  std::vector<ItemSet> solutions;  // one or two
  int best = 0;                    // index of the higher-valued solution

  const ItemSet& selected() const { return solutions.at(static_cast<std::size_t>(best)); }
  /// Every item the agent took, over all of its solutions.
  ItemSet all_items() const;
};

struct Allocation {
  std::vector<AgentBundle> agents;
  const AgentBundle& operator[](int i) const { return agents.at(static_cast<std::size_t>(i)); }
};

/// Replays the trace into per-agent solutions. Throws InvalidArgument when an
/// item is picked twice or an event is malformed. `best` is left at 0; use the
/// instance overload to select the better of two solutions.
Allocation allocation_of(const Trace& trace);
/// As above, and sets each agent's `best` to the higher-valued solution (ties
/// go to the first).
Allocation allocation_of(const Trace& trace, const Instance& instance);

}  // namespace msm
