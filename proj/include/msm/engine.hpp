#pragma once

// Agent policies and the Round-Robin protocols.

#include <array>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "msm/core.hpp"
#include "msm/instance.hpp"

namespace msm {

/// What a greedy policy does when its best marginal is not positive.
enum class NegativeMarginalRule {
  as_written,        // take the argmax anyway
  skip_nonpositive,  // return a dummy instead
};

enum class RoundLimit {
  ceil_m_over_n,  // exactly ceil(m/n) rounds
  until_stalled,  // at least ceil(m/n) rounds, then until a round without picks
};

struct ProtocolConfig {
  /// order[t] is the agent acting at turn t+1; empty means the identity.
  std::vector<int> order;
  NegativeMarginalRule rule = NegativeMarginalRule::as_written;
  RoundLimit rounds = RoundLimit::ceil_m_over_n;
};

struct GreedyPolicy {};
struct SimultaneousGreedyPolicy {};
/// Returns the listed items in order, then dummies.
struct ScriptedPolicy {
  std::vector<ItemId> order;
};
/// Agent 1 of the example1 instance: takes g_n first, then its valued items
/// from the largest id down.
struct Example1StrategicPolicy {
  int n = 2;
};

using PolicyKind =
    std::variant<GreedyPolicy, SimultaneousGreedyPolicy, ScriptedPolicy, Example1StrategicPolicy>;

std::string_view policy_name(const PolicyKind& kind);
int solution_count(const PolicyKind& kind);

PolicyKind example1_strategic_policy(int n);

/// Greedy for monotone agents, simultaneous greedy for the rest.
std::vector<PolicyKind> default_policies(const Instance& instance);

struct Pick {
  std::optional<ItemId> item;
  int slot = 0;
  double marginal = 0.0;
  bool dummy() const { return !item.has_value(); }
};

/// One greedy turn: the feasible available item of largest marginal w.r.t.
/// `solution` (ties to the smallest id), added to `solution`.
Pick greedy_step(ItemSet& solution, const ItemSet& available, const Objective& f,
                 const Constraint& c, NegativeMarginalRule rule = NegativeMarginalRule::as_written);

/// One simultaneous-greedy turn over (item, slot) pairs: largest f(x | S_t),
/// ties to slot 1 then to the smallest id.
Pick simultaneous_greedy_step(std::array<ItemSet, 2>& solutions, const ItemSet& available,
                              const Objective& f, const Constraint& c,
                              NegativeMarginalRule rule = NegativeMarginalRule::as_written);

/// A policy returned an unavailable item, an infeasible item, or a bad slot.
class ProtocolFault : public Error {
 public:
  ProtocolFault(int agent, const std::string& what)
      : Error("agent " + std::to_string(agent) + ": " + what), agent_(agent) {}
  int agent() const { return agent_; }

 private:
  int agent_;
};

Trace run_round_robin(const Instance& instance, const std::vector<PolicyKind>& policies,
                      const ProtocolConfig& config = {});

/// Draws the turn order with fisher_yates_permutation(n, seed), then runs the
/// round-robin body. `config.order` is ignored.
Trace run_randomized_round_robin(const Instance& instance, const std::vector<PolicyKind>& policies,
                                 RngSeed seed, ProtocolConfig config = {});

}  // namespace msm
