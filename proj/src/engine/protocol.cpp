#include <algorithm>

#include "msm/engine.hpp"

namespace msm {
namespace {

/// Per-agent mutable state during one run.
class AgentRuntime {
 public:
  AgentRuntime(const Instance& instance, int agent, PolicyKind kind, NegativeMarginalRule rule)
      : f_(instance.objective(agent)),
        c_(instance.constraint(agent)),
        kind_(std::move(kind)),
        rule_(rule),
        agent_(agent) {
    if (const auto* s = std::get_if<Example1StrategicPolicy>(&kind_)) check_example1(instance, *s);
    if (const auto* s = std::get_if<ScriptedPolicy>(&kind_)) {
      for (ItemId x : s->order) {
        if (x < 0 || x >= instance.m()) throw InvalidArgument("scripted policy: item id out of range");
      }
    }
  }

  Pick propose(const ItemSet& available) {
    return std::visit(
        [&](const auto& k) -> Pick {
          using K = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<K, GreedyPolicy>) {
            ItemSet scratch = solutions_[0];
            return greedy_step(scratch, available, f_, c_, rule_);
          } else if constexpr (std::is_same_v<K, SimultaneousGreedyPolicy>) {
            auto scratch = solutions_;
            return simultaneous_greedy_step(scratch, available, f_, c_, rule_);
          } else if constexpr (std::is_same_v<K, ScriptedPolicy>) {
            if (cursor_ >= k.order.size()) return Pick{};
            const ItemId x = k.order[cursor_];
            Pick p;
            p.item = x;
            if (!solutions_[0].contains(x)) p.marginal = f_.marginal(x, solutions_[0]);
            return p;
          } else {
            return propose_example1(k, available);
          }
        },
        kind_);
  }

  void commit(const Pick& pick) {
    if (std::holds_alternative<ScriptedPolicy>(kind_)) ++cursor_;
    if (pick.dummy()) return;
    solutions_[static_cast<std::size_t>(std::max(pick.slot, 1) - 1)].insert(*pick.item);
  }

  /// Throws ProtocolFault unless `pick` is legal against `available`.
  void validate(const Pick& pick, const ItemSet& available) const {
    if (pick.dummy()) return;
    const ItemId x = *pick.item;
    if (!available.contains(x)) {
      throw ProtocolFault(agent_, "picked unavailable item " + std::to_string(x));
    }
    const int slots = solution_count(kind_);
    const int slot = slots == 2 ? pick.slot : 1;
    if ((slots == 2 && (pick.slot < 1 || pick.slot > 2)) || (slots == 1 && pick.slot > 1)) {
      throw ProtocolFault(agent_, "invalid solution slot " + std::to_string(pick.slot));
    }
    if (!c_.can_add(solutions_[static_cast<std::size_t>(slot - 1)], x)) {
      throw ProtocolFault(agent_, "picked item " + std::to_string(x) + " that breaks its constraint");
    }
  }

 private:
  void check_example1(const Instance& instance, const Example1StrategicPolicy& s) const {
    const auto* p = std::get_if<Example1Params>(&instance.agent(agent_).objective);
    if (agent_ != 0 || p == nullptr || p->agent != 1 || p->n != s.n || instance.n() != s.n ||
        instance.m() != s.n * s.n + 1) {
      throw InvalidArgument("example1_strategic: policy must be attached to agent 1 of an example1 "
                            "instance with n = " + std::to_string(s.n));
    }
  }

  Pick propose_example1(const Example1StrategicPolicy& s, const ItemSet& available) const {
    const ItemSet& mine = solutions_[0];
    const ItemId opening = s.n - 1;  // g_n
    if (mine.empty() && available.contains(opening) && c_.can_add(mine, opening)) {
      return Pick{opening, 0, f_.marginal(opening, mine)};
    }
    for (auto it = available.items().rbegin(); it != available.items().rend(); ++it) {
      if (!c_.can_add(mine, *it)) continue;
      const double gain = f_.marginal(*it, mine);
      if (gain > kTolerance) return Pick{*it, 0, gain};
    }
    return Pick{};
  }

  const Objective& f_;
  const Constraint& c_;
  PolicyKind kind_;
  NegativeMarginalRule rule_;
  int agent_;
  std::array<ItemSet, 2> solutions_;
  std::size_t cursor_ = 0;
};

void check_permutation(const std::vector<int>& order, int n) {
  if (static_cast<int>(order.size()) != n) throw InvalidArgument("turn order must list every agent once");
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (int a : order) {
    if (a < 0 || a >= n || seen[static_cast<std::size_t>(a)]) {
      throw InvalidArgument("turn order is not a permutation of the agents");
    }
    seen[static_cast<std::size_t>(a)] = 1;
  }
}

}  // namespace

Trace run_round_robin(const Instance& instance, const std::vector<PolicyKind>& policies,
                      const ProtocolConfig& config) {
  const int n = instance.n();
  const int m = instance.m();
  if (static_cast<int>(policies.size()) != n) throw InvalidArgument("need exactly one policy per agent");

  Trace trace;
  trace.m = m;
  trace.n = n;
  trace.permutation = config.order;
  if (trace.permutation.empty()) {
    for (int i = 0; i < n; ++i) trace.permutation.push_back(i);
  }
  check_permutation(trace.permutation, n);

  std::vector<AgentRuntime> agents;
  agents.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    agents.emplace_back(instance, i, policies[static_cast<std::size_t>(i)], config.rule);
    trace.solution_counts.push_back(solution_count(policies[static_cast<std::size_t>(i)]));
    trace.policies.emplace_back(policy_name(policies[static_cast<std::size_t>(i)]));
  }

  const int base_rounds = (m + n - 1) / n;
  ItemSet available = ItemSet::range(m);
  for (int round = 1;; ++round) {
    if (round > base_rounds) {
      if (config.rounds == RoundLimit::ceil_m_over_n || available.empty()) break;
      const bool picked = std::any_of(trace.events.end() - n, trace.events.end(),
                                      [](const PickEvent& e) { return !e.dummy(); });
      if (!picked) break;
    }
    for (int turn = 0; turn < n; ++turn) {
      const int a = trace.permutation[static_cast<std::size_t>(turn)];
      auto& agent = agents[static_cast<std::size_t>(a)];
      const Pick pick = agent.propose(available);
      agent.validate(pick, available);
      agent.commit(pick);
      if (!pick.dummy()) available.erase(*pick.item);
      trace.events.push_back(PickEvent{round, turn + 1, a, pick.item,
                                       trace.solution_counts[static_cast<std::size_t>(a)] == 2 ? pick.slot : 0,
                                       pick.dummy() ? 0.0 : pick.marginal});
    }
  }
  return trace;
}

Trace run_randomized_round_robin(const Instance& instance, const std::vector<PolicyKind>& policies,
                                 RngSeed seed, ProtocolConfig config) {
  config.order = fisher_yates_permutation(instance.n(), seed);
  return run_round_robin(instance, policies, config);
}

}  // namespace msm
