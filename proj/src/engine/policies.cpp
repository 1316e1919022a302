#include "msm/engine.hpp"

namespace msm {

std::string_view policy_name(const PolicyKind& kind) {
  switch (kind.index()) {
    case 0: return "greedy";
    case 1: return "simultaneous_greedy";
    case 2: return "scripted";
    default: return "example1_strategic";
  }
}

int solution_count(const PolicyKind& kind) {
  return std::holds_alternative<SimultaneousGreedyPolicy>(kind) ? 2 : 1;
}

PolicyKind example1_strategic_policy(int n) {
  if (n < 1) throw InvalidArgument("example1_strategic: n must be positive");
  return Example1StrategicPolicy{n};
}

std::vector<PolicyKind> default_policies(const Instance& instance) {
  std::vector<PolicyKind> out;
  for (int i = 0; i < instance.n(); ++i) {
    if (instance.monotone(i)) {
      out.emplace_back(GreedyPolicy{});
    } else {
      out.emplace_back(SimultaneousGreedyPolicy{});
    }
  }
  return out;
}

Pick greedy_step(ItemSet& solution, const ItemSet& available, const Objective& f,
                 const Constraint& c, NegativeMarginalRule rule) {
  Pick best;
  for (ItemId x : available) {
    if (!c.can_add(solution, x)) continue;
    const double gain = f.marginal(x, solution);
    if (best.dummy() || gain > best.marginal + kTolerance) {
      best.item = x;
      best.marginal = gain;
    }
  }
  if (!best.dummy() && rule == NegativeMarginalRule::skip_nonpositive && best.marginal <= kTolerance) {
    return Pick{};
  }
  if (!best.dummy()) solution.insert(*best.item);
  return best;
}

Pick simultaneous_greedy_step(std::array<ItemSet, 2>& solutions, const ItemSet& available,
                              const Objective& f, const Constraint& c, NegativeMarginalRule rule) {
  Pick best;
  for (int slot = 1; slot <= 2; ++slot) {
    const auto& s = solutions[static_cast<std::size_t>(slot - 1)];
    for (ItemId x : available) {
      if (!c.can_add(s, x)) continue;
      const double gain = f.marginal(x, s);
      if (best.dummy() || gain > best.marginal + kTolerance) {
        best.item = x;
        best.slot = slot;
        best.marginal = gain;
      }
    }
  }
  if (!best.dummy() && rule == NegativeMarginalRule::skip_nonpositive && best.marginal <= kTolerance) {
    return Pick{};
  }
  if (!best.dummy()) solutions[static_cast<std::size_t>(best.slot - 1)].insert(*best.item);
  return best;
}

}  // namespace msm
