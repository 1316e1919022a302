#include <algorithm>
#include <cctype>
#include <string>

#include "msm/analysis.hpp"

namespace msm {

OptResult brute_force_opt(const Objective& f, const Constraint& c, const ItemSet& over) {
  if (static_cast<int>(over.size()) > kBruteForceLimit) {
    throw TooLarge("brute_force_opt: " + std::to_string(over.size()) + " items exceeds the limit of " +
                   std::to_string(kBruteForceLimit));
  }
  require_within(over, f.ground_size(), "brute_force_opt");
  OptResult best;
  bool seen = false;
  for_each_independent_set(c, over, [&](const ItemSet& s) {
    const double v = f.value(s);
    if (!seen || v > best.value + kTolerance) {
      best.value = v;
      best.witness = s;
      seen = true;
    }
  });
  return best;
}

ItemSet items_lost_before_first_turn(const Trace& trace, int agent) {
  const int position = trace.position_of(agent);
  ItemSet lost;
  for (const PickEvent& e : trace.events) {
    if (e.round != 1) break;
    if (e.turn - 1 >= position) break;
    if (e.item) lost.insert(*e.item);
  }
  return lost;
}

OptResult opt_minus_from_trace(const Instance& instance, const Trace& trace, int agent) {
  const ItemSet remaining = ItemSet::range(instance.m()).minus(items_lost_before_first_turn(trace, agent));
  return brute_force_opt(instance.objective(agent), instance.constraint(agent), remaining);
}

OptResult pessimistic_opt_minus(const Instance& instance, int agent, int lost) {
  const int m = instance.m();
  if (lost < 0 || lost > m) throw InvalidArgument("pessimistic_opt_minus: lost count out of range");
  const ItemSet all = ItemSet::range(m);
  std::vector<bool> chosen(static_cast<std::size_t>(m), false);
  std::fill(chosen.begin(), chosen.begin() + lost, true);
  OptResult worst;
  bool seen = false;
  do {
    ItemSet removed;
    for (int x = 0; x < m; ++x) {
      if (chosen[static_cast<std::size_t>(x)]) removed.insert(x);
    }
    OptResult r = brute_force_opt(instance.objective(agent), instance.constraint(agent), all.minus(removed));
    if (!seen || r.value < worst.value - kTolerance) {
      worst = std::move(r);
      seen = true;
    }
  } while (std::prev_permutation(chosen.begin(), chosen.end()));
  return worst;
}

// ---------------------------------------------------------------------------

std::string_view theorem_name(Theorem t) {
  static constexpr std::string_view names[] = {"T1", "T2", "T3", "T4", "T5", "T6", "T7"};
  return names[static_cast<int>(t)];
}

std::optional<Theorem> parse_theorem(std::string_view text) {
  if (text.size() != 2 || std::toupper(static_cast<unsigned char>(text[0])) != 'T') return std::nullopt;
  const int d = text[1] - '0';
  if (d < 1 || d > 7) return std::nullopt;
  return static_cast<Theorem>(d - 1);
}

BoundSpec make_bound(Theorem t, int n, int p) {
  if (n < 1 || p < 1) throw InvalidArgument("make_bound: n and p must be positive");
  BoundSpec b;
  b.theorem = t;
  b.n = n;
  b.p = p;
  switch (t) {
    case Theorem::T1: b.factor = {1, n + p}; break;
    case Theorem::T2: b.factor = {1, n}; break;
    case Theorem::T3: b.factor = {1, p + 2}; break;
    case Theorem::T4: b.factor = {1, 2}; break;
    case Theorem::T5: b.factor = {1, 4 * n + 4 * p + 2}; break;
    case Theorem::T6: b.factor = {1, 4 * n + 2}; break;
    case Theorem::T7: throw InvalidArgument("make_bound: use theorem7_bound for T7");
  }
  return b;
}

BoundSpec theorem7_bound(int n, int p, bool monotone, bool cardinality) {
  if (n < 1 || p < 1) throw InvalidArgument("theorem7_bound: n and p must be positive");
  BoundSpec b;
  b.theorem = Theorem::T7;
  b.n = n;
  b.p = p;
  // beta * n is an integer in every case.
  std::int64_t beta_n = 0;
  if (monotone) {
    beta_n = cardinality ? 2 * n : 2 * n + p;
  } else {
    beta_n = cardinality ? 5 * n + 2 : 5 * n + 4 * p + 2;
  }
  b.factor = {1, beta_n};
  b.beta = static_cast<double>(beta_n) / n;
  return b;
}

namespace {

double bundle_value(const Instance& instance, const Allocation& allocation, int agent) {
  return instance.objective(agent).value(allocation[agent].selected());
}

std::optional<ItemId> first_pick(const Trace& trace, int agent) {
  for (const PickEvent& e : trace.events) {
    if (e.agent == agent && e.item) return e.item;
  }
  return std::nullopt;
}

void require_policy(const Trace& trace, int agent, std::string_view policy, Theorem t) {
  if (trace.policies.at(static_cast<std::size_t>(agent)) != policy) {
    throw BoundMismatch(std::string(theorem_name(t)) + " requires agent " + std::to_string(agent) +
                        " to use the " + std::string(policy) + " policy");
  }
}

void require(bool condition, Theorem t, const std::string& what) {
  if (!condition) throw BoundMismatch(std::string(theorem_name(t)) + " requires " + what);
}

}  // namespace

ItemSet theorem3_compared_set(const Trace& trace, const Allocation& allocation, int i, int j) {
  ItemSet s = allocation[j].all_items();
  if (trace.position_of(i) > trace.position_of(j)) {
    if (auto g = first_pick(trace, j)) s.erase(*g);
  }
  return s;
}

BoundCheck check_theorem_bound(const Instance& instance, const Trace& trace, int agent, Theorem t) {
  if (agent < 0 || agent >= instance.n()) throw InvalidArgument("check_theorem_bound: agent out of range");
  if (trace.n != instance.n() || trace.m != instance.m()) {
    throw InvalidArgument("check_theorem_bound: trace does not belong to this instance");
  }
  const Constraint& c = instance.constraint(agent);
  const int n = instance.n();
  const int p = c.declared_p();
  const bool monotone = instance.monotone(agent);

  switch (t) {
    case Theorem::T1:
      require_policy(trace, agent, "greedy", t);
      require(monotone, t, "a monotone objective");
      break;
    case Theorem::T2:
      require_policy(trace, agent, "greedy", t);
      require(monotone, t, "a monotone objective");
      require(c.is_cardinality(), t, "a cardinality constraint");
      require(n >= 2, t, "n >= 2");
      break;
    case Theorem::T3:
      require_policy(trace, agent, "greedy", t);
      require(monotone, t, "a monotone objective");
      break;
    case Theorem::T4:
      require_policy(trace, agent, "greedy", t);
      require(monotone, t, "a monotone objective");
      require(c.is_cardinality(), t, "a cardinality constraint");
      break;
    case Theorem::T5:
      require_policy(trace, agent, "simultaneous_greedy", t);
      break;
    case Theorem::T6:
      require_policy(trace, agent, "simultaneous_greedy", t);
      require(c.is_cardinality(), t, "a cardinality constraint");
      break;
    case Theorem::T7:
      throw BoundMismatch("T7 is an ex-ante guarantee; use exante_bound_check");
  }

  const Allocation allocation = allocation_of(trace, instance);
  BoundCheck check;
  check.bound = make_bound(t, n, p);
  check.agent = agent;
  check.achieved = bundle_value(instance, allocation, agent);

  if (t == Theorem::T3 || t == Theorem::T4) {
    bool seen = false;
    for (int j = 0; j < n; ++j) {
      if (j == agent) continue;
      OptResult r = brute_force_opt(instance.objective(agent), c, theorem3_compared_set(trace, allocation, agent, j));
      if (!seen || r.value > check.benchmark + kTolerance) {
        check.benchmark = r.value;
        check.witness = std::move(r.witness);
        seen = true;
      }
    }
  } else {
    OptResult r = opt_minus_from_trace(instance, trace, agent);
    check.benchmark = r.value;
    check.witness = std::move(r.witness);
  }

  check.required = check.bound.factor_value() * check.benchmark;
  check.passed = check.achieved >= check.required - kTolerance;
  check.margin = check.required > 0.0 ? check.achieved / check.required : kInfinity;
  return check;
}

BenchmarkReport benchmark_report(const Instance& instance, const Trace& trace,
                                 const std::vector<Theorem>& theorems) {
  const Allocation allocation = allocation_of(trace, instance);
  BenchmarkReport report;
  for (int i = 0; i < instance.n(); ++i) {
    AgentBenchmark a;
    a.agent = i;
    a.policy = trace.policies.at(static_cast<std::size_t>(i));
    a.achieved = bundle_value(instance, allocation, i);
    a.opt = brute_force_opt(instance.objective(i), instance.constraint(i), ItemSet::range(instance.m()));
    a.opt_minus = opt_minus_from_trace(instance, trace, i);
    for (Theorem t : theorems) {
      if (t == Theorem::T7) continue;
      try {
        a.bounds.push_back(check_theorem_bound(instance, trace, i, t));
        report.passed = report.passed && a.bounds.back().passed;
      } catch (const BoundMismatch&) {
        a.not_applicable.push_back(t);
      }
    }
    report.agents.push_back(std::move(a));
  }
  return report;
}

}  // namespace msm
