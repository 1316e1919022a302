#include <algorithm>
#include <cmath>
#include <numeric>

#include "msm/analysis.hpp"

namespace msm {
namespace {

// Two-sided 99% normal quantile.
constexpr double kZ99 = 2.5758293035489004;

void require_exante_policies(const Instance& instance, const std::vector<PolicyKind>& policies) {
  if (static_cast<int>(policies.size()) != instance.n()) {
    throw InvalidArgument("exante_bound_check: need exactly one policy per agent");
  }
  for (int i = 0; i < instance.n(); ++i) {
    const PolicyKind& k = policies[static_cast<std::size_t>(i)];
    const bool ok = instance.monotone(i) ? std::holds_alternative<GreedyPolicy>(k)
                                         : std::holds_alternative<SimultaneousGreedyPolicy>(k);
    if (!ok) {
      throw BoundMismatch("T7 requires agent " + std::to_string(i) + " to use " +
                          (instance.monotone(i) ? "greedy" : "simultaneous_greedy"));
    }
  }
}

/// Per-agent value of one run under `order`.
std::vector<double> run_values(const Instance& instance, const std::vector<PolicyKind>& policies,
                               ProtocolConfig config, std::vector<int> order) {
  config.order = std::move(order);
  const Trace trace = run_round_robin(instance, policies, config);
  const Allocation a = allocation_of(trace, instance);
  std::vector<double> values(static_cast<std::size_t>(instance.n()));
  for (int i = 0; i < instance.n(); ++i) {
    values[static_cast<std::size_t>(i)] = instance.objective(i).value(a[i].selected());
  }
  return values;
}

}  // namespace

ExanteReport exante_bound_check(const Instance& instance, const std::vector<PolicyKind>& policies,
                                const ExanteMode& mode, const ProtocolConfig& base) {
  require_exante_policies(instance, policies);
  const int n = instance.n();
  if (mode.exact && n > kExactExanteLimit) {
    throw InvalidArgument("exante_bound_check: exact mode supports n <= " + std::to_string(kExactExanteLimit));
  }
  if (!mode.exact && mode.samples == 0) throw InvalidArgument("exante_bound_check: samples must be positive");

  std::vector<std::vector<int>> orders;
  if (mode.exact) {
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    do {
      orders.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
  } else {
    orders.reserve(mode.samples);
    for (std::uint64_t s = 0; s < mode.samples; ++s) {
      orders.push_back(fisher_yates_permutation(n, derive_seed(mode.seed, s)));
    }
  }

  std::vector<std::vector<double>> values(orders.size());
  parallel_for(orders.size(), [&](std::size_t r) { values[r] = run_values(instance, policies, base, orders[r]); });

  ExanteReport report;
  report.exact = mode.exact;
  report.runs = orders.size();
  const double runs = static_cast<double>(orders.size());
  for (int i = 0; i < n; ++i) {
    const auto col = static_cast<std::size_t>(i);
    ExanteAgentReport a;
    a.agent = i;
    a.bound = theorem7_bound(n, instance.constraint(i).declared_p(), instance.monotone(i),
                             instance.constraint(i).is_cardinality());
    OptResult opt = brute_force_opt(instance.objective(i), instance.constraint(i), ItemSet::range(instance.m()));
    a.opt = opt.value;
    a.opt_witness = std::move(opt.witness);
    a.required = a.bound.factor_value() * a.opt;

    double sum = 0.0;
    for (const auto& v : values) sum += v[col];
    a.expected = sum / runs;
    a.ci_low = a.ci_high = a.expected;
    if (!mode.exact && orders.size() > 1) {
      double ss = 0.0;
      for (const auto& v : values) ss += (v[col] - a.expected) * (v[col] - a.expected);
      const double half = kZ99 * std::sqrt(ss / (runs - 1.0)) / std::sqrt(runs);
      a.ci_low = a.expected - half;
      a.ci_high = a.expected + half;
    }
    a.passed = (mode.exact ? a.expected : a.ci_high) >= a.required - kTolerance;
    report.passed = report.passed && a.passed;
    report.agents.push_back(std::move(a));
  }
  return report;
}

}  // namespace msm
