#pragma once

// Brute-force benchmarks (OPT, OPT-minus) and checkers for the per-agent
// approximation, ex-ante and fairness guarantees of the Round-Robin protocols.

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "msm/constraints.hpp"
#include "msm/engine.hpp"
#include "msm/instance.hpp"
#include "msm/objectives.hpp"

namespace msm {

inline constexpr int kBruteForceLimit = 22;
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct OptResult {
  double value = 0.0;
  ItemSet witness;  // lexicographically smallest maximiser
};

/// Exact max of f over the independent subsets of `over`. Throws TooLarge
/// when |over| > 22.
OptResult brute_force_opt(const Objective& f, const Constraint& c, const ItemSet& over);

/// Items picked strictly before `agent`'s first turn.
ItemSet items_lost_before_first_turn(const Trace& trace, int agent);

/// Agent's optimum over the items still available at its first turn.
OptResult opt_minus_from_trace(const Instance& instance, const Trace& trace, int agent);

/// min over every set of `lost` removed items of the optimum on the rest:
/// the adversarial lower bound on OPT-minus for an agent at position lost+1.
OptResult pessimistic_opt_minus(const Instance& instance, int agent, int lost);

// ---------------------------------------------------------------------------
// Theorem bounds

enum class Theorem { T1, T2, T3, T4, T5, T6, T7 };

std::string_view theorem_name(Theorem t);
/// Parses "T1".."T7" (case-insensitive).
std::optional<Theorem> parse_theorem(std::string_view text);

/// Closed-form guarantee factor. Every factor in the family is 1/d for an
/// integer d, stored as a Rational.
struct BoundSpec {
  Theorem theorem = Theorem::T1;
  int n = 1;
  int p = 1;
  /// T7 only: the case-dependent beta; 0 otherwise.
  double beta = 0.0;
  Rational factor{1, 1};

  double factor_value() const { return factor.to_double(); }
};

/// T1: 1/(n+p)  T2: 1/n  T3: 1/(p+2)  T4: 1/2  T5: 1/(4n+4p+2)  T6: 1/(4n+2).
/// For T7 use theorem7_bound.
BoundSpec make_bound(Theorem t, int n, int p);

/// beta = 2 (monotone, cardinality), 2 + p/n (monotone), 5 + 2/n
/// (non-monotone, cardinality), 5 + (4p+2)/n (non-monotone); factor 1/(beta n).
BoundSpec theorem7_bound(int n, int p, bool monotone, bool cardinality);

/// The theorem does not apply to this agent (policy, objective or constraint
/// mismatch, or n < 2 for T2).
class BoundMismatch : public Error {
 public:
  using Error::Error;
};

struct BoundCheck {
  BoundSpec bound;
  int agent = 0;
  double achieved = 0.0;   // f_i(S_i), best of two for two-solution agents
  double benchmark = 0.0;  // OPT-minus (T1/T2/T5/T6) or max over j of the T3/T4 target
  ItemSet witness;
  double required = 0.0;   // factor * benchmark
  double margin = kInfinity;  // achieved / required
  bool passed = true;
};

/// Ex-post check of T1-T6 for `agent` on a completed run. Passes when
/// achieved >= required - 1e-9. Throws BoundMismatch when the theorem's
/// hypotheses do not hold, and for T7 (see exante_bound_check).
BoundCheck check_theorem_bound(const Instance& instance, const Trace& trace, int agent, Theorem t);

struct AgentBenchmark {
  int agent = 0;
  std::string policy;
  double achieved = 0.0;
  OptResult opt;
  OptResult opt_minus;
  std::vector<BoundCheck> bounds;
  /// Requested theorems whose hypotheses this agent does not meet.
  std::vector<Theorem> not_applicable;
};

struct BenchmarkReport {
  std::vector<AgentBenchmark> agents;
  bool passed = true;
};

/// OPT, OPT-minus, achieved value and every applicable ex-post bound for
/// each agent. T7 is skipped here (it is an ex-ante statement).
BenchmarkReport benchmark_report(const Instance& instance, const Trace& trace,
                                 const std::vector<Theorem>& theorems);

// ---------------------------------------------------------------------------
// Fairness

struct PairFairness {
  int i = 0;
  int j = 0;
  /// max over g in A_j of v_i(A_i) / v_i(A_j - g), feasibility ignored.
  double alpha_ef1 = kInfinity;
  /// max over g in A_j of v_i(A_i) / max over A' subset A_j - g feasible for i.
  double alpha_fef1 = kInfinity;
  /// v_i(A_i) / max over S in I_i|S'_j of v_i(S), where S'_j = A_j if i acts
  /// before j and A_j minus j's first pick otherwise.
  double alpha_theorem = kInfinity;
  ItemSet compared;  // S'_j
  double own_value = 0.0;
  double compared_opt = 0.0;
  /// T3 (1/(p_i+2)) and, under cardinality, T4 (1/2) verdicts.
  /// Only meaningful when agent i is a greedy agent with a monotone objective.
  bool theorem_applicable = false;
  bool theorem3_passed = true;
  std::optional<bool> theorem4_passed;
};

/// S'_j for the pair (i, j): everything j took if i acts before j, otherwise
/// without j's first pick.
ItemSet theorem3_compared_set(const Trace& trace, const Allocation& allocation, int i, int j);

/// Agents with two solutions are valued by their better solution and are
/// envied for everything they took.
PairFairness check_fef1_pair(const Instance& instance, const Trace& trace, const Allocation& allocation,
                             int i, int j);

struct FairnessReport {
  std::vector<PairFairness> pairs;  // ordered pairs i != j
  double min_ef1 = kInfinity;
  double min_fef1 = kInfinity;
  double min_theorem = kInfinity;
  /// Over pairs whose agent i is greedy and monotone.
  bool theorem_bounds_passed = true;
};

FairnessReport fairness_report(const Instance& instance, const Trace& trace);

// ---------------------------------------------------------------------------
// Ex-ante guarantee of the randomized protocol

inline constexpr int kExactExanteLimit = 6;

struct ExanteMode {
  bool exact = true;
  std::uint64_t samples = 0;  // Monte-Carlo only
  RngSeed seed{0};

  static ExanteMode exact_mode() { return {}; }
  static ExanteMode monte_carlo(std::uint64_t samples, RngSeed seed) { return {false, samples, seed}; }
};

struct ExanteAgentReport {
  int agent = 0;
  BoundSpec bound;
  double opt = 0.0;
  ItemSet opt_witness;
  double required = 0.0;  // OPT / (beta n)
  double expected = 0.0;  // exact mean or sample mean
  double ci_low = 0.0;    // 99% interval (equal to expected in exact mode)
  double ci_high = 0.0;
  bool passed = true;
};

struct ExanteReport {
  bool exact = true;
  std::uint64_t runs = 0;
  std::vector<ExanteAgentReport> agents;
  bool passed = true;
};

/// E over uniformly random turn orders of f_i(best solution of i), compared
/// with OPT_i/(beta n). Exact mode enumerates all n! orders (n <= 6);
/// Monte-Carlo mode fails an agent only when the upper end of its 99%
/// confidence interval is below the bound.
ExanteReport exante_bound_check(const Instance& instance, const std::vector<PolicyKind>& policies,
                                const ExanteMode& mode, const ProtocolConfig& base = {});

// ---------------------------------------------------------------------------

struct SaturationReport {
  bool passed = true;
  bool cardinality_regime = false;
  bool complete = false;
  /// Counterexample: agent that could still take `item`.
  std::optional<int> agent;
  std::optional<ItemId> item;
};

/// Cardinality instances: the allocation is complete or every agent is at
/// its cap. Otherwise: no unallocated item can be added to any agent's set.
SaturationReport check_corollary_saturation(const Instance& instance, const Allocation& allocation);

}  // namespace msm
