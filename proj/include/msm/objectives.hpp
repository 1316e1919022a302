#pragma once

// Value oracles for the objective families and exhaustive property checkers.

#include <array>
#include <atomic>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "msm/core.hpp"

namespace msm {

struct AdditiveParams {
  std::vector<double> weights;
};

struct CoverageParams {
  int universe = 0;
  std::vector<std::vector<int>> covers;  // covers[item] subset of [universe]
  std::vector<double> weights;           // per universe element
};

/// Expected number of influenced users: |S| + sum over v not in S of
/// 1 - (1-q)^{N_S(v)}, with N_S(v) the number of neighbours of v in S.
struct InfluenceParams {
  std::vector<Edge> edges;
  double q = 0.2;
};

/// Weight of edges with exactly one endpoint in S. Unit weights when empty.
struct CutParams {
  std::vector<Edge> edges;
  std::vector<double> weights;
};

/// Which index convention the example1 construction uses for the item that
/// conflicts with g_{i-1}, and where the bonus items start.
enum class Example1Layout {
  consistent,  // partner g_{n+i}, bonus items g_j for j >= 3n
  printed,     // partner g_{2i},  bonus items g_j for j >= 3n+1
};

/// Objective of one agent in the adversarial greedy instance on m = n^2+1
/// items g_1..g_m (item id j-1 is g_j). Agent 1 is additive with value 1 on
/// g_1..g_{2n}. Every other agent i values g_{i-1}, g_i, its partner item and
/// the bonus items at 1 plus a small epsilon, and loses eps[2] when holding
/// both g_{i-1} and the partner.
struct Example1Params {
  int n = 2;
  int agent = 1;  // 1-indexed
  std::array<double, 4> eps{1e-3, 1e-4, 1e-5, 1e-6};
  Example1Layout layout = Example1Layout::consistent;

  int ground_size() const { return n * n + 1; }
  /// 1-indexed partner of agent i (i >= 2).
  int partner(int i) const { return layout == Example1Layout::consistent ? n + i : 2 * i; }
  /// 1-indexed first bonus item.
  int first_bonus() const { return layout == Example1Layout::consistent ? 3 * n : 3 * n + 1; }
};

using ObjectiveSpec =
    std::variant<AdditiveParams, CoverageParams, InfluenceParams, CutParams, Example1Params>;

std::string_view family_name(const ObjectiveSpec& spec);
/// Whether the family is monotone for every parameterisation.
bool family_is_monotone(const ObjectiveSpec& spec);

/// Value oracle f: 2^[m] -> R>=0 with f(empty) = 0. Every evaluation of f
/// counts one query; a marginal counts two. Oracles are safe to share across
/// threads; the counter is atomic.
class Objective {
 public:
  Objective(ObjectiveSpec spec, int m);
  Objective(const Objective& other);
  Objective& operator=(const Objective& other);
  Objective(Objective&&) noexcept;
  Objective& operator=(Objective&&) noexcept;
  ~Objective();

  double value(const ItemSet& s) const;
  /// f(x | s) = f(s + x) - f(s). Requires x not in s.
  double marginal(ItemId x, const ItemSet& s) const;

  std::uint64_t queries() const { return queries_.load(std::memory_order_relaxed); }
  void reset_queries() { queries_.store(0, std::memory_order_relaxed); }

  /// Caches values keyed on the canonical set. Off by default.
  void set_memoization(bool on);

  const ObjectiveSpec& spec() const { return spec_; }
  int ground_size() const { return m_; }
  bool monotone() const { return family_is_monotone(spec_); }
  std::string_view family() const { return family_name(spec_); }

 private:
  double evaluate(const ItemSet& s) const;
  double fast_marginal(ItemId x, const ItemSet& s) const;
  void validate() const;

  ObjectiveSpec spec_;
  int m_;
  std::vector<std::vector<int>> adjacency_;           // influence / cut
  std::vector<std::vector<double>> adjacent_weight_;  // cut
  mutable std::atomic<std::uint64_t> queries_{0};

  struct Memo {
    std::mutex mutex;
    std::unordered_map<ItemSet, double, ItemSetHash> values;
  };
  std::unique_ptr<Memo> memo_;
};

// ---------------------------------------------------------------------------
// Property checkers

inline constexpr int kExhaustiveCheckLimit = 12;

/// Outcome of a submodularity or monotonicity check. On failure, `property`
/// names the violated inequality and the witness fields describe it.
struct PropertyReport {
  bool passed = true;
  bool exhaustive = true;
  std::uint64_t checks = 0;
  std::string property;
  ItemSet s;
  ItemSet t;
  std::optional<ItemId> item;
  double lhs = 0.0;  // violated: lhs > rhs + tolerance
  double rhs = 0.0;
  /// Sampling mode only: probability bound that a violating triple occurring
  /// with frequency >= 1% would have been missed.
  double miss_probability = 0.0;

  std::string describe() const;
};

/// Diminishing returns f(x|S) >= f(x|T) for all S subset T, x not in T, plus
/// the general Nemhauser characterisation for all pairs (S, T). Exhaustive for
/// m <= 12, otherwise `samples` random triples drawn from `seed`.
PropertyReport check_submodular(const Objective& f, std::uint64_t samples = 200000,
                                RngSeed seed = {1});

/// f(S) <= f(S + x) for all S, x, plus the monotone Nemhauser inequality
/// f(T) <= f(S) + sum_{x in T\S} f(x|S) for all pairs.
PropertyReport check_monotone(const Objective& f, std::uint64_t samples = 200000,
                              RngSeed seed = {1});

}  // namespace msm
