#pragma once

// Shared vocabulary: item ids and sets, error types, seeded randomness and
// a small deterministic parallel-map helper.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace msm {

using ItemId = std::int32_t;

/// Absolute tolerance for every floating-point comparison in the library.
inline constexpr double kTolerance = 1e-9;

// ---------------------------------------------------------------------------
// Errors

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed instance, parameters, or set arguments.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Exhaustive routine asked to enumerate a ground set beyond its limit.
class TooLarge : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Ground set and item sets

struct GroundSet {
  int m = 0;
};

/// Sorted list of distinct item ids. The sorted representation doubles as the
/// canonical form used for hashing and lexicographic comparison.
class ItemSet {
 public:
  using const_iterator = std::vector<ItemId>::const_iterator;

  ItemSet() = default;
  ItemSet(std::initializer_list<ItemId> ids);
  explicit ItemSet(std::vector<ItemId> ids);

  /// {0, 1, ..., m-1}
  static ItemSet range(int m);
  /// Bit b of `mask` set <=> item b is a member.
  static ItemSet from_mask(std::uint64_t mask);

  bool contains(ItemId x) const;
  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }

  /// Returns false if `x` was already present.
  bool insert(ItemId x);
  /// Returns false if `x` was absent.
  bool erase(ItemId x);

  ItemSet with(ItemId x) const;
  ItemSet without(ItemId x) const;

  bool is_subset_of(const ItemSet& other) const;
  ItemSet union_with(const ItemSet& other) const;
  ItemSet intersect(const ItemSet& other) const;
  ItemSet minus(const ItemSet& other) const;

  /// Requires every member < 64.
  std::uint64_t to_mask() const;

  const std::vector<ItemId>& items() const { return ids_; }
  const_iterator begin() const { return ids_.begin(); }
  const_iterator end() const { return ids_.end(); }
  ItemId front() const { return ids_.front(); }
  ItemId back() const { return ids_.back(); }

  /// "{0,2,5}"
  std::string to_string() const;

  friend bool operator==(const ItemSet&, const ItemSet&) = default;
  friend std::strong_ordering operator<=>(const ItemSet& a, const ItemSet& b) {
    return a.ids_ <=> b.ids_;
  }

 private:
  std::vector<ItemId> ids_;
};

struct ItemSetHash {
  std::size_t operator()(const ItemSet& s) const noexcept;
};

/// Throws InvalidArgument unless every member of `s` is in [0, m).
void require_within(const ItemSet& s, int m, const char* what);

// ---------------------------------------------------------------------------
// Graphs (items are vertices for influence/cut objectives, edges for the
// graphic matroid)

using Edge = std::pair<int, int>;

struct Graph {
  int vertices = 0;
  std::vector<Edge> edges;

  std::vector<std::vector<int>> adjacency() const;
  std::vector<int> degrees() const;
  /// No self-loops, no repeated edges, endpoints in range.
  bool is_simple() const;
};

/// Whitespace-separated "u v" pairs, one per line, 0-indexed. The vertex count
/// is one more than the largest endpoint unless `vertices` is larger.
Graph parse_edge_list(const std::string& text, int vertices = 0);
std::string format_edge_list(const Graph& g);

// ---------------------------------------------------------------------------
// Randomness
//
// Generator "msm-rng v1": std::mt19937_64 seeded with the 64-bit seed,
// bounded integers by rejection sampling on the raw 64-bit output, doubles
// from the top 53 bits. The standard library's distributions are not used so
// streams are identical across standard library implementations.

struct RngSeed {
  std::uint64_t value = 0;
  friend bool operator==(RngSeed, RngSeed) = default;
};

std::uint64_t splitmix64(std::uint64_t x);

/// Independent child seed for stream `stream` of `parent`.
RngSeed derive_seed(RngSeed parent, std::uint64_t stream);

class Rng {
 public:
  explicit Rng(RngSeed seed) : engine_(seed.value) {}

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform in [0, bound); bound >= 1.
  std::uint64_t uniform_below(std::uint64_t bound);
  /// Uniform in [0, 1).
  double uniform01();
  bool bernoulli(double p) { return uniform01() < p; }

 private:
  std::mt19937_64 engine_;
};

/// Uniform permutation of {0, ..., n-1}, Durstenfeld variant of Fisher-Yates.
std::vector<int> fisher_yates_permutation(int n, RngSeed seed);

// ---------------------------------------------------------------------------

/// Worker count used by parallel_for: hardware concurrency, at least 1.
unsigned default_workers();

/// Calls fn(i) for i in [0, count) across `workers` threads. Results must be
/// written to per-index slots by the caller so the outcome is independent of
/// scheduling. The first exception thrown by any call is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn,
                  unsigned workers = default_workers());

}  // namespace msm
