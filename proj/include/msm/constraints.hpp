#pragma once

// Independence oracles for p-systems: cardinality, partition matroid, graphic
// matroid, intersections of matroids, and restrictions of any of these.

#include <cstdint>
#include <functional>
#include <memory>
#include <string_view>
#include <variant>
#include <vector>

#include "msm/core.hpp"

namespace msm {

class Constraint;

struct CardinalityParams {
  int k = 0;
};

struct PartitionMatroidParams {
  std::vector<std::vector<ItemId>> parts;
  std::vector<int> caps;
};

/// Items are the edges of a multigraph; a set is independent iff acyclic.
struct GraphicMatroidParams {
  int vertices = 0;
  std::vector<Edge> edges;
};

/// Conjunction of member oracles; each member must be a matroid.
struct IntersectionParams {
  std::vector<Constraint> members;
};

/// I|A: the sets of the base system contained in `allowed`.
struct RestrictionParams {
  std::shared_ptr<const Constraint> base;
  ItemSet allowed;
};

enum class ConstraintFamily { cardinality, partition_matroid, graphic_matroid, intersection, restriction };

std::string_view family_name(ConstraintFamily family);

class Constraint {
 public:
  using Params = std::variant<CardinalityParams, PartitionMatroidParams, GraphicMatroidParams,
                              IntersectionParams, RestrictionParams>;

  static Constraint cardinality(int m, int k);
  /// Cardinality m: every subset is independent.
  static Constraint unconstrained(int m) { return cardinality(m, m); }
  static Constraint partition_matroid(int m, std::vector<std::vector<ItemId>> parts,
                                      std::vector<int> caps);
  static Constraint graphic_matroid(int vertices, std::vector<Edge> edges);
  static Constraint intersection(std::vector<Constraint> members);
  static Constraint restriction(const Constraint& base, ItemSet allowed);

  bool is_independent(const ItemSet& s) const;
  /// is_independent(s + x) for independent s, without building the union.
  bool can_add(const ItemSet& s, ItemId x) const;

  int ground_size() const { return m_; }
  /// p for which this system is claimed to be a p-system: 1 for matroids,
  /// k for an intersection of k matroids, unchanged by restriction.
  int declared_p() const { return declared_p_; }
  /// Overrides the derived p (must be >= 1).
  Constraint with_declared_p(int p) const;

  ConstraintFamily family() const;
  bool is_matroid() const;
  /// Cardinality, or a restriction of one.
  bool is_cardinality() const;
  const Params& params() const { return params_; }

 private:
  Constraint(int m, int declared_p, Params params);

  int m_;
  int declared_p_;
  Params params_;
  std::vector<int> part_of_;  // partition matroid lookup
};

/// Restriction of `c` to the items of `allowed`; p is preserved.
Constraint restrict(const Constraint& c, const ItemSet& allowed);

// ---------------------------------------------------------------------------

inline constexpr int kEnumerationLimit = 24;
inline constexpr int kPSystemLimit = 14;

/// Visits every independent subset of `over` exactly once, in lexicographic
/// order of the sorted member lists, by depth-first extension. Dependent sets
/// are never extended. Requires |over| <= 24.
void for_each_independent_set(const Constraint& c, const ItemSet& over,
                              const std::function<void(const ItemSet&)>& visit);

std::vector<ItemSet> enumerate_independent_sets(const Constraint& c, const ItemSet& over);

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;
  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator<(const Rational& a, const Rational& b) { return a.num * b.den < b.num * a.den; }
  friend bool operator==(const Rational& a, const Rational& b) { return a.num * b.den == b.num * a.den; }
};

struct PSystemReport {
  /// max over S of ur(S)/lr(S); 1 when every S has lr(S) = ur(S).
  Rational measured_p{1, 1};
  int declared_p = 1;
  bool within_declared = true;
  ItemSet witness;  // a set attaining measured_p
};

/// Exhaustive upper-rank / lower-rank ratio over all subsets of the ground
/// set. Requires m <= 14.
PSystemReport verify_p_system(const Constraint& c);

}  // namespace msm
