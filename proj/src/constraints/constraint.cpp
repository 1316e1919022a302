#include <algorithm>
#include <numeric>

#include "msm/constraints.hpp"

namespace msm {
namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw InvalidArgument(message);
}

/// Union-find acyclicity test over the chosen edges.
bool acyclic(const GraphicMatroidParams& g, const ItemSet& s) {
  std::vector<int> parent(static_cast<std::size_t>(g.vertices));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[static_cast<std::size_t>(v)] != v) {
      auto& p = parent[static_cast<std::size_t>(v)];
      p = parent[static_cast<std::size_t>(p)];
      v = p;
    }
    return v;
  };
  for (ItemId e : s) {
    const auto [u, v] = g.edges[static_cast<std::size_t>(e)];
    const int ru = find(u);
    const int rv = find(v);
    if (ru == rv) return false;
    parent[static_cast<std::size_t>(ru)] = rv;
  }
  return true;
}

}  // namespace

std::string_view family_name(ConstraintFamily family) {
  switch (family) {
    case ConstraintFamily::cardinality: return "cardinality";
    case ConstraintFamily::partition_matroid: return "partition_matroid";
    case ConstraintFamily::graphic_matroid: return "graphic_matroid";
    case ConstraintFamily::intersection: return "intersection";
    case ConstraintFamily::restriction: return "restriction";
  }
  return "unknown";
}

Constraint::Constraint(int m, int declared_p, Params params)
    : m_(m), declared_p_(declared_p), params_(std::move(params)) {}

Constraint Constraint::cardinality(int m, int k) {
  require(m >= 1, "cardinality: ground set must be non-empty");
  require(k >= 0, "cardinality: k must be non-negative");
  return Constraint(m, 1, CardinalityParams{k});
}

Constraint Constraint::partition_matroid(int m, std::vector<std::vector<ItemId>> parts,
                                         std::vector<int> caps) {
  require(m >= 1, "partition_matroid: ground set must be non-empty");
  require(parts.size() == caps.size(), "partition_matroid: one capacity per part");
  std::vector<int> part_of(static_cast<std::size_t>(m), -1);
  for (std::size_t p = 0; p < parts.size(); ++p) {
    require(caps[p] >= 0, "partition_matroid: negative capacity");
    for (ItemId x : parts[p]) {
      require(x >= 0 && x < m, "partition_matroid: item outside ground set");
      require(part_of[static_cast<std::size_t>(x)] == -1, "partition_matroid: parts overlap");
      part_of[static_cast<std::size_t>(x)] = static_cast<int>(p);
    }
  }
  require(std::find(part_of.begin(), part_of.end(), -1) == part_of.end(),
          "partition_matroid: parts must cover the ground set");
  Constraint c(m, 1, PartitionMatroidParams{std::move(parts), std::move(caps)});
  c.part_of_ = std::move(part_of);
  return c;
}

Constraint Constraint::graphic_matroid(int vertices, std::vector<Edge> edges) {
  require(!edges.empty(), "graphic_matroid: needs at least one edge");
  require(vertices >= 1, "graphic_matroid: needs at least one vertex");
  for (auto [u, v] : edges) {
    require(u >= 0 && v >= 0 && u < vertices && v < vertices,
            "graphic_matroid: edge endpoint outside vertex range");
  }
  const int m = static_cast<int>(edges.size());
  return Constraint(m, 1, GraphicMatroidParams{vertices, std::move(edges)});
}

Constraint Constraint::intersection(std::vector<Constraint> members) {
  require(members.size() >= 2, "intersection: needs at least two matroids");
  const int m = members.front().ground_size();
  for (const auto& c : members) {
    require(c.is_matroid(), "intersection: every member must be a matroid");
    require(c.ground_size() == m, "intersection: members disagree on the ground set");
  }
  const int p = static_cast<int>(members.size());
  return Constraint(m, p, IntersectionParams{std::move(members)});
}

Constraint Constraint::with_declared_p(int p) const {
  require(p >= 1, "declared p must be at least 1");
  Constraint c = *this;
  c.declared_p_ = p;
  return c;
}

ConstraintFamily Constraint::family() const {
  return static_cast<ConstraintFamily>(params_.index());
}

bool Constraint::is_matroid() const {
  if (const auto* r = std::get_if<RestrictionParams>(&params_)) return r->base->is_matroid();
  return family() != ConstraintFamily::intersection;
}

bool Constraint::is_cardinality() const {
  if (const auto* r = std::get_if<RestrictionParams>(&params_)) return r->base->is_cardinality();
  return family() == ConstraintFamily::cardinality;
}

bool Constraint::is_independent(const ItemSet& s) const {
  require_within(s, m_, "independence query");
  switch (family()) {
    case ConstraintFamily::cardinality:
      return s.size() <= static_cast<std::size_t>(std::get<CardinalityParams>(params_).k);
    case ConstraintFamily::partition_matroid: {
      const auto& p = std::get<PartitionMatroidParams>(params_);
      std::vector<int> used(p.caps.size(), 0);
      for (ItemId x : s) {
        const auto part = static_cast<std::size_t>(part_of_[static_cast<std::size_t>(x)]);
        if (++used[part] > p.caps[part]) return false;
      }
      return true;
    }
    case ConstraintFamily::graphic_matroid:
      return acyclic(std::get<GraphicMatroidParams>(params_), s);
    case ConstraintFamily::intersection:
      for (const auto& c : std::get<IntersectionParams>(params_).members) {
        if (!c.is_independent(s)) return false;
      }
      return true;
    case ConstraintFamily::restriction: {
      const auto& r = std::get<RestrictionParams>(params_);
      return s.is_subset_of(r.allowed) && r.base->is_independent(s);
    }
  }
  return false;
}

bool Constraint::can_add(const ItemSet& s, ItemId x) const {
  require(x >= 0 && x < m_, "independence query: item outside ground set");
  if (s.contains(x)) return is_independent(s);
  switch (family()) {
    case ConstraintFamily::cardinality:
      return s.size() + 1 <= static_cast<std::size_t>(std::get<CardinalityParams>(params_).k);
    case ConstraintFamily::partition_matroid: {
      const auto& p = std::get<PartitionMatroidParams>(params_);
      const int part = part_of_[static_cast<std::size_t>(x)];
      int used = 1;
      for (ItemId y : s) used += part_of_[static_cast<std::size_t>(y)] == part;
      return used <= p.caps[static_cast<std::size_t>(part)];
    }
    default:
      return is_independent(s.with(x));
  }
}

Constraint Constraint::restriction(const Constraint& base, ItemSet allowed) {
  require_within(allowed, base.ground_size(), "restrict");
  return Constraint(base.ground_size(), base.declared_p(),
                    RestrictionParams{std::make_shared<const Constraint>(base), std::move(allowed)});
}

Constraint restrict(const Constraint& c, const ItemSet& allowed) {
  return Constraint::restriction(c, allowed);
}

}  // namespace msm
