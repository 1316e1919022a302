#include <algorithm>
#include <limits>

#include "msm/constraints.hpp"

namespace msm {
namespace {

void extend(const Constraint& c, const std::vector<ItemId>& pool, std::size_t start, ItemSet& current,
            const std::function<void(const ItemSet&)>& visit) {
  visit(current);
  for (std::size_t i = start; i < pool.size(); ++i) {
    const ItemId x = pool[i];
    if (!c.can_add(current, x)) continue;
    current.insert(x);
    extend(c, pool, i + 1, current, visit);
    current.erase(x);
  }
}

}  // namespace

void for_each_independent_set(const Constraint& c, const ItemSet& over,
                              const std::function<void(const ItemSet&)>& visit) {
  if (over.size() > static_cast<std::size_t>(kEnumerationLimit)) {
    throw TooLarge("enumerate_independent_sets: more than " + std::to_string(kEnumerationLimit) +
                   " candidate items");
  }
  require_within(over, c.ground_size(), "enumerate_independent_sets");
  ItemSet current;
  if (!c.is_independent(current)) return;
  extend(c, over.items(), 0, current, visit);
}

std::vector<ItemSet> enumerate_independent_sets(const Constraint& c, const ItemSet& over) {
  std::vector<ItemSet> out;
  for_each_independent_set(c, over, [&](const ItemSet& s) { out.push_back(s); });
  return out;
}

PSystemReport verify_p_system(const Constraint& c) {
  const int m = c.ground_size();
  if (m > kPSystemLimit) {
    throw TooLarge("verify_p_system: ground set larger than " + std::to_string(kPSystemLimit));
  }
  using Mask = std::uint32_t;
  const Mask full = (Mask{1} << m) - 1;
  std::vector<char> independent(std::size_t{full} + 1);
  for (Mask s = 0; s <= full; ++s) independent[s] = c.is_independent(ItemSet::from_mask(s));

  PSystemReport report;
  report.declared_p = c.declared_p();
  for (Mask s = 0; s <= full; ++s) {
    int lower = std::numeric_limits<int>::max();
    int upper = 0;
    for (Mask t = s;; t = (t - 1) & s) {
      if (independent[t]) {
        bool maximal = true;
        for (Mask rest = s & ~t; rest != 0; rest &= rest - 1) {
          if (independent[t | (rest & (~rest + 1))]) {
            maximal = false;
            break;
          }
        }
        if (maximal) {
          const int size = __builtin_popcount(t);
          lower = std::min(lower, size);
          upper = std::max(upper, size);
        }
      }
      if (t == 0) break;
    }
    if (lower == 0 || lower == std::numeric_limits<int>::max()) continue;  // only basis is empty
    const Rational ratio{upper, lower};
    if (report.measured_p < ratio) {
      report.measured_p = ratio;
      report.witness = ItemSet::from_mask(s);
    }
  }
  report.within_declared = !(Rational{report.declared_p, 1} < report.measured_p);
  return report;
}

}  // namespace msm
