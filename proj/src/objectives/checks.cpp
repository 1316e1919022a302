#include <cmath>
#include <cstdio>

#include "msm/objectives.hpp"

namespace msm {
namespace {

using Mask = std::uint64_t;

std::vector<double> value_table(const Objective& f) {
  const int m = f.ground_size();
  std::vector<double> table(std::size_t{1} << m);
  for (Mask s = 0; s < table.size(); ++s) table[s] = f.value(ItemSet::from_mask(s));
  return table;
}

Mask bit(int x) { return Mask{1} << x; }

/// Right-hand side of the general Nemhauser inequality for the pair (S, T):
/// f(S) + sum_{x in T\S} f(x|S) - sum_{x in S\T} f(x | (S u T) - x).
double nemhauser_general_rhs(const std::vector<double>& f, Mask s, Mask t, int m) {
  double rhs = f[s];
  const Mask u = s | t;
  for (int x = 0; x < m; ++x) {
    if ((t & ~s) & bit(x)) rhs += f[s | bit(x)] - f[s];
    if ((s & ~t) & bit(x)) rhs -= f[u] - f[u & ~bit(x)];
  }
  return rhs;
}

double nemhauser_monotone_rhs(const std::vector<double>& f, Mask s, Mask t, int m) {
  double rhs = f[s];
  for (int x = 0; x < m; ++x) {
    if ((t & ~s) & bit(x)) rhs += f[s | bit(x)] - f[s];
  }
  return rhs;
}

void fail(PropertyReport& r, std::string property, Mask s, Mask t, std::optional<ItemId> x,
          double lhs, double rhs) {
  r.passed = false;
  r.property = std::move(property);
  r.s = ItemSet::from_mask(s);
  r.t = ItemSet::from_mask(t);
  r.item = x;
  r.lhs = lhs;
  r.rhs = rhs;
}

/// Random (S, T, x) with S subset T and x not in T, each item of T kept in S
/// with probability 1/2. Returns false when T came out as the full set.
bool sample_chain(Rng& rng, int m, Mask& s, Mask& t, int& x) {
  s = 0;
  t = 0;
  for (int i = 0; i < m; ++i) {
    if (rng.bernoulli(0.5)) {
      t |= bit(i);
      if (rng.bernoulli(0.5)) s |= bit(i);
    }
  }
  const Mask full = m == 64 ? ~Mask{0} : bit(m) - 1;
  if (t == full) return false;
  do {
    x = static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(m)));
  } while (t & bit(x));
  return true;
}

double value_of(const Objective& f, Mask s) { return f.value(ItemSet::from_mask(s)); }

}  // namespace

std::string PropertyReport::describe() const {
  if (passed) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "pass (%s, %llu checks)", exhaustive ? "exhaustive" : "sampled",
                  static_cast<unsigned long long>(checks));
    return buf;
  }
  std::string out = "fail: " + property + " S=" + s.to_string() + " T=" + t.to_string();
  if (item) out += " x=" + std::to_string(*item);
  char buf[96];
  std::snprintf(buf, sizeof buf, " (%.12g > %.12g)", lhs, rhs);
  return out + buf;
}

PropertyReport check_submodular(const Objective& f, std::uint64_t samples, RngSeed seed) {
  PropertyReport r;
  const int m = f.ground_size();
  if (m <= kExhaustiveCheckLimit) {
    const auto table = value_table(f);
    const Mask full = bit(m) - 1;
    for (Mask t = 0; t <= full; ++t) {
      // S ranges over all submasks of T, including T itself.
      for (Mask s = t;; s = (s - 1) & t) {
        for (int x = 0; x < m; ++x) {
          if (t & bit(x)) continue;
          ++r.checks;
          const double small = table[s | bit(x)] - table[s];
          const double large = table[t | bit(x)] - table[t];
          if (large > small + kTolerance) {
            fail(r, "diminishing returns f(x|T) <= f(x|S)", s, t, x, large, small);
            return r;
          }
        }
        if (s == 0) break;
      }
    }
    for (Mask s = 0; s <= full; ++s) {
      for (Mask t = 0; t <= full; ++t) {
        ++r.checks;
        const double rhs = nemhauser_general_rhs(table, s, t, m);
        if (table[t] > rhs + kTolerance) {
          fail(r, "general Nemhauser inequality", s, t, std::nullopt, table[t], rhs);
          return r;
        }
      }
    }
    return r;
  }

  if (m > 63) throw TooLarge("check_submodular: sampling mode supports m <= 63");
  r.exhaustive = false;
  Rng rng(seed);
  for (std::uint64_t k = 0; k < samples; ++k) {
    Mask s = 0;
    Mask t = 0;
    int x = 0;
    if (!sample_chain(rng, m, s, t, x)) continue;
    ++r.checks;
    const double small = value_of(f, s | bit(x)) - value_of(f, s);
    const double large = value_of(f, t | bit(x)) - value_of(f, t);
    if (large > small + kTolerance) {
      fail(r, "diminishing returns f(x|T) <= f(x|S)", s, t, x, large, small);
      return r;
    }
  }
  r.miss_probability = std::pow(0.99, static_cast<double>(r.checks));
  return r;
}

PropertyReport check_monotone(const Objective& f, std::uint64_t samples, RngSeed seed) {
  PropertyReport r;
  const int m = f.ground_size();
  if (m <= kExhaustiveCheckLimit) {
    const auto table = value_table(f);
    const Mask full = bit(m) - 1;
    for (Mask s = 0; s <= full; ++s) {
      for (int x = 0; x < m; ++x) {
        if (s & bit(x)) continue;
        ++r.checks;
        if (table[s] > table[s | bit(x)] + kTolerance) {
          fail(r, "monotonicity f(S) <= f(T)", s, s | bit(x), std::nullopt, table[s],
               table[s | bit(x)]);
          return r;
        }
      }
    }
    for (Mask s = 0; s <= full; ++s) {
      for (Mask t = 0; t <= full; ++t) {
        ++r.checks;
        const double rhs = nemhauser_monotone_rhs(table, s, t, m);
        if (table[t] > rhs + kTolerance) {
          fail(r, "monotone Nemhauser inequality", s, t, std::nullopt, table[t], rhs);
          return r;
        }
      }
    }
    return r;
  }

  if (m > 63) throw TooLarge("check_monotone: sampling mode supports m <= 63");
  r.exhaustive = false;
  Rng rng(seed);
  for (std::uint64_t k = 0; k < samples; ++k) {
    Mask s = 0;
    Mask t = 0;
    int x = 0;
    if (!sample_chain(rng, m, s, t, x)) continue;
    ++r.checks;
    const double before = value_of(f, s);
    const double after = value_of(f, t);
    if (before > after + kTolerance) {
      fail(r, "monotonicity f(S) <= f(T)", s, t, std::nullopt, before, after);
      return r;
    }
  }
  r.miss_probability = std::pow(0.99, static_cast<double>(r.checks));
  return r;
}

}  // namespace msm
