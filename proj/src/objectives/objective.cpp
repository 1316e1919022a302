#include <algorithm>
#include <cmath>
#include <set>

#include "msm/objectives.hpp"

namespace msm {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require(bool ok, const std::string& message) {
  if (!ok) throw InvalidArgument(message);
}

bool finite_non_negative(double w) { return std::isfinite(w) && w >= 0.0; }

void validate_simple_edges(const std::vector<Edge>& edges, int m, const char* family) {
  std::set<Edge> seen;
  for (auto [u, v] : edges) {
    require(u >= 0 && v >= 0 && u < m && v < m,
            std::string(family) + ": edge endpoint outside [0, m)");
    require(u != v, std::string(family) + ": self-loop");
    require(seen.insert(std::minmax(u, v)).second, std::string(family) + ": repeated edge");
  }
}

std::vector<char> membership(const ItemSet& s, int m) {
  std::vector<char> in(static_cast<std::size_t>(m), 0);
  for (ItemId x : s) in[static_cast<std::size_t>(x)] = 1;
  return in;
}

double example1_value(const Example1Params& p, const ItemSet& s) {
  if (p.agent == 1) {
    double v = 0.0;
    for (ItemId x : s) {
      if (x < 2 * p.n) v += 1.0;
    }
    return v;
  }
  const int i = p.agent;
  const int partner = p.partner(i);
  bool has_prev = false;
  bool has_partner = false;
  double v = 0.0;
  for (ItemId x : s) {
    const int j = x + 1;
    if (j == i - 1) {
      v += 1.0 + p.eps[0];
      has_prev = true;
    } else if (j == i) {
      v += 1.0 + p.eps[1];
    } else if (j == partner) {
      v += 1.0 + p.eps[2];
      has_partner = true;
    } else if (j >= p.first_bonus()) {
      v += 1.0 + p.eps[3];
    }
  }
  if (has_prev && has_partner) v -= p.eps[2];
  return v;
}

}  // namespace

std::string_view family_name(const ObjectiveSpec& spec) {
  return std::visit(Overloaded{
                        [](const AdditiveParams&) { return std::string_view("additive"); },
                        [](const CoverageParams&) { return std::string_view("coverage"); },
                        [](const InfluenceParams&) { return std::string_view("influence"); },
                        [](const CutParams&) { return std::string_view("cut"); },
                        [](const Example1Params&) { return std::string_view("example1"); },
                    },
                    spec);
}

bool family_is_monotone(const ObjectiveSpec& spec) {
  return !std::holds_alternative<CutParams>(spec);
}

Objective::Objective(ObjectiveSpec spec, int m) : spec_(std::move(spec)), m_(m) {
  validate();
  if (const auto* p = std::get_if<InfluenceParams>(&spec_)) {
    adjacency_ = Graph{m_, p->edges}.adjacency();
  } else if (const auto* c = std::get_if<CutParams>(&spec_)) {
    adjacency_.assign(static_cast<std::size_t>(m_), {});
    adjacent_weight_.assign(static_cast<std::size_t>(m_), {});
    for (std::size_t e = 0; e < c->edges.size(); ++e) {
      const auto [u, v] = c->edges[e];
      const double w = c->weights.empty() ? 1.0 : c->weights[e];
      adjacency_[static_cast<std::size_t>(u)].push_back(v);
      adjacent_weight_[static_cast<std::size_t>(u)].push_back(w);
      adjacency_[static_cast<std::size_t>(v)].push_back(u);
      adjacent_weight_[static_cast<std::size_t>(v)].push_back(w);
    }
  }
}

Objective::Objective(const Objective& other)
    : spec_(other.spec_),
      m_(other.m_),
      adjacency_(other.adjacency_),
      adjacent_weight_(other.adjacent_weight_),
      queries_(other.queries()) {
  if (other.memo_) memo_ = std::make_unique<Memo>();
}

Objective& Objective::operator=(const Objective& other) {
  if (this != &other) {
    Objective copy(other);
    *this = std::move(copy);
  }
  return *this;
}

Objective::Objective(Objective&& other) noexcept
    : spec_(std::move(other.spec_)),
      m_(other.m_),
      adjacency_(std::move(other.adjacency_)),
      adjacent_weight_(std::move(other.adjacent_weight_)),
      queries_(other.queries()),
      memo_(std::move(other.memo_)) {}

Objective& Objective::operator=(Objective&& other) noexcept {
  spec_ = std::move(other.spec_);
  m_ = other.m_;
  adjacency_ = std::move(other.adjacency_);
  adjacent_weight_ = std::move(other.adjacent_weight_);
  queries_.store(other.queries(), std::memory_order_relaxed);
  memo_ = std::move(other.memo_);
  return *this;
}

Objective::~Objective() = default;

void Objective::set_memoization(bool on) {
  if (on && !memo_) memo_ = std::make_unique<Memo>();
  if (!on) memo_.reset();
}

void Objective::validate() const {
  require(m_ >= 1, "objective: ground set must be non-empty");
  const auto m = static_cast<std::size_t>(m_);
  std::visit(
      Overloaded{
          [&](const AdditiveParams& p) {
            require(p.weights.size() == m, "additive: weights length must equal m");
            for (double w : p.weights) require(finite_non_negative(w), "additive: negative weight");
          },
          [&](const CoverageParams& p) {
            require(p.universe >= 0, "coverage: negative universe size");
            require(p.covers.size() == m, "coverage: covers length must equal m");
            require(p.weights.size() == static_cast<std::size_t>(p.universe),
                    "coverage: weights length must equal universe size");
            for (double w : p.weights) require(finite_non_negative(w), "coverage: negative weight");
            for (const auto& c : p.covers) {
              for (int e : c) require(e >= 0 && e < p.universe, "coverage: element outside universe");
            }
          },
          [&](const InfluenceParams& p) {
            validate_simple_edges(p.edges, m_, "influence");
            require(p.q >= 0.0 && p.q <= 1.0, "influence: q must lie in [0, 1]");
          },
          [&](const CutParams& p) {
            validate_simple_edges(p.edges, m_, "cut");
            require(p.weights.empty() || p.weights.size() == p.edges.size(),
                    "cut: weights length must equal edge count");
            for (double w : p.weights) require(finite_non_negative(w), "cut: negative weight");
          },
          [&](const Example1Params& p) {
            require(p.n >= 1, "example1: n must be positive");
            require(p.agent >= 1 && p.agent <= p.n, "example1: agent must lie in [1, n]");
            require(m_ == p.ground_size(), "example1: ground set must have n^2+1 items");
            require(p.eps[0] < 1.0 && p.eps[3] > 0.0 && p.eps[0] > p.eps[1] && p.eps[1] > p.eps[2] &&
                        p.eps[2] > p.eps[3],
                    "example1: need 1 > eps1 > eps2 > eps3 > eps4 > 0");
          },
      },
      spec_);
}

double Objective::evaluate(const ItemSet& s) const {
  return std::visit(
      Overloaded{
          [&](const AdditiveParams& p) {
            double v = 0.0;
            for (ItemId x : s) v += p.weights[static_cast<std::size_t>(x)];
            return v;
          },
          [&](const CoverageParams& p) {
            std::vector<char> covered(static_cast<std::size_t>(p.universe), 0);
            double v = 0.0;
            for (ItemId x : s) {
              for (int e : p.covers[static_cast<std::size_t>(x)]) {
                auto& c = covered[static_cast<std::size_t>(e)];
                if (!c) {
                  c = 1;
                  v += p.weights[static_cast<std::size_t>(e)];
                }
              }
            }
            return v;
          },
          [&](const InfluenceParams& p) {
            const auto in = membership(s, m_);
            std::vector<int> seeded_neighbours(static_cast<std::size_t>(m_), 0);
            for (ItemId x : s) {
              for (int v : adjacency_[static_cast<std::size_t>(x)]) {
                ++seeded_neighbours[static_cast<std::size_t>(v)];
              }
            }
            double v = static_cast<double>(s.size());
            for (int u = 0; u < m_; ++u) {
              const auto k = seeded_neighbours[static_cast<std::size_t>(u)];
              if (!in[static_cast<std::size_t>(u)] && k > 0) v += 1.0 - std::pow(1.0 - p.q, k);
            }
            return v;
          },
          [&](const CutParams& p) {
            const auto in = membership(s, m_);
            double v = 0.0;
            for (std::size_t e = 0; e < p.edges.size(); ++e) {
              const auto [a, b] = p.edges[e];
              if (in[static_cast<std::size_t>(a)] != in[static_cast<std::size_t>(b)]) {
                v += p.weights.empty() ? 1.0 : p.weights[e];
              }
            }
            return v;
          },
          [&](const Example1Params& p) { return example1_value(p, s); },
      },
      spec_);
}

double Objective::fast_marginal(ItemId x, const ItemSet& s) const {
  return std::visit(
      Overloaded{
          [&](const AdditiveParams& p) { return p.weights[static_cast<std::size_t>(x)]; },
          [&](const CoverageParams& p) {
            std::vector<char> covered(static_cast<std::size_t>(p.universe), 0);
            for (ItemId y : s) {
              for (int e : p.covers[static_cast<std::size_t>(y)]) covered[static_cast<std::size_t>(e)] = 1;
            }
            double gain = 0.0;
            for (int e : p.covers[static_cast<std::size_t>(x)]) {
              auto& c = covered[static_cast<std::size_t>(e)];
              if (!c) {
                c = 1;
                gain += p.weights[static_cast<std::size_t>(e)];
              }
            }
            return gain;
          },
          [&](const InfluenceParams& p) {
            const auto in = membership(s, m_);
            auto seeded = [&](int u) {
              int k = 0;
              for (int v : adjacency_[static_cast<std::size_t>(u)]) k += in[static_cast<std::size_t>(v)];
              return k;
            };
            // x turns from a possibly-influenced user into a seed...
            double gain = std::pow(1.0 - p.q, seeded(x));
            // ...and every non-seed neighbour gains one seeded neighbour.
            for (int v : adjacency_[static_cast<std::size_t>(x)]) {
              if (!in[static_cast<std::size_t>(v)]) gain += p.q * std::pow(1.0 - p.q, seeded(v));
            }
            return gain;
          },
          [&](const CutParams&) {
            const auto& nbrs = adjacency_[static_cast<std::size_t>(x)];
            const auto& ws = adjacent_weight_[static_cast<std::size_t>(x)];
            double gain = 0.0;
            for (std::size_t k = 0; k < nbrs.size(); ++k) {
              gain += s.contains(nbrs[k]) ? -ws[k] : ws[k];
            }
            return gain;
          },
          [&](const Example1Params& p) { return example1_value(p, s.with(x)) - example1_value(p, s); },
      },
      spec_);
}

double Objective::value(const ItemSet& s) const {
  require_within(s, m_, "objective value");
  queries_.fetch_add(1, std::memory_order_relaxed);
  if (memo_) {
    {
      std::lock_guard lock(memo_->mutex);
      if (auto it = memo_->values.find(s); it != memo_->values.end()) return it->second;
    }
    const double v = evaluate(s);
    std::lock_guard lock(memo_->mutex);
    memo_->values.emplace(s, v);
    return v;
  }
  return evaluate(s);
}

double Objective::marginal(ItemId x, const ItemSet& s) const {
  require_within(s, m_, "objective marginal");
  require(x >= 0 && x < m_, "objective marginal: item outside ground set");
  require(!s.contains(x), "objective marginal: item already in set");
  queries_.fetch_add(2, std::memory_order_relaxed);
  return fast_marginal(x, s);
}

}  // namespace msm
