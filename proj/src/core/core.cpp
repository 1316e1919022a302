#include "msm/core.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

namespace msm {

ItemSet::ItemSet(std::initializer_list<ItemId> ids) : ItemSet(std::vector<ItemId>(ids)) {}

ItemSet::ItemSet(std::vector<ItemId> ids) : ids_(std::move(ids)) {
  std::sort(ids_.begin(), ids_.end());
  if (std::adjacent_find(ids_.begin(), ids_.end()) != ids_.end()) {
    throw InvalidArgument("item set contains a duplicate id");
  }
  if (!ids_.empty() && ids_.front() < 0) {
    throw InvalidArgument("item set contains a negative id");
  }
}

ItemSet ItemSet::range(int m) {
  ItemSet s;
  s.ids_.resize(static_cast<std::size_t>(std::max(m, 0)));
  for (int i = 0; i < m; ++i) s.ids_[static_cast<std::size_t>(i)] = i;
  return s;
}

ItemSet ItemSet::from_mask(std::uint64_t mask) {
  ItemSet s;
  for (ItemId b = 0; mask != 0; ++b, mask >>= 1) {
    if (mask & 1U) s.ids_.push_back(b);
  }
  return s;
}

bool ItemSet::contains(ItemId x) const {
  return std::binary_search(ids_.begin(), ids_.end(), x);
}

bool ItemSet::insert(ItemId x) {
  if (x < 0) throw InvalidArgument("negative item id");
  auto it = std::lower_bound(ids_.begin(), ids_.end(), x);
  if (it != ids_.end() && *it == x) return false;
  ids_.insert(it, x);
  return true;
}

bool ItemSet::erase(ItemId x) {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), x);
  if (it == ids_.end() || *it != x) return false;
  ids_.erase(it);
  return true;
}

ItemSet ItemSet::with(ItemId x) const {
  ItemSet s = *this;
  s.insert(x);
  return s;
}

ItemSet ItemSet::without(ItemId x) const {
  ItemSet s = *this;
  s.erase(x);
  return s;
}

bool ItemSet::is_subset_of(const ItemSet& other) const {
  return std::includes(other.ids_.begin(), other.ids_.end(), ids_.begin(), ids_.end());
}

ItemSet ItemSet::union_with(const ItemSet& other) const {
  ItemSet s;
  std::set_union(ids_.begin(), ids_.end(), other.ids_.begin(), other.ids_.end(),
                 std::back_inserter(s.ids_));
  return s;
}

ItemSet ItemSet::intersect(const ItemSet& other) const {
  ItemSet s;
  std::set_intersection(ids_.begin(), ids_.end(), other.ids_.begin(), other.ids_.end(),
                        std::back_inserter(s.ids_));
  return s;
}

ItemSet ItemSet::minus(const ItemSet& other) const {
  ItemSet s;
  std::set_difference(ids_.begin(), ids_.end(), other.ids_.begin(), other.ids_.end(),
                      std::back_inserter(s.ids_));
  return s;
}

std::uint64_t ItemSet::to_mask() const {
  std::uint64_t mask = 0;
  for (ItemId x : ids_) {
    if (x >= 64) throw TooLarge("item id does not fit a 64-bit mask");
    mask |= std::uint64_t{1} << x;
  }
  return mask;
}

std::string ItemSet::to_string() const {
  std::string out = "{";
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(ids_[i]);
  }
  out += '}';
  return out;
}

std::size_t ItemSetHash::operator()(const ItemSet& s) const noexcept {
  std::uint64_t h = 0x243F6A8885A308D3ULL ^ s.size();
  for (ItemId x : s) h = splitmix64(h ^ static_cast<std::uint64_t>(x));
  return static_cast<std::size_t>(h);
}

void require_within(const ItemSet& s, int m, const char* what) {
  if (!s.empty() && s.back() >= m) {
    throw InvalidArgument(std::string(what) + ": item " + std::to_string(s.back()) +
                          " outside ground set of size " + std::to_string(m));
  }
}

// ---------------------------------------------------------------------------

std::vector<std::vector<int>> Graph::adjacency() const {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(vertices));
  for (auto [u, v] : edges) {
    adj[static_cast<std::size_t>(u)].push_back(v);
    if (u != v) adj[static_cast<std::size_t>(v)].push_back(u);
  }
  return adj;
}

std::vector<int> Graph::degrees() const {
  std::vector<int> deg(static_cast<std::size_t>(vertices), 0);
  for (auto [u, v] : edges) {
    ++deg[static_cast<std::size_t>(u)];
    ++deg[static_cast<std::size_t>(v)];
  }
  return deg;
}

bool Graph::is_simple() const {
  std::set<Edge> seen;
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= vertices || v >= vertices || u == v) return false;
    if (!seen.insert(std::minmax(u, v)).second) return false;
  }
  return true;
}

Graph parse_edge_list(const std::string& text, int vertices) {
  Graph g;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    long long u = 0;
    long long v = 0;
    if (!(ls >> u)) continue;  // blank line
    std::string rest;
    if (!(ls >> v) || (ls >> rest) || u < 0 || v < 0) {
      throw InvalidArgument("edge list line " + std::to_string(line_no) + ": expected 'u v'");
    }
    g.edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
    vertices = std::max<int>(vertices, static_cast<int>(std::max(u, v)) + 1);
  }
  g.vertices = vertices;
  return g;
}

std::string format_edge_list(const Graph& g) {
  std::string out;
  for (auto [u, v] : g.edges) {
    out += std::to_string(u);
    out += ' ';
    out += std::to_string(v);
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------

std::uint64_t splitmix64(std::uint64_t x) {
  std::uint64_t z = x + 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

RngSeed derive_seed(RngSeed parent, std::uint64_t stream) {
  return RngSeed{splitmix64(splitmix64(parent.value) ^ splitmix64(stream + 0x632BE59BD9B4E019ULL))};
}

std::uint64_t Rng::uniform_below(std::uint64_t bound) {
  if (bound == 0) throw InvalidArgument("uniform_below: bound must be positive");
  // Reject the low residue class so every value in [0, bound) is equally likely.
  const std::uint64_t threshold = (0 - bound) % bound;
  std::uint64_t x = 0;
  do {
    x = engine_();
  } while (x < threshold);
  return x % bound;
}

double Rng::uniform01() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::vector<int> fisher_yates_permutation(int n, RngSeed seed) {
  if (n < 1) throw InvalidArgument("permutation size must be at least 1");
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
  Rng rng(seed);
  for (int i = n - 1; i > 0; --i) {
    const auto j = static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(i) + 1));
    std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
  }
  return perm;
}

// ---------------------------------------------------------------------------

unsigned default_workers() { return std::max(1U, std::thread::hardware_concurrency()); }

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn,
                  unsigned workers) {
  workers = std::max(1U, std::min<unsigned>(workers, static_cast<unsigned>(count)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace msm
