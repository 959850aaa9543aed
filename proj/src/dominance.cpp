#include "kdsky/dominance.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "kdsky/error.hpp"

namespace kdsky {
namespace {

void check_k(int k, std::size_t d) {
  if (k < 1 || static_cast<std::size_t>(k) > d) {
    fail(ErrorCode::OutOfRange,
         "k = " + std::to_string(k) + " outside [1, " + std::to_string(d) + "]");
  }
}

IndexSet exhaustive(const Dataset& data, std::size_t max_worse) {
  const std::size_t n = data.size();
  const std::size_t d = data.dim();
  const double* base = data.coords().data();
  IndexSet out;
  for (std::size_t i = 0; i < n; ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < n && !dominated; ++j) {
      if (j != i) dominated = detail::k_dominates_raw(base + j * d, base + i * d, d, max_worse);
    }
    if (!dominated) out.push_back(i);
  }
  return out;
}

// Phase 1 keeps a pool of points not yet seen to be dominated; any point that
// leaves the pool (or never enters it) was k-dominated by some point, so the
// pool is a superset of the answer. Because k-dominance is not transitive the
// pool may still hold dominated points: phase 2 checks candidates against each
// other and phase 3 against the points eliminated in phase 1.
IndexSet three_phase(const Dataset& data, std::size_t max_worse) {
  const std::size_t n = data.size();
  const std::size_t d = data.dim();
  const double* base = data.coords().data();
  auto dom = [&](std::size_t a, std::size_t b) {
    return detail::k_dominates_raw(base + a * d, base + b * d, d, max_worse);
  };

  std::vector<double> sums(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double* p = base + i * d;
    sums[i] = std::accumulate(p, p + d, 0.0);
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return sums[a] < sums[b]; });

  std::vector<std::size_t> pool;
  for (std::size_t p : order) {
    bool dominated = false;
    std::size_t keep = 0;
    for (std::size_t idx = 0; idx < pool.size(); ++idx) {
      std::size_t q = pool[idx];
      if (!dominated && dom(q, p)) dominated = true;
      if (dom(p, q)) continue;
      pool[keep++] = q;
    }
    pool.resize(keep);
    if (!dominated) pool.push_back(p);
  }

  std::vector<char> in_pool(n, 0);
  for (std::size_t c : pool) in_pool[c] = 1;

  IndexSet survivors;
  for (std::size_t c : pool) {
    bool dominated = false;
    for (std::size_t other : pool) {
      if (other != c && dom(other, c)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) survivors.push_back(c);
  }

  IndexSet out;
  for (std::size_t c : survivors) {
    bool dominated = false;
    for (std::size_t j = 0; j < n && !dominated; ++j) {
      if (!in_pool[j]) dominated = dom(j, c);
    }
    if (!dominated) out.push_back(c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

bool k_dominates(Point p, Point q, int k) {
  if (p.size() != q.size()) {
    fail(ErrorCode::DimensionMismatch, "points have dimensions " + std::to_string(p.size()) +
                                           " and " + std::to_string(q.size()));
  }
  check_k(k, p.size());
  return detail::k_dominates_raw(p.data(), q.data(), p.size(), p.size() - k);
}

IndexSet skyline(const Dataset& data) {
  return k_dominant_skyline(data, static_cast<int>(data.dim()));
}

IndexSet k_dominant_skyline(const Dataset& data, int k, SkylineAlgorithm algorithm) {
  check_k(k, data.dim());
  const std::size_t max_worse = data.dim() - static_cast<std::size_t>(k);
  return algorithm == SkylineAlgorithm::Exhaustive ? exhaustive(data, max_worse)
                                                   : three_phase(data, max_worse);
}

std::vector<std::size_t> DominatorHistogram::cells() const {
  std::vector<std::size_t> out(counts_.size(), 0);
  for (std::size_t c : counts_) ++out[c];
  return out;
}

std::size_t DominatorHistogram::cumulative(std::size_t m) const {
  return static_cast<std::size_t>(
      std::count_if(counts_.begin(), counts_.end(), [m](std::size_t c) { return c <= m; }));
}

DominatorHistogram dominator_histogram(const Dataset& data, int k) {
  check_k(k, data.dim());
  const std::size_t n = data.size();
  const std::size_t d = data.dim();
  const std::size_t max_worse = d - static_cast<std::size_t>(k);
  const double* base = data.coords().data();
  std::vector<std::size_t> counts(n, 0);
  // One pass per unordered pair decides both directions.
  for (std::size_t i = 0; i < n; ++i) {
    const double* p = base + i * d;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double* q = base + j * d;
      std::size_t greater = 0;
      std::size_t less = 0;
      for (std::size_t c = 0; c < d; ++c) {
        greater += p[c] > q[c];
        less += p[c] < q[c];
      }
      if (greater <= max_worse && less > 0) ++counts[j];
      if (less <= max_worse && greater > 0) ++counts[i];
    }
  }
  return DominatorHistogram(k, std::move(counts));
}

namespace {

struct CycleSearch {
  const std::vector<std::vector<std::size_t>>& out_edges;
  const std::vector<char>& adjacency;
  std::size_t n;
  std::size_t length;
  std::uint64_t work_limit;
  std::uint64_t work = 0;
  std::uint64_t found = 0;
  std::vector<char> on_path;

  void tick() {
    if (++work > work_limit) {
      fail(ErrorCode::WorkLimitExceeded,
           "cycle enumeration exceeded the work limit of " + std::to_string(work_limit) +
               " edge checks");
    }
  }

  // Paths start at their smallest vertex so every rotation is visited once.
  void extend(std::size_t start, std::size_t tail, std::size_t depth) {
    if (depth == length) {
      tick();
      if (adjacency[tail * n + start]) ++found;
      return;
    }
    for (std::size_t next : out_edges[tail]) {
      tick();
      if (next <= start || on_path[next]) continue;
      on_path[next] = 1;
      extend(start, next, depth + 1);
      on_path[next] = 0;
    }
  }
};

}  // namespace

std::uint64_t count_dominant_cycles(const Dataset& data, int length, int k,
                                    std::uint64_t work_limit) {
  check_k(k, data.dim());
  const std::size_t n = data.size();
  if (length < 2 || static_cast<std::size_t>(length) > n) {
    fail(ErrorCode::OutOfRange, "cycle length " + std::to_string(length) + " outside [2, n=" +
                                    std::to_string(n) + "]");
  }
  const std::size_t d = data.dim();
  const std::size_t max_worse = d - static_cast<std::size_t>(k);
  const double* base = data.coords().data();
  std::vector<char> adjacency(n * n, 0);
  std::vector<std::vector<std::size_t>> out_edges(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && detail::k_dominates_raw(base + i * d, base + j * d, d, max_worse)) {
        adjacency[i * n + j] = 1;
        out_edges[i].push_back(j);
      }
    }
  }

  CycleSearch search{out_edges, adjacency, n, static_cast<std::size_t>(length), work_limit,
                     0, 0, std::vector<char>(n, 0)};
  for (std::size_t s = 0; s < n; ++s) {
    search.on_path[s] = 1;
    search.extend(s, s, 1);
    search.on_path[s] = 0;
  }
  return search.found;
}

}  // namespace kdsky
