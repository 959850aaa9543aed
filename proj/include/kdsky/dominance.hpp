#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "kdsky/dataset.hpp"

namespace kdsky {

/// Zero-based point indices in ascending order.
using IndexSet = std::vector<std::size_t>;

enum class SkylineAlgorithm {
  Exhaustive,  ///< O(n^2 d) reference check of every ordered pair.
  ThreePhase,  ///< sum-ordered candidate pool, pairwise verification, cycle removal.
};

/// True iff p is <= q in at least k coordinates and strictly smaller in at
/// least one of them. Smaller is better; comparisons are exact.
bool k_dominates(Point p, Point q, int k);

namespace detail {

inline bool k_dominates_raw(const double* p, const double* q, std::size_t d,
                            std::size_t max_worse) noexcept {
  std::size_t worse = 0;
  bool strict = false;
  for (std::size_t j = 0; j < d; ++j) {
    if (p[j] > q[j]) {
      if (++worse > max_worse) return false;
    } else if (p[j] < q[j]) {
      strict = true;
    }
  }
  return strict;
}

}  // namespace detail

/// Full-dominance skyline; identical to k_dominant_skyline(data, data.dim()).
IndexSet skyline(const Dataset& data);

IndexSet k_dominant_skyline(const Dataset& data, int k,
                            SkylineAlgorithm algorithm = SkylineAlgorithm::ThreePhase);

/// Per-point count of other points that k-dominate it.
class DominatorHistogram {
 public:
  DominatorHistogram(int k, std::vector<std::size_t> counts) : k_(k), counts_(std::move(counts)) {}

  int k() const noexcept { return k_; }
  std::size_t points() const noexcept { return counts_.size(); }
  const std::vector<std::size_t>& counts() const noexcept { return counts_; }

  /// cells()[j] = number of points dominated by exactly j others, j in [0, n-1].
  std::vector<std::size_t> cells() const;
  /// Number of points dominated by at most m others.
  std::size_t cumulative(std::size_t m) const;

 private:
  int k_;
  std::vector<std::size_t> counts_;
};

DominatorHistogram dominator_histogram(const Dataset& data, int k);

inline constexpr std::uint64_t kDefaultCycleWorkLimit = 1'000'000'000ULL;

/// Counts directed k-dominance cycles through `length` distinct points. Each
/// cycle is counted once per (point set, orientation); rotations coincide.
/// Throws WorkLimitExceeded once more than `work_limit` edge checks are needed.
std::uint64_t count_dominant_cycles(const Dataset& data, int length, int k,
                                    std::uint64_t work_limit = kDefaultCycleWorkLimit);

}  // namespace kdsky
