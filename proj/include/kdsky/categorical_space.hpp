#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace kdsky {

/// Finite support {a_1..a_m} with a probability weight per point.
struct WeightedSupport {
  std::vector<std::vector<int>> points;
  std::vector<double> weights;

  std::size_t dim() const { return points.empty() ? 0 : points.front().size(); }
  /// Weights nonnegative and summing to 1 within 1e-12; points distinct,
  /// equal-dimensional and with levels >= 1.
  void validate() const;
};

/// Product grid {1..u_1} x ... x {1..u_d}, uniform unless a weighted support
/// is attached.
struct CategoricalSpace {
  std::vector<int> levels;
  std::optional<WeightedSupport> support;

  std::size_t dim() const { return support ? support->dim() : levels.size(); }
  /// u = prod u_j, saturating at UINT64_MAX.
  std::uint64_t grid_size() const;
  void validate() const;
};

}  // namespace kdsky
