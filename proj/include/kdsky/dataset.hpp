#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace kdsky {

enum class CoordinateMode { Continuous, Categorical };

/// A point is a read-only view into a dataset row.
using Point = std::span<const double>;

/// n points of equal dimension stored row-major. Categorical datasets hold
/// integer levels >= 1 encoded as doubles so that the dominance kernels are
/// shared between modes.
class Dataset {
 public:
  explicit Dataset(std::size_t dim = 1, CoordinateMode mode = CoordinateMode::Continuous);
  Dataset(std::size_t dim, std::vector<double> coords,
          CoordinateMode mode = CoordinateMode::Continuous);

  std::size_t size() const noexcept { return dim_ == 0 ? 0 : coords_.size() / dim_; }
  std::size_t dim() const noexcept { return dim_; }
  bool empty() const noexcept { return coords_.empty(); }
  CoordinateMode mode() const noexcept { return mode_; }

  Point point(std::size_t i) const { return {coords_.data() + i * dim_, dim_}; }
  Point operator[](std::size_t i) const { return point(i); }
  std::span<const double> coords() const noexcept { return coords_; }

  void reserve(std::size_t n) { coords_.reserve(n * dim_); }
  void push_back(Point p);

  /// Same points, rows reordered: result[i] = (*this)[order[i]].
  Dataset permuted_rows(std::span<const std::size_t> order) const;
  /// Same points with coordinates reordered by `axes` on every row.
  Dataset permuted_axes(std::span<const std::size_t> axes) const;

  friend bool operator==(const Dataset&, const Dataset&) = default;

 private:
  void check_value(double v) const;

  std::size_t dim_;
  CoordinateMode mode_;
  std::vector<double> coords_;
};

}  // namespace kdsky
