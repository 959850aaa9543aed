#include "kdsky/dataset.hpp"

#include <cmath>
#include <string>

#include "kdsky/error.hpp"

namespace kdsky {

Dataset::Dataset(std::size_t dim, CoordinateMode mode) : dim_(dim), mode_(mode) {
  if (dim_ == 0) fail(ErrorCode::InvalidArgument, "dataset dimension must be >= 1");
}

Dataset::Dataset(std::size_t dim, std::vector<double> coords, CoordinateMode mode)
    : Dataset(dim, mode) {
  if (coords.size() % dim_ != 0) {
    fail(ErrorCode::DimensionMismatch, "coordinate count " + std::to_string(coords.size()) +
                                           " is not a multiple of dimension " +
                                           std::to_string(dim_));
  }
  for (double v : coords) check_value(v);
  coords_ = std::move(coords);
}

void Dataset::check_value(double v) const {
  if (!std::isfinite(v)) fail(ErrorCode::InvalidArgument, "coordinates must be finite");
  if (mode_ == CoordinateMode::Categorical && (v < 1.0 || std::floor(v) != v)) {
    fail(ErrorCode::InvalidArgument, "categorical coordinates must be integers >= 1");
  }
}

void Dataset::push_back(Point p) {
  if (p.size() != dim_) {
    fail(ErrorCode::DimensionMismatch, "point has dimension " + std::to_string(p.size()) +
                                           ", dataset has " + std::to_string(dim_));
  }
  for (double v : p) check_value(v);
  coords_.insert(coords_.end(), p.begin(), p.end());
}

Dataset Dataset::permuted_rows(std::span<const std::size_t> order) const {
  if (order.size() != size()) fail(ErrorCode::DimensionMismatch, "row permutation size mismatch");
  Dataset out(dim_, mode_);
  out.reserve(size());
  for (std::size_t i : order) {
    if (i >= size()) fail(ErrorCode::OutOfRange, "row permutation index out of range");
    out.coords_.insert(out.coords_.end(), coords_.begin() + i * dim_,
                       coords_.begin() + (i + 1) * dim_);
  }
  return out;
}

Dataset Dataset::permuted_axes(std::span<const std::size_t> axes) const {
  if (axes.size() != dim_) fail(ErrorCode::DimensionMismatch, "axis permutation size mismatch");
  for (std::size_t a : axes) {
    if (a >= dim_) fail(ErrorCode::OutOfRange, "axis permutation index out of range");
  }
  Dataset out(dim_, mode_);
  out.coords_.resize(coords_.size());
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t j = 0; j < dim_; ++j) out.coords_[i * dim_ + j] = coords_[i * dim_ + axes[j]];
  }
  return out;
}

}  // namespace kdsky
