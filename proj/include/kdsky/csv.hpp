#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "kdsky/dataset.hpp"

namespace kdsky {

/// Reads a dataset from CSV: header `x1,...,xd`, one point per row. Errors
/// carry the 1-based line number of the offending row.
Dataset read_dataset_csv(std::istream& in, CoordinateMode mode = CoordinateMode::Continuous);
Dataset read_dataset_csv(const std::string& path, CoordinateMode mode = CoordinateMode::Continuous);

void write_dataset_csv(std::ostream& out, const Dataset& data);
void write_dataset_csv(const std::string& path, const Dataset& data);

/// Shortest round-trip decimal rendering, independent of the global locale.
std::string format_number(double v);

/// Fixed-point rendering with `decimals` digits after the dot, locale-free.
std::string format_fixed(double v, int decimals);

}  // namespace kdsky
