#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace kdsky {

/// 50 significant decimal digits; used wherever alternating or long sums
/// would lose accuracy in double.
using HighFloat = boost::multiprecision::cpp_bin_float_50;

}  // namespace kdsky
