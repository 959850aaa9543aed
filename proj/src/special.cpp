#include "kdsky/special.hpp"

#include <cmath>
#include <limits>
#include <string>

#include <boost/math/special_functions/gamma.hpp>

#include "kdsky/error.hpp"

namespace kdsky {
namespace {

double initial_guess(double x) {
  if (x <= 0.25) return x * (1.0 - x);
  if (x <= std::exp(1.0)) {
    // Winitzki's uniform approximation.
    const double l = std::log1p(x);
    return l * (1.0 - std::log1p(l) / (2.0 + l));
  }
  const double l1 = std::log(x);
  const double l2 = std::log(l1);
  return l1 - l2 + l2 / l1;
}

}  // namespace

double lambert_w(double x) {
  if (std::isnan(x) || x < 0.0) fail(ErrorCode::OutOfRange, "lambert_w: x must be >= 0");
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return x;

  double w = initial_guess(x);
  for (int iter = 0; iter < 64; ++iter) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    const double wp1 = w + 1.0;
    const double step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
    w -= step;
    if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(w)) break;
  }
  return w;
}

double log_gamma(double x) {
  if (!(x > 0.0)) fail(ErrorCode::OutOfRange, "log_gamma: x must be > 0");
  return boost::math::lgamma(x);
}

double gamma_power(double a, double p) {
  if (!(a > 0.0) || p < 0.0) fail(ErrorCode::OutOfRange, "gamma_power: need a > 0, p >= 0");
  return std::exp(p * boost::math::lgamma(a));
}

}  // namespace kdsky
