#pragma once

namespace kdsky {

/// Principal branch of the Lambert W function, W(x) e^{W(x)} = x, for x >= 0.
/// Halley iteration; the residual is below 1e-12 * max(1, x).
double lambert_w(double x);

/// log Gamma(x) for x > 0.
double log_gamma(double x);

/// Gamma(a)^p evaluated in log space, p >= 0, a > 0.
double gamma_power(double a, double p);

}  // namespace kdsky
