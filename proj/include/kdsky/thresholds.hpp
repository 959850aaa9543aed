#pragma once

#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace kdsky {

enum class ThresholdKind { D0, D1 };

struct ThresholdResult {
  ThresholdKind kind = ThresholdKind::D0;
  mpz_class n;
  int value = 0;
  /// d0: x = sqrt(2 log n / W(2 log n)); d1: log n / W(log n / e) + 1/2.
  double x = 0.0;
  /// Fractional part of x, consistent with the exact integer value.
  double fractional = 0.0;
  std::optional<double> phi0;
  std::optional<double> phi1;
  /// a_1 .. a_{i+1} where a_i <= n < a_{i+1}; d1 = i and d0 = i+1.
  std::vector<mpz_class> boundaries;
};

/// a_1 = 2 and a_i = i^{i^2} for i = 2..imax.
std::vector<mpz_class> d0_boundaries(int imax);

/// a_i = floor(((i-1/2)/e)^{i-1/2}) + 1, i = 1..imax. Evaluated with MPFR at a
/// precision carrying 20 guard digits, and again at twice that precision;
/// throws if the two floors differ.
std::vector<mpz_class> d1_boundaries(int imax);

/// d0(n) = floor(sqrt(2 log n / W(2 log n))) + 1 for n >= 2, decided by exact
/// comparison with the boundaries i^{i^2}.
ThresholdResult threshold_d0(const mpz_class& n);
/// d1(n) = floor(log n / W(log n / e) + 1/2) for n >= 3, decided against the
/// exact boundary integers.
ThresholdResult threshold_d1(const mpz_class& n);

/// Parses a nonnegative decimal integer; throws ParseError otherwise.
mpz_class parse_big_integer(const std::string& text);

/// e^{-{x}} x^{-2{x}} and e^{1-{x}} x^{2-2{x}}.
double phi0(double x);
double phi1(double x);

/// Position of the fractional part tau_n inside the critical window of d1,
/// with W = W(log n / e).
double upsilon(double t, const mpz_class& n);

}  // namespace kdsky
