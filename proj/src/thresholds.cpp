#include "kdsky/thresholds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <mpfr.h>

#include "kdsky/error.hpp"
#include "kdsky/special.hpp"

namespace kdsky {
namespace {

double log_big(const mpz_class& n) {
  long exp2 = 0;
  const double mant = mpz_get_d_2exp(&exp2, n.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp2) * std::numbers::ln2;
}

mpz_class d1_boundary(int i, mpfr_prec_t bits) {
  mpfr_t y, e, r;
  mpfr_inits2(bits, y, e, r, static_cast<mpfr_ptr>(nullptr));
  mpfr_set_si(y, 2 * i - 1, MPFR_RNDN);
  mpfr_div_ui(y, y, 2, MPFR_RNDN);
  mpfr_set_ui(e, 1, MPFR_RNDN);
  mpfr_exp(e, e, MPFR_RNDN);
  mpfr_div(r, y, e, MPFR_RNDN);
  mpfr_pow(r, r, y, MPFR_RNDN);
  mpz_class out;
  mpfr_get_z(out.get_mpz_t(), r, MPFR_RNDD);
  mpfr_clears(y, e, r, static_cast<mpfr_ptr>(nullptr));
  return out + 1;
}

double frac_consistent(double x, int floor_value) {
  return std::clamp(x - floor_value, 0.0, std::nextafter(1.0, 0.0));
}

}  // namespace

mpz_class parse_big_integer(const std::string& text) {
  if (text.empty() || !std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    fail(ErrorCode::ParseError, "not a nonnegative decimal integer: '" + text + "'");
  }
  return mpz_class(text, 10);
}

std::vector<mpz_class> d0_boundaries(int imax) {
  if (imax < 1) fail(ErrorCode::OutOfRange, "imax must be >= 1");
  std::vector<mpz_class> out;
  for (int i = 1; i <= imax; ++i) {
    mpz_class a;
    if (i == 1) {
      // 1^1 would admit n = 1, where log n / W(2 log n) is undefined.
      out.emplace_back(2);
      continue;
    }
    mpz_ui_pow_ui(a.get_mpz_t(), static_cast<unsigned long>(i), static_cast<unsigned long>(i) * i);
    out.push_back(a);
  }
  return out;
}

std::vector<mpz_class> d1_boundaries(int imax) {
  if (imax < 1) fail(ErrorCode::OutOfRange, "imax must be >= 1");
  std::vector<mpz_class> out;
  for (int i = 1; i <= imax; ++i) {
    const double y = i - 0.5;
    const double digits = std::max(1.0, y * std::log10(y / std::numbers::e));
    const auto bits = static_cast<mpfr_prec_t>(std::ceil((digits + 20.0) * 3.3219280948873623)) + 16;
    mpz_class a = d1_boundary(i, bits);
    if (a != d1_boundary(i, 2 * bits)) {
      fail(ErrorCode::InvalidArgument, "boundary a_" + std::to_string(i) + " unstable under precision doubling");
    }
    out.push_back(a);
  }
  return out;
}

ThresholdResult threshold_d0(const mpz_class& n) {
  if (n < 2) fail(ErrorCode::OutOfRange, "threshold_d0: n must be >= 2");
  ThresholdResult r;
  r.kind = ThresholdKind::D0;
  r.n = n;
  // Largest i with i^{i^2} <= n.
  int i = 1;
  for (;;) {
    mpz_class next;
    mpz_ui_pow_ui(next.get_mpz_t(), static_cast<unsigned long>(i + 1),
                  static_cast<unsigned long>(i + 1) * (i + 1));
    if (next > n) break;
    ++i;
  }
  r.value = i + 1;
  r.boundaries = d0_boundaries(i + 1);
  const double l2 = 2.0 * log_big(n);
  r.x = std::sqrt(l2 / lambert_w(l2));
  r.fractional = frac_consistent(r.x, i);
  r.phi0 = phi0(static_cast<double>(i) + r.fractional);
  r.phi1 = phi1(static_cast<double>(i) + r.fractional);
  return r;
}

ThresholdResult threshold_d1(const mpz_class& n) {
  if (n < 3) fail(ErrorCode::OutOfRange, "threshold_d1: n must be >= 3");
  ThresholdResult r;
  r.kind = ThresholdKind::D1;
  r.n = n;
  int i = 1;
  std::vector<mpz_class> bounds = d1_boundaries(8);
  for (;;) {
    if (static_cast<int>(bounds.size()) < i + 1) bounds = d1_boundaries(2 * (i + 1));
    if (bounds[i] > n) break;  // bounds[i] is a_{i+1}
    ++i;
  }
  r.value = i;
  bounds.resize(i + 1);
  r.boundaries = std::move(bounds);
  const double l = log_big(n);
  r.x = l / lambert_w(l / std::numbers::e) + 0.5;
  r.fractional = frac_consistent(r.x, i);
  return r;
}

double phi0(double x) {
  if (!(x > 0.0)) fail(ErrorCode::OutOfRange, "phi0: x must be > 0");
  const double f = x - std::floor(x);
  return std::exp(-f - 2.0 * f * std::log(x));
}

double phi1(double x) {
  if (!(x > 0.0)) fail(ErrorCode::OutOfRange, "phi1: x must be > 0");
  const double f = x - std::floor(x);
  return std::exp(1.0 - f + (2.0 - 2.0 * f) * std::log(x));
}

double upsilon(double t, const mpz_class& n) {
  if (n < 3) fail(ErrorCode::OutOfRange, "upsilon: n must be >= 3");
  const double l = log_big(n);
  const double w = lambert_w(l / std::numbers::e);
  const double l2pi = std::log(2.0 * std::numbers::pi);
  const double poly = 12.0 * w * w * w + (35.0 - 12.0 * l2pi) * w * w + (34.0 - 24.0 * l2pi) * w + 23.0 +
                      l2pi * l2pi;
  const double wp1 = w + 1.0;
  return (1.0 + 0.5 * l2pi) / wp1 + w / (l * wp1) * (t - poly / (24.0 * wp1 * wp1 * wp1));
}

}  // namespace kdsky
