#include "kdsky/exact.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <mpfr.h>

#include "kdsky/error.hpp"

namespace kdsky {
namespace {

mpz_class binomial(std::uint64_t n, std::uint64_t k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

mpz_class power(const mpz_class& base, std::uint64_t e) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

mpz_class factorial(std::uint64_t n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

HighFloat mpz_to_high(const mpz_class& z) { return HighFloat(z.get_str()); }

class MpfrValue {
 public:
  explicit MpfrValue(mpfr_prec_t bits) { mpfr_init2(v_, bits); mpfr_set_zero(v_, 1); }
  ~MpfrValue() { mpfr_clear(v_); }
  MpfrValue(const MpfrValue&) = delete;
  MpfrValue& operator=(const MpfrValue&) = delete;
  mpfr_ptr get() { return v_; }

 private:
  mpfr_t v_;
};

void check_layer_args(std::uint64_t n, int d, std::uint64_t j) {
  if (n < 1) fail(ErrorCode::OutOfRange, "n must be >= 1");
  if (d < 1) fail(ErrorCode::OutOfRange, "d must be >= 1");
  if (j > n - 1) fail(ErrorCode::OutOfRange, "j must lie in [0, n-1]");
}

void check_levels(std::span<const int> levels) {
  if (levels.empty()) fail(ErrorCode::InvalidArgument, "levels are empty");
  for (int u : levels) {
    if (u < 2) fail(ErrorCode::InvalidArgument, "every level count u_j must be >= 2");
  }
}

void check_k(int k, std::size_t d) {
  if (k < 1 || static_cast<std::size_t>(k) > d) {
    fail(ErrorCode::OutOfRange, "k must lie in [1, " + std::to_string(d) + "]");
  }
}

// Nested-sum kernel shared by the rational and floating routes.
template <class T, class FromIndex>
T nested_layer_sum(std::uint64_t n, int d, std::uint64_t j, FromIndex inv) {
  if (d == 1) return T(1);
  std::vector<T> cur(n - j);
  for (std::uint64_t i = j + 1; i <= n; ++i) cur[i - j - 1] = inv(i);
  for (int level = 2; level < d; ++level) {
    T prefix(0);
    for (std::uint64_t i = j + 1; i <= n; ++i) {
      prefix += cur[i - j - 1];
      cur[i - j - 1] = prefix * inv(i);
    }
  }
  T total(0);
  for (const T& c : cur) total += c;
  return total;
}

mpz_class volume_mpz(std::span<const int> x, int k, std::span<const int> levels) {
  // Sum over the coordinate sets S (|S| <= d-k) where the dominator is worse:
  // (prod_{i not in S} x_i - 1) prod_{i in S} (u_i - x_i). Both products are
  // coefficients of generating polynomials in |S|, built one coordinate at a time.
  const std::size_t max_worse = x.size() - static_cast<std::size_t>(k);
  std::vector<mpz_class> with_rest(max_worse + 1, 0), only_worse(max_worse + 1, 0);
  with_rest[0] = 1;
  only_worse[0] = 1;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const long xi = x[i];
    const long wi = levels[i] - x[i];
    for (std::size_t s = max_worse; s > 0; --s) {
      with_rest[s] = with_rest[s] * xi + with_rest[s - 1] * wi;
      only_worse[s] += only_worse[s - 1] * wi;
    }
    with_rest[0] *= xi;
  }
  mpz_class total = 0;
  for (std::size_t s = 0; s <= max_worse; ++s) total += with_rest[s] - only_worse[s];
  return total;
}

bool int_k_dominates(const std::vector<int>& p, const std::vector<int>& q, int k) {
  const std::size_t max_worse = p.size() - static_cast<std::size_t>(k);
  std::size_t worse = 0;
  bool strict = false;
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (p[j] > q[j]) {
      if (++worse > max_worse) return false;
    } else if (p[j] < q[j]) {
      strict = true;
    }
  }
  return strict;
}

}  // namespace

std::string ExactValue::to_rational_string() const { return q_.get_str(); }

std::string ExactValue::to_decimal(int significant) const {
  if (significant < 1) fail(ErrorCode::OutOfRange, "significant digits must be >= 1");
  MpfrValue v(static_cast<mpfr_prec_t>(significant) * 4 + 64);
  mpfr_set_q(v.get(), q_.get_mpq_t(), MPFR_RNDN);
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Rg", significant, v.get());
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

double ExactValue::to_double() const {
  MpfrValue v(64);
  mpfr_set_q(v.get(), q_.get_mpq_t(), MPFR_RNDN);
  return mpfr_get_d(v.get(), MPFR_RNDN);
}

HighFloat ExactValue::to_high() const { return mpz_to_high(q_.get_num()) / mpz_to_high(q_.get_den()); }

ExactValue harmonic(std::uint64_t n, int a) {
  if (n < 1) fail(ErrorCode::OutOfRange, "harmonic: n must be >= 1");
  if (a < 1) fail(ErrorCode::OutOfRange, "harmonic: a must be >= 1");
  mpq_class sum = 0;
  for (std::uint64_t j = 1; j <= n; ++j) {
    mpq_class term(mpz_class(1), power(mpz_class(j), static_cast<std::uint64_t>(a)));
    sum += term;
  }
  return ExactValue(sum);
}

HighFloat skyline_mean_hp(std::uint64_t n, int d) {
  if (n < 1) fail(ErrorCode::OutOfRange, "skyline_mean: n must be >= 1");
  if (d < 1) fail(ErrorCode::OutOfRange, "skyline_mean: d must be >= 1");
  // H[a] = H_n^{(a)}, a = 1..d-1, accumulated from the small terms upwards.
  std::vector<HighFloat> h(static_cast<std::size_t>(d), HighFloat(0));
  for (std::uint64_t i = n; i >= 1; --i) {
    const HighFloat r = HighFloat(1) / HighFloat(i);
    HighFloat p = r;
    for (int a = 1; a < d; ++a) {
      h[a] += p;
      p *= r;
    }
  }
  std::vector<HighFloat> mu(static_cast<std::size_t>(d) + 1, HighFloat(0));
  mu[1] = 1;
  for (int m = 2; m <= d; ++m) {
    HighFloat acc = 0;
    for (int j = 1; j < m; ++j) acc += h[m - j] * mu[j];
    mu[m] = acc / (m - 1);
  }
  return mu[d];
}

double skyline_mean(std::uint64_t n, int d) { return static_cast<double>(skyline_mean_hp(n, d)); }

ExactValue skyline_mean_exact(std::uint64_t n, int d) {
  if (n < 1) fail(ErrorCode::OutOfRange, "skyline_mean: n must be >= 1");
  if (d < 1) fail(ErrorCode::OutOfRange, "skyline_mean: d must be >= 1");
  std::vector<mpq_class> h(static_cast<std::size_t>(d), 0);
  for (int a = 1; a < d; ++a) h[a] = harmonic(n, a).rational();
  std::vector<mpq_class> mu(static_cast<std::size_t>(d) + 1, 0);
  mu[1] = 1;
  for (int m = 2; m <= d; ++m) {
    mpq_class acc = 0;
    for (int j = 1; j < m; ++j) acc += h[m - j] * mu[j];
    mu[m] = acc / (m - 1);
  }
  return ExactValue(mu[d]);
}

ExactValue layer_mean_full_exact(std::uint64_t n, int d, std::uint64_t j) {
  check_layer_args(n, d, j);
  return ExactValue(nested_layer_sum<mpq_class>(
      n, d, j, [](std::uint64_t i) { return mpq_class(mpz_class(1), mpz_class(i)); }));
}

LayerEstimate layer_mean_full(std::uint64_t n, int d, std::uint64_t j) {
  check_layer_args(n, d, j);
  LayerEstimate out;
  if (n <= 200) {
    out.exact = layer_mean_full_exact(n, d, j);
    out.value = out.exact->to_double();
    out.method = "nested-rational";
    return out;
  }
  HighFloat v = nested_layer_sum<HighFloat>(n, d, j, [](std::uint64_t i) {
    return HighFloat(1) / HighFloat(i);
  });
  out.value = static_cast<double>(v);
  out.method = "nested-float50";
  return out;
}

ExactValue layer_mean_full_alternating(std::uint64_t n, int d, std::uint64_t j) {
  check_layer_args(n, d, j);
  const std::uint64_t m = n - 1 - j;
  mpq_class sum = 0;
  for (std::uint64_t l = 0; l <= m; ++l) {
    mpq_class term(binomial(m, l), power(mpz_class(j + 1 + l), static_cast<std::uint64_t>(d)));
    if (l % 2 == 1) sum -= term;
    else sum += term;
  }
  sum *= mpz_class(binomial(n - 1, j) * n);
  return ExactValue(sum);
}

double layer_mean_full_alternating_float(std::uint64_t n, int d, std::uint64_t j, unsigned digits) {
  check_layer_args(n, d, j);
  if (digits < 1) fail(ErrorCode::OutOfRange, "digits must be >= 1");
  const std::uint64_t m = n - 1 - j;
  // The terms reach about 2^m before cancelling, so that many guard bits are needed.
  const auto bits = static_cast<mpfr_prec_t>(std::ceil(digits * 3.3219280948873623) + m + 64);
  MpfrValue sum(bits), term(bits), den(bits);
  for (std::uint64_t l = 0; l <= m; ++l) {
    mpz_class b = binomial(m, l);
    mpfr_set_z(term.get(), b.get_mpz_t(), MPFR_RNDN);
    mpfr_set_d(den.get(), static_cast<double>(j + 1 + l), MPFR_RNDN);
    mpfr_pow_ui(den.get(), den.get(), static_cast<unsigned long>(d), MPFR_RNDN);
    mpfr_div(term.get(), term.get(), den.get(), MPFR_RNDN);
    if (l % 2 == 1) mpfr_sub(sum.get(), sum.get(), term.get(), MPFR_RNDN);
    else mpfr_add(sum.get(), sum.get(), term.get(), MPFR_RNDN);
  }
  mpz_class scale = binomial(n - 1, j) * n;
  mpfr_mul_z(sum.get(), sum.get(), scale.get_mpz_t(), MPFR_RNDN);
  return mpfr_get_d(sum.get(), MPFR_RNDN);
}

double layer_mean_full_asymptotic(std::uint64_t n, int d, std::uint64_t j) {
  check_layer_args(n, d, j);
  const double l = std::log(static_cast<double>(n) / static_cast<double>(j + 1));
  return std::pow(l, d - 1) / std::tgamma(static_cast<double>(d));
}

LayerEstimate layer_mean_one(std::uint64_t n, int d, std::uint64_t j) {
  check_layer_args(n, d, j);
  return layer_mean_full(n, d, n - 1 - j);
}

double layer_mean_one_asymptotic(std::uint64_t n, int d, std::uint64_t j) {
  check_layer_args(n, d, j);
  // binom(j+d-1, j) through log-Gamma to stay finite for large arguments.
  const double lb = std::lgamma(static_cast<double>(j + d)) - std::lgamma(static_cast<double>(j + 1)) -
                    std::lgamma(static_cast<double>(d));
  return std::exp(lb - (d - 1) * std::log(static_cast<double>(n)));
}

std::uint64_t categorical_volume(std::span<const int> x, int k, std::span<const int> levels) {
  check_levels(levels);
  if (x.size() != levels.size()) {
    fail(ErrorCode::DimensionMismatch, "point has " + std::to_string(x.size()) +
                                           " coordinates, grid has " +
                                           std::to_string(levels.size()));
  }
  check_k(k, x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < 1 || x[i] > levels[i]) fail(ErrorCode::OutOfRange, "point is off the grid");
  }
  mpz_class v = volume_mpz(x, k, levels);
  if (!v.fits_ulong_p()) fail(ErrorCode::OutOfRange, "volume exceeds 64 bits");
  return v.get_ui();
}

ExactValue categorical_mean_grid(std::uint64_t n, int k, std::span<const int> levels,
                                 std::uint64_t grid_cap) {
  check_levels(levels);
  check_k(k, levels.size());
  if (n < 1) fail(ErrorCode::OutOfRange, "n must be >= 1");
  mpz_class u = 1;
  for (int l : levels) u *= l;
  if (u > grid_cap) {
    fail(ErrorCode::WorkLimitExceeded,
         "grid has " + u.get_str() + " points, above the cap " + std::to_string(grid_cap));
  }
  // Tally grid points by volume, then sum count * (u - volume)^{n-1}.
  std::map<std::uint64_t, std::uint64_t> by_volume;
  std::vector<int> x(levels.size(), 1);
  while (true) {
    ++by_volume[volume_mpz(x, k, levels).get_ui()];
    std::size_t i = 0;
    while (i < x.size() && x[i] == levels[i]) x[i++] = 1;
    if (i == x.size()) break;
    ++x[i];
  }
  mpz_class sum = 0;
  for (const auto& [vol, count] : by_volume) sum += mpz_class(count) * power(u - vol, n - 1);
  mpq_class result(sum * n, power(u, n));
  return ExactValue(result);
}

ExactValue categorical_mean(std::uint64_t n, int k, std::span<const int> levels,
                            std::uint64_t grid_cap) {
  check_levels(levels);
  check_k(k, levels.size());
  if (n < 1) fail(ErrorCode::OutOfRange, "n must be >= 1");
  const bool two_level = std::all_of(levels.begin(), levels.end(), [](int u) { return u == 2; });
  if (!two_level) return categorical_mean_grid(n, k, levels, grid_cap);

  // All u_j = 2: a point with l coordinates equal to 2 has volume
  // (2^l - 1) sum_{j <= d-k} binom(d-l, j).
  const std::uint64_t d = levels.size();
  const mpz_class u = power(mpz_class(2), d);
  mpz_class sum = 0;
  for (std::uint64_t l = 0; l <= d; ++l) {
    mpz_class s = 0;
    for (std::uint64_t j = 0; j + k <= d && j <= d - l; ++j) s += binomial(d - l, j);
    mpz_class vol = (power(mpz_class(2), l) - 1) * s;
    sum += binomial(d, l) * power(u - vol, n - 1);
  }
  return ExactValue(mpq_class(sum * n, power(u, n)));
}

double categorical_mean_weighted(std::uint64_t n, int k, const WeightedSupport& support) {
  support.validate();
  check_k(k, support.dim());
  if (n < 1) fail(ErrorCode::OutOfRange, "n must be >= 1");
  double total = 0.0;
  for (std::size_t a = 0; a < support.points.size(); ++a) {
    double dominated = 0.0;
    for (std::size_t b = 0; b < support.points.size(); ++b) {
      if (b != a && int_k_dominates(support.points[b], support.points[a], k)) {
        dominated += support.weights[b];
      }
    }
    total += support.weights[a] * std::pow(std::max(0.0, 1.0 - dominated), static_cast<double>(n - 1));
  }
  return static_cast<double>(n) * total;
}

double categorical_limit(const WeightedSupport& support, int k) {
  support.validate();
  check_k(k, support.dim());
  double q = 0.0;
  for (std::size_t a = 0; a < support.points.size(); ++a) {
    bool dominated = false;
    for (std::size_t b = 0; b < support.points.size() && !dominated; ++b) {
      dominated = b != a && support.weights[b] > 0.0 &&
                  int_k_dominates(support.points[b], support.points[a], k);
    }
    if (!dominated) q += support.weights[a];
  }
  return q;
}

ExactValue categorical_limit_uniform(std::span<const int> levels) {
  check_levels(levels);
  mpz_class u = 1;
  for (int l : levels) u *= l;
  return ExactValue(mpq_class(mpz_class(1), u));
}

ExactValue cycle_mean(std::uint64_t n, int d) {
  if (d < 2) fail(ErrorCode::OutOfRange, "cycle_mean: d must be >= 2");
  if (n < static_cast<std::uint64_t>(d)) fail(ErrorCode::OutOfRange, "cycle_mean: need n >= d");
  const auto du = static_cast<std::uint64_t>(d);
  mpq_class r(binomial(n, du), power(factorial(du), du - 2) * d);
  return ExactValue(r);
}

ExactValue beta(int d, int k) {
  if (d < 1) fail(ErrorCode::OutOfRange, "beta: d must be >= 1");
  check_k(k, static_cast<std::size_t>(d));
  mpz_class s = 0;
  for (int j = 0; j <= d - k; ++j) s += binomial(static_cast<std::uint64_t>(d), static_cast<std::uint64_t>(j));
  return ExactValue(mpq_class(s, power(mpz_class(2), static_cast<std::uint64_t>(d))));
}

double in_quadrature(std::uint64_t n, double x) {
  if (n < 1) fail(ErrorCode::OutOfRange, "I_n: n must be >= 1");
  if (!(x > 0.0 && x <= 1.0)) fail(ErrorCode::OutOfRange, "I_n: x must lie in (0, 1]");
  if (x == 1.0) return 0.0;
  if (n == 1) return 1.0 - x;
  // Substituting v = x/t turns the integral into int_x^1 (1 - x/v)^{n-1} dv,
  // whose integrand lies in [0, 1]. Integrate in s = log v over pieces of
  // width log 4: short pieces in v make the adaptive rule refine to full depth.
  // When (n-1) x is small the integrand is close to 1, so integrate 1 - f and
  // subtract from 1 - x.
  const double nm1 = static_cast<double>(n - 1);
  const bool complement = nm1 * x < 1.0;
  auto h = [x, nm1, complement](double s) {
    const double v = std::exp(s);
    const double l = nm1 * std::log1p(-x / v);
    return (complement ? -std::expm1(l) : std::exp(l)) * v;
  };
  using Rule = boost::math::quadrature::gauss_kronrod<double, 61>;
  const double step = std::log(4.0);
  double total = 0.0;
  double a = std::log(x);
  while (a < 0.0) {
    const double b = std::min(0.0, a + step);
    total += Rule::integrate(h, a, b, 15, 1e-14);
    a = b;
  }
  return complement ? (1.0 - x) - total : total;
}

SeriesResult in_series(std::uint64_t n, double x) {
  if (n < 1) fail(ErrorCode::OutOfRange, "I_n: n must be >= 1");
  if (!(x > 0.0 && x <= 1.0)) fail(ErrorCode::OutOfRange, "I_n: x must lie in (0, 1]");
  SeriesResult out;
  if (x == 1.0) {
    out.converged = true;
    return out;
  }
  const double nd = static_cast<double>(n);
  const double log_first = nd * std::log1p(-x) - std::log(nd * x);
  // Ratio of consecutive terms: -(j+2)(1-x) / ((n+j+1) x).
  double ratio_sum = 1.0;
  double rel = 1.0;
  int j = 0;
  for (;; ++j) {
    const double step = (j + 2.0) * (1.0 - x) / ((nd + j + 1.0) * x);
    const double next = rel * step;
    if (step >= 1.0 || next <= 1e-17 * std::abs(ratio_sum) || j > 100000) {
      out.smallest_term = next;
      break;
    }
    rel = next;
    ratio_sum += (j % 2 == 0) ? -rel : rel;
  }
  out.terms = j + 1;
  const double scale = std::exp(log_first);
  out.value = scale * ratio_sum;
  out.converged = out.smallest_term <= 1e-15 * std::abs(ratio_sum);
  out.smallest_term *= scale;
  return out;
}

double in_integral(std::uint64_t n, double x) {
  if (static_cast<double>(n) * x >= 10.0) {
    SeriesResult s = in_series(n, x);
    if (s.converged) return s.value;
  }
  return in_quadrature(n, x);
}

double lower_bound(std::uint64_t n, int d, int k) {
  if (n < 1) fail(ErrorCode::OutOfRange, "lower_bound: n must be >= 1");
  if (d < 2 || k < 1 || k > d - 1) fail(ErrorCode::OutOfRange, "lower_bound: need 1 <= k <= d-1");
  return static_cast<double>(n) * in_integral(n, beta(d, k).to_double());
}

}  // namespace kdsky
