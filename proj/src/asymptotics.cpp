#include "kdsky/asymptotics.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/binomial.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "kdsky/error.hpp"
#include "kdsky/special.hpp"

namespace kdsky {
namespace {

void require_n(double n) {
  if (!(n >= 1.0) || !std::isfinite(n)) fail(ErrorCode::OutOfRange, "n must be finite and >= 1");
}

void require_d(int d, int lo) {
  if (d < lo) fail(ErrorCode::OutOfRange, "d must be >= " + std::to_string(lo));
}

// binom(d,j) (d-1-j)^{j-1} Gamma(1/(d-1-j))^{d-j} n^{1/(d-1)-1/(d-1-j)}, unsigned.
HighFloat correction_term(double n, int d, int j) {
  using boost::multiprecision::exp;
  using boost::multiprecision::log;
  const int c = d - 1 - j;
  const HighFloat log_n = log(HighFloat(n));
  const HighFloat inv_c = HighFloat(1) / c;
  HighFloat lg = boost::math::lgamma(inv_c) * (d - j);
  lg += (j - 1) * log(HighFloat(c));
  lg += (HighFloat(1) / (d - 1) - inv_c) * log_n;
  return boost::math::binomial_coefficient<double>(static_cast<unsigned>(d), static_cast<unsigned>(j)) *
         exp(lg);
}

double f2(double n) { return 2.0 * std::exp(-n) - std::exp(-2.0 * n); }

}  // namespace

FormulaId parse_formula(std::string_view name) {
  static constexpr std::pair<std::string_view, FormulaId> kNames[] = {
      {"phi_d", FormulaId::PhiD},
      {"g_d", FormulaId::GD},
      {"phi_minus_g", FormulaId::PhiMinusG},
      {"critical_estimate", FormulaId::CriticalEstimate},
      {"m_d1", FormulaId::MD1},
      {"m_dk_upper", FormulaId::MDkUpper},
      {"simplex_skyline", FormulaId::SimplexSkyline},
      {"cloud_coeff", FormulaId::CloudCoeff},
      {"cycle_mean_asym", FormulaId::CycleMeanAsym},
      {"f_d_leading", FormulaId::FdLeading},
  };
  for (const auto& [key, id] : kNames) {
    if (key == name) return id;
  }
  fail(ErrorCode::UnknownId, "unknown formula id '" + std::string(name) + "'");
}

std::string_view formula_name(FormulaId id) {
  switch (id) {
    case FormulaId::PhiD: return "phi_d";
    case FormulaId::GD: return "g_d";
    case FormulaId::PhiMinusG: return "phi_minus_g";
    case FormulaId::CriticalEstimate: return "critical_estimate";
    case FormulaId::MD1: return "m_d1";
    case FormulaId::MDkUpper: return "m_dk_upper";
    case FormulaId::SimplexSkyline: return "simplex_skyline";
    case FormulaId::CloudCoeff: return "cloud_coeff";
    case FormulaId::CycleMeanAsym: return "cycle_mean_asym";
    case FormulaId::FdLeading: return "f_d_leading";
  }
  return "?";
}

double phi_d(double n, int d) {
  require_n(n);
  require_d(d, 2);
  const double a = 1.0 / (d - 1);
  return std::exp(d * log_gamma(a) - a * std::log(n)) / (d - 1);
}

HighFloat g_d_hp(double n, int d) {
  require_n(n);
  require_d(d, 3);
  HighFloat sum = 0;
  for (int j = 1; j <= d - 2; ++j) {
    HighFloat t = correction_term(n, d, j);
    if (j % 2 == 1) sum += t;
    else sum -= t;
  }
  return sum;
}

double g_d(double n, int d) { return static_cast<double>(g_d_hp(n, d)); }

double phi_minus_g(double n, int d) {
  require_n(n);
  require_d(d, 3);
  HighFloat sum = 0;
  for (int j = 0; j <= d - 2; ++j) {
    HighFloat t = correction_term(n, d, j);
    if (j % 2 == 0) sum += t;
    else sum -= t;
  }
  using boost::multiprecision::exp;
  using boost::multiprecision::log;
  return static_cast<double>(sum * exp(-log(HighFloat(n)) / (d - 1)));
}

double rho(double n, int d) {
  require_n(n);
  require_d(d, 1);
  return d / (std::numbers::e * std::exp(std::log(n) / (static_cast<double>(d) * d)));
}

double critical_estimate(double n, int d) {
  require_d(d, 3);
  return phi_d(n, d) / (2.0 - std::exp(-rho(n, d)));
}

double m_d1_mean(double n, int d) {
  require_n(n);
  require_d(d, 1);
  return std::pow(n, 1.0 - d);
}

double m_dk_upper(double n, int d, int k) {
  require_n(n);
  require_d(d, 1);
  if (k < 1 || k > d) fail(ErrorCode::OutOfRange, "k must lie in [1, d]");
  return std::pow(n, 1.0 - static_cast<double>(d) / k);
}

double simplex_skyline_mean(double n, int d) {
  require_n(n);
  require_d(d, 1);
  HighFloat sum = 0;
  const HighFloat hn(n);
  for (int j = 0; j < d; ++j) {
    const HighFloat a = HighFloat(j + 1) / d;
    HighFloat t = boost::math::binomial_coefficient<double>(static_cast<unsigned>(d - 1),
                                                            static_cast<unsigned>(j)) *
                  boost::math::tgamma(a) * boost::math::tgamma_delta_ratio(hn, a);
    if (j % 2 == 0) sum += t;
    else sum -= t;
  }
  return static_cast<double>(hn * sum);
}

double simplex_skyline_leading(double n, int d) {
  require_n(n);
  require_d(d, 1);
  return std::tgamma(1.0 / d) * std::pow(n, 1.0 - 1.0 / d);
}

double cloud_coefficient(int d, int j) {
  require_d(d, 3);
  if (j < 0) fail(ErrorCode::OutOfRange, "j must be >= 0");
  const double a = 1.0 / (d - 1);
  // binom(j+a, j) = Gamma(j+a+1) / (Gamma(j+1) Gamma(a+1)).
  const double log_binom = log_gamma(j + a + 1.0) - log_gamma(j + 1.0) - log_gamma(a + 1.0);
  return std::exp(d * log_gamma(a) + log_binom) / (d - 1);
}

double cycle_mean_asym(double n, int d) {
  require_n(n);
  require_d(d, 2);
  const double log_fact = log_gamma(d + 1.0);
  return std::exp(d * std::log(n) + (1 - d) * log_fact - std::log(static_cast<double>(d)));
}

mpz_class sigma_m_compositions(int m, int l) {
  if (m < 0 || l < 0) fail(ErrorCode::OutOfRange, "sigma_m: need m >= 0, l >= 0");
  // ways[p][r] = sum over compositions of r into p positive parts of
  // r!/(r_1!...r_p!), built by choosing the size of the last part.
  const int parts = m + 1;
  std::vector<std::vector<mpz_class>> ways(parts + 1, std::vector<mpz_class>(l + 1, 0));
  ways[0][0] = 1;
  for (int p = 1; p <= parts; ++p) {
    for (int r = p; r <= l; ++r) {
      for (int last = 1; last <= r - (p - 1); ++last) {
        mpz_class choose;
        mpz_bin_uiui(choose.get_mpz_t(), static_cast<unsigned long>(r), static_cast<unsigned long>(last));
        ways[p][r] += choose * ways[p - 1][r - last];
      }
    }
  }
  return ways[parts][l];
}

mpz_class sigma_m_inclusion_exclusion(int m, int l) {
  if (m < 0 || l < 0) fail(ErrorCode::OutOfRange, "sigma_m: need m >= 0, l >= 0");
  // The r = 0 term is 0^l: invisible for l >= 1, and it makes l = 0 give 0
  // like the composition count.
  mpz_class sum = 0;
  for (int r = 0; r <= m + 1; ++r) {
    mpz_class choose, pw;
    mpz_bin_uiui(choose.get_mpz_t(), static_cast<unsigned long>(m + 1), static_cast<unsigned long>(r));
    mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(r), static_cast<unsigned long>(l));
    if ((m + 1 - r) % 2 == 0) sum += choose * pw;
    else sum -= choose * pw;
  }
  return sum;
}

mpz_class sigma_m(int m, int l) {
  mpz_class a = sigma_m_compositions(m, l);
  if (a != sigma_m_inclusion_exclusion(m, l)) {
    fail(ErrorCode::InvalidArgument, "sigma_m routes disagree at m=" + std::to_string(m) +
                                         ", l=" + std::to_string(l));
  }
  return a;
}

double phi_operator_power_gd(int m, double n, int d) {
  require_n(n);
  require_d(d, 3);
  if (m < 0) fail(ErrorCode::OutOfRange, "m must be >= 0");
  HighFloat sum = 0;
  for (int l = m + 1; l <= d - 2; ++l) {
    HighFloat t = correction_term(n, d, l) * HighFloat(sigma_m(m, l).get_str());
    if (l % 2 == 1) sum += t;
    else sum -= t;
  }
  return static_cast<double>(sum);
}

double phi_operator_apply(double n, int d, const DimensionFamily& h) {
  require_n(n);
  require_d(d, 3);
  using Rule = boost::math::quadrature::gauss_kronrod<double, 31>;
  const double log_n = std::log(n);
  double total = 0.0;
  for (int j = 1; j <= d - 2; ++j) {
    const double a = 1.0 / (d - 1 - j);
    // Cut the s-range where e^{-a s} s^{j-1} has fallen below ~e^{-40}.
    double s_max = 40.0 / a;
    for (int it = 0; it < 8; ++it) s_max = (40.0 + (j - 1) * std::log(std::max(s_max, 1.0))) / a;
    auto integrand = [&](double s) {
      return std::exp(-a * s) * std::pow(s, j - 1) * h(n * std::exp(s), d - j);
    };
    const double integral = Rule::integrate(integrand, 0.0, s_max, 12, 1e-11);
    const double scale = boost::math::binomial_coefficient<double>(static_cast<unsigned>(d),
                                                                   static_cast<unsigned>(j)) *
                         std::exp((1.0 / (d - 1) - a) * log_n - std::lgamma(static_cast<double>(j)));
    total += (j % 2 == 0 ? 1.0 : -1.0) * scale * integral;
  }
  return total;
}

double f_d_numeric(double n, int d) {
  require_n(n);
  if (d < 2) fail(ErrorCode::OutOfRange, "f_d: d must be >= 2");
  if (d > 5) fail(ErrorCode::Unsupported, "f_d_numeric supports d <= 5 only");
  if (d == 2) return f2(n);
  DimensionFamily self = [](double nn, int dd) { return f_d_numeric(nn, dd); };
  return g_d(n, d) + phi_operator_apply(n, d, self);
}

double f_d_leading(double n, int d) {
  require_n(n);
  constexpr double pi = std::numbers::pi;
  switch (d) {
    case 2: return f2(n);
    case 3: return 3.0 / std::sqrt(n);
    case 4: return 4.0 * std::pow(pi, 1.5) * std::pow(n, -1.0 / 6.0);
    case 5:
      return 80.0 * std::pow(pi, 4) / (9.0 * std::pow(std::tgamma(2.0 / 3.0), 4)) *
                 std::pow(n, -1.0 / 12.0) -
             60.0 * std::pow(pi, 1.5) * std::pow(n, -0.25);
    default: fail(ErrorCode::Unsupported, "f_d leading terms are tabulated for 2 <= d <= 5");
  }
}

RangeFlags range_flags(double n, int d) {
  require_n(n);
  RangeFlags r;
  if (n < 3.0) return r;
  const double log_n = std::log(n);
  r.moderate_margin = 2.0 * log_n / (static_cast<double>(d) * d) - lambert_w(2.0 * log_n);
  r.moderate = d >= 3 && r.moderate_margin > 0.0;
  r.critical_lower = std::cbrt(log_n);
  const double el2 = std::numbers::e * std::numbers::ln2;
  r.critical_upper = 2.0 * std::sqrt(log_n / lambert_w(4.0 * log_n / (el2 * el2)));
  r.critical = d >= 3 && d > r.critical_lower && d <= r.critical_upper;
  return r;
}

PredictionReport predict(FormulaId id, const PredictionParams& p) {
  PredictionReport out;
  out.id = id;
  out.params = p;
  out.ranges = range_flags(p.n, std::max(p.d, 1));
  const std::string ranges =
      std::string(" [moderate range ") + (out.ranges.moderate ? "holds" : "fails") +
      ", critical range " + (out.ranges.critical ? "holds" : "fails") + "]";
  switch (id) {
    case FormulaId::PhiD:
      out.value = phi_d(p.n, p.d);
      out.validity_note = "leading term of E[M_{d,d-1}(n)]; relative error O(d n^{-1/((d-1)(d-2))}) "
                          "when 2 log n/d^2 - W(2 log n) is large" + ranges;
      break;
    case FormulaId::GD:
      out.value = g_d(p.n, p.d);
      out.validity_note = "first correction on the n^{1/(d-1)} scale; d >= 3" + ranges;
      break;
    case FormulaId::PhiMinusG:
      out.value = phi_minus_g(p.n, p.d);
      out.leading = phi_d(p.n, p.d);
      out.validity_note = "numerical predictor of E[M_{d,d-1}(n)] for moderate n and d" + ranges;
      break;
    case FormulaId::CriticalEstimate:
      out.value = critical_estimate(p.n, p.d);
      out.rho = rho(p.n, p.d);
      out.leading = phi_d(p.n, p.d);
      out.validity_note = "main term only; the O(rho(rho+1)e^{-rho}(1/d + log n/d^3)) remainder "
                          "is not quantified; intended for the critical range" + ranges;
      break;
    case FormulaId::MD1:
      out.value = m_d1_mean(p.n, p.d);
      out.validity_note = "exact for every n >= 1, d >= 1";
      break;
    case FormulaId::MDkUpper:
      out.value = m_dk_upper(p.n, p.d, p.k);
      out.is_bound = true;
      out.validity_note = "order of magnitude of E[M_{d,k}(n)] up to constants; a bound, not an estimate";
      break;
    case FormulaId::SimplexSkyline:
      out.value = simplex_skyline_mean(p.n, p.d);
      out.leading = simplex_skyline_leading(p.n, p.d);
      out.validity_note = "exact finite-n value; leading term Gamma(1/d) n^{1-1/d}";
      break;
    case FormulaId::CloudCoeff: {
      const double c = cloud_coefficient(p.d, p.j);
      out.value = c;
      out.leading = c * std::pow(p.n, -1.0 / (p.d - 1));
      out.validity_note = "E[L_{d,d-1}(n,j)] ~ c_{d,j} n^{-1/(d-1)} for fixed j as n grows" + ranges;
      break;
    }
    case FormulaId::CycleMeanAsym:
      out.value = cycle_mean_asym(p.n, p.d);
      out.validity_note = "n^d d!^{1-d}/d, the large-n form of binom(n,d) d!^{2-d}/d for fixed d";
      break;
    case FormulaId::FdLeading:
      out.value = f_d_leading(p.n, p.d);
      out.validity_note = "leading terms of f_d(n) for 2 <= d <= 5 as n grows";
      break;
  }
  if (!std::isfinite(out.value)) fail(ErrorCode::OutOfRange, "prediction is not finite for these parameters");
  return out;
}

}  // namespace kdsky
