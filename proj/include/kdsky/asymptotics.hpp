#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "kdsky/precision.hpp"

namespace kdsky {

enum class FormulaId {
  PhiD,
  GD,
  PhiMinusG,
  CriticalEstimate,
  MD1,
  MDkUpper,
  SimplexSkyline,
  CloudCoeff,
  CycleMeanAsym,
  FdLeading,
};

FormulaId parse_formula(std::string_view name);
std::string_view formula_name(FormulaId id);

/// phi_d(n) = Gamma(1/(d-1))^d n^{-1/(d-1)} / (d-1), the leading term of
/// E[M_{d,d-1}(n)] for uniform points in the hypercube.
double phi_d(double n, int d);

/// g_d(n) = sum_{1<=j<=d-2} binom(d,j) (-1)^{j-1} (d-1-j)^{j-1}
///          Gamma(1/(d-1-j))^{d-j} n^{1/(d-1) - 1/(d-1-j)}.
/// This is the correction on the scale of n^{1/(d-1)} E[M_{d,d-1}(n)].
HighFloat g_d_hp(double n, int d);
double g_d(double n, int d);

/// phi_d(n) - n^{-1/(d-1)} g_d(n), evaluated as one alternating sum.
double phi_minus_g(double n, int d);

/// rho = d / (e n^{1/d^2}).
double rho(double n, int d);
/// phi_d(n) / (2 - e^{-rho}).
double critical_estimate(double n, int d);

/// E[M_{d,1}(n)] = n^{1-d}.
double m_d1_mean(double n, int d);
/// Order of magnitude n^{1-d/k}; a bound, not an estimate.
double m_dk_upper(double n, int d, int k);

/// Expected skyline size of n uniform points in the negative-orthant simplex:
/// n sum_{j<d} binom(d-1,j) (-1)^j Gamma(n) Gamma((j+1)/d) / Gamma(n+(j+1)/d).
double simplex_skyline_mean(double n, int d);
/// Gamma(1/d) n^{1-1/d}.
double simplex_skyline_leading(double n, int d);

/// c_{d,j} = Gamma(1/(d-1))^d / (d-1) * binom(j + 1/(d-1), j).
double cloud_coefficient(int d, int j);

/// binom(n,d) d!^{2-d} / d with binom(n,d) ~ n^d/d!.
double cycle_mean_asym(double n, int d);

/// sigma_m(l): sum over compositions (l_1..l_{m+1}) of l into positive parts
/// of the multinomial l!/(l_1!...l_{m+1}!).
mpz_class sigma_m_compositions(int m, int l);
/// sum_{1<=r<=m+1} binom(m+1,r) (-1)^{m+1-r} r^l.
mpz_class sigma_m_inclusion_exclusion(int m, int l);
/// Both routes; throws if they disagree.
mpz_class sigma_m(int m, int l);

/// Closed form of the m-th iterate of the integral operator applied to g_d:
/// sum_{m<l<=d-2} binom(d,l) (-1)^{l-1} (d-1-l)^{l-1} Gamma(1/(d-1-l))^{d-l}
///     n^{1/(d-1)-1/(d-1-l)} sigma_m(l).
double phi_operator_power_gd(int m, double n, int d);

/// Family h(N, d') indexed by dimension, e.g. g_d or f_d.
using DimensionFamily = std::function<double(double, int)>;

/// sum_{1<=j<=d-2} binom(d,j) (-1)^j n^{1/(d-1)-1/(d-1-j)} / (j-1)!
///   int_1^inf t^{-1-1/(d-1-j)} (log t)^{j-1} h(n t, d-j) dt,
/// by adaptive quadrature after t = e^s.
double phi_operator_apply(double n, int d, const DimensionFamily& h);

/// f_d(n) from its recurrence f_d = g_d + (integral operator)[f], f_2(n) =
/// 2e^{-n} - e^{-2n}, by nested quadrature. Supported for 2 <= d <= 5.
double f_d_numeric(double n, int d);
/// Leading terms: 3n^{-1/2}, 4 pi^{3/2} n^{-1/6},
/// 80 pi^4 / (9 Gamma(2/3)^4) n^{-1/12} - 60 pi^{3/2} n^{-1/4}; f_2 exact.
double f_d_leading(double n, int d);

/// Range indicators for the two regimes of E[M_{d,d-1}(n)].
struct RangeFlags {
  /// 2 log n / d^2 - W(2 log n); the moderate-d estimate needs this large.
  double moderate_margin = 0.0;
  bool moderate = false;
  /// (log n)^{1/3} < d <= 2 sqrt(log n / W(4 log n / (e log 2)^2)).
  double critical_lower = 0.0;
  double critical_upper = 0.0;
  bool critical = false;
};

RangeFlags range_flags(double n, int d);

struct PredictionParams {
  double n = 0.0;
  int d = 0;
  int k = 0;
  int j = 0;
  int m = 0;
};

struct PredictionReport {
  FormulaId id = FormulaId::PhiD;
  PredictionParams params;
  double value = 0.0;
  std::string validity_note;
  RangeFlags ranges;
  std::optional<double> rho;
  std::optional<double> leading;
  bool is_bound = false;
};

PredictionReport predict(FormulaId id, const PredictionParams& params);

}  // namespace kdsky
