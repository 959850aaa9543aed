#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include <gmpxx.h>

#include "kdsky/categorical_space.hpp"
#include "kdsky/precision.hpp"

namespace kdsky {

/// Arbitrary-precision rational. Nothing is rounded until rendered.
class ExactValue {
 public:
  ExactValue() = default;
  explicit ExactValue(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  const mpq_class& rational() const noexcept { return q_; }
  /// "p/q", or "p" when the denominator is 1.
  std::string to_rational_string() const;
  /// Decimal rendering rounded to `significant` digits (default 15).
  std::string to_decimal(int significant = 15) const;
  double to_double() const;
  HighFloat to_high() const;

  friend bool operator==(const ExactValue& a, const ExactValue& b) { return a.q_ == b.q_; }

 private:
  mpq_class q_;
};

/// Generalized harmonic number H_n^{(a)} = sum_{j=1}^n j^{-a}.
ExactValue harmonic(std::uint64_t n, int a);

/// Expected full skyline size of n uniform points in [0,1]^d via
/// mu_{n,d} = (d-1)^{-1} sum_{j<d} H_n^{(d-j)} mu_{n,j}, mu_{n,1} = 1.
HighFloat skyline_mean_hp(std::uint64_t n, int d);
double skyline_mean(std::uint64_t n, int d);
/// Same recurrence in rational arithmetic; cost grows with n, meant for n <= a few hundred.
ExactValue skyline_mean_exact(std::uint64_t n, int d);

/// E[L_{d,d}(n,j)], the expected number of points dominated by exactly j
/// others. `method` names the route taken.
struct LayerEstimate {
  double value = 0.0;
  std::string method;
  bool approximate = false;
  std::optional<ExactValue> exact;
};

/// Nested sum over j < i_1 <= ... <= i_{d-1} <= n of 1/(i_1...i_{d-1}):
/// rational for n <= 200, 50-digit floating point above (all terms positive).
LayerEstimate layer_mean_full(std::uint64_t n, int d, std::uint64_t j);
ExactValue layer_mean_full_exact(std::uint64_t n, int d, std::uint64_t j);
/// Alternating form n binom(n-1,j) sum_l binom(n-1-j,l) (-1)^l / (j+1+l)^d,
/// evaluated exactly. Independent of the nested sum.
ExactValue layer_mean_full_alternating(std::uint64_t n, int d, std::uint64_t j);
/// The alternating form in MPFR. `digits` is the accuracy wanted in the result;
/// the working precision adds about n bits to absorb the cancellation.
double layer_mean_full_alternating_float(std::uint64_t n, int d, std::uint64_t j, unsigned digits);
/// (log(n/(j+1)))^{d-1} / (d-1)!.
double layer_mean_full_asymptotic(std::uint64_t n, int d, std::uint64_t j);

/// E[L_{d,1}(n,j)] = E[L_{d,d}(n,n-1-j)].
LayerEstimate layer_mean_one(std::uint64_t n, int d, std::uint64_t j);
/// binom(j+d-1, j) n^{1-d}, for j small against sqrt(n).
double layer_mean_one_asymptotic(std::uint64_t n, int d, std::uint64_t j);

/// Number of grid points that k-dominate x on {1..u_1} x ... x {1..u_d}.
std::uint64_t categorical_volume(std::span<const int> x, int k, std::span<const int> levels);

inline constexpr std::uint64_t kDefaultGridCap = 10'000'000ULL;

/// E[M^{[c]}_{d,k}(n)] for i.i.d. uniform grid points, exact. Uses the
/// binomial closed form when every u_j = 2, the grid sum otherwise.
ExactValue categorical_mean(std::uint64_t n, int k, std::span<const int> levels,
                            std::uint64_t grid_cap = kDefaultGridCap);
/// Always the grid sum n/u^n sum_x (u - |B_k(x)|)^{n-1}.
ExactValue categorical_mean_grid(std::uint64_t n, int k, std::span<const int> levels,
                                 std::uint64_t grid_cap = kDefaultGridCap);
/// Same expectation under a weighted support: n sum_a P(a) (1 - P(B_k(a)))^{n-1}.
double categorical_mean_weighted(std::uint64_t n, int k, const WeightedSupport& support);

/// lim E[M^{[c]}_{d,k}(n)]/n: total weight of support points with no
/// positive-weight k-dominator.
double categorical_limit(const WeightedSupport& support, int k);
/// Uniform grid: 1/u.
ExactValue categorical_limit_uniform(std::span<const int> levels);

/// E[C_{n,d}] = binom(n,d) d!^{2-d} / d.
ExactValue cycle_mean(std::uint64_t n, int d);

/// beta_{d,k} = 2^{-d} sum_{j <= d-k} binom(d,j).
ExactValue beta(int d, int k);

/// I_n(x) = x int_x^1 t^{-2}(1-t)^{n-1} dt.
double in_integral(std::uint64_t n, double x);
/// Adaptive Gauss-Kronrod on the equivalent form int_x^1 (1 - x/v)^{n-1} dv.
double in_quadrature(std::uint64_t n, double x);

struct SeriesResult {
  double value = 0.0;
  double smallest_term = 0.0;  ///< magnitude of the first omitted term
  int terms = 0;
  bool converged = false;      ///< smallest term below 1e-15 of the value
};

/// sum_j (-1)^j (j+1)! / (n...(n+j)) x^{-j-1} (1-x)^{n+j}, truncated at its
/// smallest term.
SeriesResult in_series(std::uint64_t n, double x);

/// n I_n(beta_{d,k}), a lower bound for E[M_{d,k}(n)].
double lower_bound(std::uint64_t n, int d, int k);

}  // namespace kdsky
