#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "kdsky/dominance.hpp"
#include "kdsky/error.hpp"
#include "kdsky/exact.hpp"

using namespace kdsky;

namespace {

// Averages a statistic over all (n!)^(d-1) relative orders of n points with
// distinct coordinates. The first axis is fixed to the identity order.
template <class Stat>
mpq_class average_over_orders(int n, int d, Stat stat) {
  std::vector<std::vector<int>> perms(d - 1, std::vector<int>(n));
  for (auto& p : perms) std::iota(p.begin(), p.end(), 0);
  mpz_class total = 0, count = 0;
  for (;;) {
    std::vector<double> c(static_cast<std::size_t>(n * d));
    for (int i = 0; i < n; ++i) {
      c[i * d] = i;
      for (int a = 1; a < d; ++a) c[i * d + a] = perms[a - 1][i];
    }
    total += stat(Dataset(d, c));
    ++count;
    int a = 0;
    while (a < d - 1 && !std::next_permutation(perms[a].begin(), perms[a].end())) ++a;
    if (a == d - 1) break;
  }
  mpq_class q(total, count);
  q.canonicalize();
  return q;
}

mpq_class brute_categorical(std::uint64_t n, int k, const std::vector<int>& levels) {
  const std::size_t d = levels.size();
  std::uint64_t grid = 1;
  for (int u : levels) grid *= u;
  std::uint64_t samples = 1;
  for (std::uint64_t i = 0; i < n; ++i) samples *= grid;
  mpz_class total = 0;
  std::vector<double> c(n * d);
  for (std::uint64_t s = 0; s < samples; ++s) {
    std::uint64_t code = s;
    for (std::uint64_t i = 0; i < n; ++i) {
      std::uint64_t cell = code % grid;
      code /= grid;
      for (std::size_t a = 0; a < d; ++a) {
        c[i * d + a] = 1.0 + static_cast<double>(cell % levels[a]);
        cell /= levels[a];
      }
    }
    total += static_cast<unsigned long>(
        k_dominant_skyline(Dataset(d, c, CoordinateMode::Categorical), k, SkylineAlgorithm::Exhaustive).size());
  }
  mpq_class q(total, mpz_class(std::to_string(samples)));
  q.canonicalize();
  return q;
}

}  // namespace

TEST_CASE("harmonic numbers") {
  CHECK(harmonic(4, 1).to_rational_string() == "25/12");
  CHECK(harmonic(3, 2).to_rational_string() == "49/36");
  CHECK_THROWS_AS(harmonic(0, 1), Error);
}

TEST_CASE("skyline mean equals the average over all relative orders") {
  for (int d = 2; d <= 3; ++d) {
    for (int n = 1; n <= (d == 2 ? 6 : 5); ++n) {
      const mpq_class brute =
          average_over_orders(n, d, [](const Dataset& s) { return static_cast<unsigned long>(skyline(s).size()); });
      CHECK(skyline_mean_exact(n, d).rational() == brute);
    }
  }
  CHECK(skyline_mean_exact(7, 1).to_rational_string() == "1");
  CHECK(skyline_mean_exact(4, 2).to_rational_string() == "25/12");
}

TEST_CASE("skyline mean in 50-digit float matches the rational route") {
  for (int d : {2, 4, 7}) {
    for (std::uint64_t n : {10ULL, 57ULL, 300ULL}) {
      const double exact = skyline_mean_exact(n, d).to_double();
      CHECK(skyline_mean(n, d) == doctest::Approx(exact).epsilon(1e-14));
    }
  }
}

TEST_CASE("frozen skyline means at n = 1e4 and 1e5") {
  CHECK(skyline_mean(10000, 4) == doctest::Approx(164.721107135).epsilon(1e-10));
  CHECK(skyline_mean(10000, 8) == doctest::Approx(2603.0258392).epsilon(1e-10));
  CHECK(skyline_mean(100000, 6) == doctest::Approx(2432.09463051).epsilon(1e-10));
}

TEST_CASE("full-dominance layer means: brute force and three routes agree") {
  for (int d = 2; d <= 3; ++d) {
    const int n = d == 2 ? 5 : 4;
    for (int j = 0; j < n; ++j) {
      const mpq_class brute = average_over_orders(n, d, [j](const Dataset& s) {
        return static_cast<unsigned long>(dominator_histogram(s, static_cast<int>(s.dim())).cells()[j]);
      });
      CHECK(layer_mean_full_exact(n, d, j).rational() == brute);
    }
  }
  for (std::uint64_t n : {5ULL, 40ULL, 150ULL}) {
    for (int d : {2, 3, 5}) {
      for (std::uint64_t j : {0ULL, 1ULL, 3ULL}) {
        const ExactValue nested = layer_mean_full_exact(n, d, j);
        CHECK(layer_mean_full_alternating(n, d, j) == nested);
        CHECK(layer_mean_full_alternating_float(n, d, j, 20) == doctest::Approx(nested.to_double()).epsilon(1e-13));
      }
    }
  }
  // j = 0 recovers the skyline mean.
  CHECK(layer_mean_full_exact(30, 4, 0) == skyline_mean_exact(30, 4));
}

TEST_CASE("layer means above the rational cutoff") {
  const LayerEstimate l = layer_mean_full(1000, 3, 2);
  CHECK(l.method == "nested-float50");
  CHECK(l.value == doctest::Approx(18.1098979945894).epsilon(1e-12));
  CHECK(layer_mean_full_alternating_float(1000, 3, 2, 20) == doctest::Approx(l.value).epsilon(1e-13));
  CHECK(layer_mean_full_exact(1000, 3, 2).to_double() == doctest::Approx(l.value).epsilon(1e-14));
  // leading log power is in the right neighbourhood
  CHECK(layer_mean_full_asymptotic(1000, 3, 2) == doctest::Approx(l.value).epsilon(0.1));
  CHECK(layer_mean_full(1000000, 3, 0).value == doctest::Approx(104.398).epsilon(1e-4));
}

TEST_CASE("one-sided layer means") {
  // Surviving 1-dominance means being the minimum on every axis.
  CHECK(layer_mean_one(1000, 3, 0).value == doctest::Approx(1e-6).epsilon(1e-12));
  CHECK(layer_mean_one(50, 2, 0).exact->to_rational_string() == "1/50");
  for (std::uint64_t j : {0ULL, 2ULL, 5ULL}) {
    CHECK(layer_mean_one(2000, 3, j).value == doctest::Approx(layer_mean_one_asymptotic(2000, 3, j)).epsilon(0.05));
  }
  CHECK_THROWS_AS(layer_mean_one(10, 3, 10), Error);
}

TEST_CASE("categorical volume against brute force") {
  const std::vector<std::vector<int>> grids = {{2, 2}, {3, 2, 4}, {2, 2, 2, 3}};
  for (const auto& levels : grids) {
    const std::size_t d = levels.size();
    std::vector<int> x(d, 1);
    for (;;) {
      for (int k = 1; k <= static_cast<int>(d); ++k) {
        // count grid points y that k-dominate x
        std::uint64_t count = 0;
        std::vector<int> y(d, 1);
        for (;;) {
          int le = 0;
          bool strict = false;
          for (std::size_t a = 0; a < d; ++a) {
            le += y[a] <= x[a];
            strict |= y[a] < x[a];
          }
          count += le >= k && strict;
          std::size_t a = 0;
          while (a < d && ++y[a] > levels[a]) y[a++] = 1;
          if (a == d) break;
        }
        REQUIRE(categorical_volume(x, k, levels) == count);
      }
      std::size_t a = 0;
      while (a < d && ++x[a] > levels[a]) x[a++] = 1;
      if (a == d) break;
    }
  }
  const std::vector<int> lv{2, 2}, off{3, 1}, short_x{1};
  CHECK_THROWS_AS(categorical_volume(off, 1, lv), Error);
  CHECK_THROWS_AS(categorical_volume(short_x, 1, lv), Error);
  CHECK_THROWS_AS(categorical_volume(std::vector<int>{1, 1}, 3, lv), Error);
}

TEST_CASE("categorical mean: exhaustive oracle") {
  const std::vector<int> two{2, 2};
  CHECK(categorical_mean(2, 1, two).to_rational_string() == "9/8");
  struct Case {
    std::uint64_t n;
    std::vector<int> levels;
  };
  for (const Case& c : {Case{1, {3, 2}}, Case{3, {2, 2}}, Case{2, {3, 2}}, Case{3, {2, 3}},
                        Case{2, {2, 2, 2}}, Case{4, {2, 2}}, Case{2, {4}}, Case{3, {3}}}) {
    for (int k = 1; k <= static_cast<int>(c.levels.size()); ++k) {
      const mpq_class brute = brute_categorical(c.n, k, c.levels);
      CHECK(categorical_mean(c.n, k, c.levels).rational() == brute);
      CHECK(categorical_mean_grid(c.n, k, c.levels).rational() == brute);
    }
  }
}

TEST_CASE("categorical mean: weighted route and limits") {
  const std::vector<int> levels{2, 3};
  WeightedSupport uniform;
  for (int a = 1; a <= 2; ++a)
    for (int b = 1; b <= 3; ++b) uniform.points.push_back({a, b});
  uniform.weights.assign(6, 1.0 / 6);
  for (int k = 1; k <= 2; ++k) {
    CHECK(categorical_mean_weighted(20, k, uniform) ==
          doctest::Approx(categorical_mean(20, k, levels).to_double()).epsilon(1e-12));
  }
  // Copies of the all-ones point survive; the mean grows like n/|U|.
  const std::vector<int> two{2, 2};
  CHECK(categorical_limit_uniform(two).to_rational_string() == "1/4");
  CHECK(categorical_mean(200, 1, two).to_double() / 200 == doctest::Approx(0.25).epsilon(1e-9));
  CHECK(categorical_limit(uniform, 1) == doctest::Approx(categorical_limit_uniform(levels).to_double()));
  CHECK_THROWS_AS(categorical_mean_grid(5, 1, std::vector<int>{100, 100, 100, 100}, 1000), Error);
}

TEST_CASE("cycle mean and pairwise probability") {
  CHECK(cycle_mean(50, 2).to_rational_string() == "1225/2");
  CHECK(cycle_mean(30, 3) == ExactValue(mpq_class(30 * 29 * 28, 108)));
  CHECK_THROWS_AS(cycle_mean(2, 3), Error);
  // beta counts sign patterns with at least k coordinates in p's favour.
  for (int d = 1; d <= 8; ++d) {
    for (int k = 1; k <= d; ++k) {
      int favourable = 0;
      for (int mask = 0; mask < (1 << d); ++mask) favourable += __builtin_popcount(mask) >= k;
      CHECK(beta(d, k) == ExactValue(mpq_class(favourable, 1 << d)));
    }
  }
}

TEST_CASE("I_n integral") {
  // n = 2 closed form: (1 - x) + x log x
  for (double x : {0.01, 0.3, 0.9}) {
    CHECK(in_integral(2, x) == doctest::Approx(1 - x + x * std::log(x)).epsilon(1e-13));
  }
  CHECK(in_integral(1, 0.25) == doctest::Approx(0.75));
  CHECK(in_integral(500, 1.0) == 0.0);
  const SeriesResult s = in_series(1000, 0.1);
  CHECK(s.converged);
  CHECK(s.value == doctest::Approx(in_quadrature(1000, 0.1)).epsilon(1e-10));
  CHECK(in_integral(1000, 0.1) == doctest::Approx(1.71725881791251e-48).epsilon(1e-10));
  CHECK(in_quadrature(1000, 0.03) == doctest::Approx(in_series(1000, 0.03).value).epsilon(1e-9));
  CHECK_THROWS_AS(in_integral(10, 0.0), Error);
  CHECK_THROWS_AS(in_integral(10, 1.5), Error);
}

TEST_CASE("lower bound on the k-dominant skyline") {
  CHECK(lower_bound(1000, 100, 60) == doctest::Approx(9.68339636913e-12).epsilon(1e-8));
  CHECK(lower_bound(1000, 100, 70) == doctest::Approx(855.641854192).epsilon(1e-10));
  double prev = 0;
  for (int k = 50; k <= 99; ++k) {
    const double v = lower_bound(1000, 100, k);
    CHECK(v >= prev);
    CHECK(v <= 1000.0);
    prev = v;
  }
  CHECK_THROWS_AS(lower_bound(1000, 100, 100), Error);
}

TEST_CASE("exact values render deterministically") {
  const ExactValue h = harmonic(10, 1);
  CHECK(h.to_rational_string() == "7381/2520");
  CHECK(h.to_decimal(10) == "2.928968254");
  CHECK(h.to_double() == doctest::Approx(2.9289682539682538));
}
