#include <doctest.h>

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <vector>

#include "kdsky/dominance.hpp"
#include "kdsky/error.hpp"
#include "kdsky/rng.hpp"
#include "kdsky/samplers.hpp"

using namespace kdsky;

namespace {

Dataset table_one(bool with_p6 = true) {
  std::vector<double> c = {1, 2, 2, 3, 3,  //
                           3, 1, 2, 2, 3,  //
                           3, 3, 1, 2, 2,  //
                           2, 3, 3, 1, 2,  //
                           2, 2, 3, 3, 1};
  if (with_p6) c.insert(c.end(), {2, 3, 1, 1, 3});
  return Dataset(5, c, CoordinateMode::Categorical);
}

// Straight from the definition: at least k coordinates with p <= q, one strictly.
bool by_definition(Point p, Point q, int k) {
  int le = 0;
  bool strict = false;
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (p[j] <= q[j]) ++le;
    if (p[j] < q[j]) strict = true;
  }
  return le >= k && strict;
}

Dataset random_small(StreamRng& rng, bool ties) {
  const std::size_t d = 1 + rng.uniform_below(6);
  const std::size_t n = rng.uniform_below(30);
  std::vector<double> c(n * d);
  for (double& x : c) x = ties ? 1.0 + static_cast<double>(rng.uniform_below(3)) : rng.uniform_open();
  return Dataset(d, c);
}

}  // namespace

TEST_CASE("six-point example") {
  const Dataset data = table_one();
  CHECK(skyline(data) == IndexSet{0, 1, 2, 3, 4, 5});
  CHECK(k_dominant_skyline(data, 3).empty());
  // p4 = (2,3,3,1,2) and p6 = (2,3,1,1,3) 4-dominate each other, so the
  // literal definition leaves nobody at k = 4.
  CHECK(k_dominates(data[3], data[5], 4));
  CHECK(k_dominates(data[5], data[3], 4));
  CHECK(k_dominant_skyline(data, 4).empty());
  CHECK(k_dominant_skyline(data, 4, SkylineAlgorithm::Exhaustive).empty());
  CHECK(k_dominates(data[1], data[0], 4));

  const Dataset five = table_one(false);
  CHECK(skyline(five).size() == 5);
  for (int k = 1; k <= 4; ++k) {
    CHECK(k_dominant_skyline(five, k).empty());
    CHECK(k_dominant_skyline(five, k, SkylineAlgorithm::Exhaustive).empty());
  }
}

TEST_CASE("k_dominates edge cases") {
  const std::vector<double> p = {1, 2, 3}, q = {1, 2, 3}, r = {0, 5, 3};
  CHECK_FALSE(k_dominates(p, q, 3));  // equal points never dominate
  CHECK_FALSE(k_dominates(p, q, 1));
  CHECK(k_dominates(r, p, 2));
  CHECK(k_dominates(p, r, 2));  // mutual 2-dominance
  CHECK_FALSE(k_dominates(r, p, 3));
  CHECK_THROWS_AS(k_dominates(p, std::vector<double>{1, 2}, 1), Error);
  CHECK_THROWS_AS(k_dominates(p, q, 0), Error);
  CHECK_THROWS_AS(k_dominates(p, q, 4), Error);
}

TEST_CASE("k_dominates agrees with the definition on random tied points") {
  StreamRng rng(11, 0);
  for (int it = 0; it < 20000; ++it) {
    const std::size_t d = 1 + rng.uniform_below(6);
    std::vector<double> p(d), q(d);
    for (std::size_t j = 0; j < d; ++j) {
      p[j] = static_cast<double>(rng.uniform_below(3));
      q[j] = static_cast<double>(rng.uniform_below(3));
    }
    for (int k = 1; k <= static_cast<int>(d); ++k) REQUIRE(k_dominates(p, q, k) == by_definition(p, q, k));
  }
}

TEST_CASE("property: skylines nest in k, three-phase matches exhaustive") {
  StreamRng rng(12, 0);
  for (int it = 0; it < 3000; ++it) {
    const Dataset data = random_small(rng, it % 2 == 0);
    const int d = static_cast<int>(data.dim());
    IndexSet prev;
    for (int k = 1; k <= d; ++k) {
      const IndexSet fast = k_dominant_skyline(data, k);
      const IndexSet slow = k_dominant_skyline(data, k, SkylineAlgorithm::Exhaustive);
      REQUIRE(fast == slow);
      REQUIRE(std::includes(fast.begin(), fast.end(), prev.begin(), prev.end()));
      prev = fast;
    }
    REQUIRE(prev == skyline(data));
  }
}

TEST_CASE("property: skyline is equivariant under row and axis permutations") {
  StreamRng rng(13, 0);
  for (int it = 0; it < 300; ++it) {
    const Dataset data = random_small(rng, true);
    std::vector<std::size_t> rows(data.size()), axes(data.dim());
    std::iota(rows.begin(), rows.end(), 0);
    std::iota(axes.begin(), axes.end(), 0);
    std::shuffle(rows.begin(), rows.end(), rng);
    std::shuffle(axes.begin(), axes.end(), rng);
    const Dataset permuted = data.permuted_rows(rows).permuted_axes(axes);
    for (int k = 1; k <= static_cast<int>(data.dim()); ++k) {
      IndexSet mapped;
      for (std::size_t i : k_dominant_skyline(permuted, k)) mapped.push_back(rows[i]);
      std::sort(mapped.begin(), mapped.end());
      REQUIRE(mapped == k_dominant_skyline(data, k));
    }
  }
}

TEST_CASE("dominator histogram") {
  const Dataset data = table_one();
  const auto h5 = dominator_histogram(data, 5);
  for (std::size_t c : h5.counts()) CHECK(c == 0);
  const auto h4 = dominator_histogram(table_one(false), 4);
  for (std::size_t c : h4.counts()) CHECK(c >= 1);
  CHECK(h4.cells()[0] == 0);
  CHECK(h4.cumulative(4) == 5);

  StreamRng rng(14, 0);
  for (int it = 0; it < 200; ++it) {
    const Dataset d = random_small(rng, it % 3 == 0);
    if (d.empty()) continue;
    for (int k = 1; k <= static_cast<int>(d.dim()); ++k) {
      const auto h = dominator_histogram(d, k);
      REQUIRE(h.cells()[0] == k_dominant_skyline(d, k).size());
      REQUIRE(h.cumulative(d.size() - 1) == d.size());
      for (std::size_t i = 0; i < d.size(); ++i) {
        std::size_t c = 0;
        for (std::size_t j = 0; j < d.size(); ++j) c += by_definition(d[j], d[i], k) ? 1 : 0;
        REQUIRE(h.counts()[i] == c);
      }
    }
  }
}

TEST_CASE("cycle counting against brute force") {
  // Brute force: count cyclic sequences of distinct indices, normalised by rotation.
  auto brute = [](const Dataset& d, int len, int k) {
    const std::size_t n = d.size();
    std::uint64_t total = 0;
    std::vector<std::size_t> seq(len);
    std::function<void(int)> rec = [&](int pos) {
      if (pos == len) {
        if (by_definition(d[seq[len - 1]], d[seq[0]], k)) ++total;
        return;
      }
      for (std::size_t i = 0; i < n; ++i) {
        if (std::find(seq.begin(), seq.begin() + pos, i) != seq.begin() + pos) continue;
        if (pos > 0 && !by_definition(d[seq[pos - 1]], d[i], k)) continue;
        seq[pos] = i;
        rec(pos + 1);
      }
    };
    rec(0);
    return total / static_cast<std::uint64_t>(len);
  };
  StreamRng rng(15, 0);
  for (int it = 0; it < 60; ++it) {
    const std::size_t d = 2 + rng.uniform_below(3);
    const std::size_t n = 2 + rng.uniform_below(8);
    std::vector<double> c(n * d);
    for (double& x : c) x = rng.uniform_open();
    const Dataset data(d, c);
    for (int len = 2; len <= std::min<int>(4, static_cast<int>(n)); ++len) {
      for (int k = 1; k < static_cast<int>(d); ++k) {
        REQUIRE(count_dominant_cycles(data, len, k) == brute(data, len, k));
      }
    }
  }
  // Pairwise-incomparable 2-d points: every pair is a 1-dominant 2-cycle.
  const Dataset anti(2, std::vector<double>{0, 3, 1, 2, 2, 1, 3, 0});
  CHECK(count_dominant_cycles(anti, 2, 1) == 6);
  CHECK_THROWS_AS(count_dominant_cycles(anti, 1, 1), Error);
}

TEST_CASE("cycle counting respects the work limit") {
  const Dataset data = sample_hypercube(200, 3, 1);
  CHECK_THROWS_AS(count_dominant_cycles(data, 3, 2, 1000), Error);
}

TEST_CASE("empty and single-point datasets") {
  const Dataset empty(3);
  CHECK(skyline(empty).empty());
  CHECK(k_dominant_skyline(empty, 2).empty());
  const Dataset one(3, std::vector<double>{0.5, 0.5, 0.5});
  CHECK(k_dominant_skyline(one, 1) == IndexSet{0});
  CHECK_THROWS_AS(k_dominant_skyline(one, 4), Error);
}
