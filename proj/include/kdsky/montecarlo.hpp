#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "kdsky/dominance.hpp"
#include "kdsky/samplers.hpp"

namespace kdsky {

enum class Statistic { SkylineCount, KDominantCount, CloudCell, CumulativeCloud, CycleCount };

Statistic parse_statistic(std::string_view name);
std::string_view statistic_name(Statistic s);

inline constexpr double kDefaultWorkCeiling = 1e11;

struct EstimateRequest {
  Statistic statistic = Statistic::SkylineCount;
  SamplerConfig sampler;        ///< sampler.seed and sampler.stream are replaced per trial
  int k = 0;                    ///< 0 means d
  std::size_t j = 0;            ///< cloud cell index
  std::size_t m = 0;            ///< cumulative cloud bound
  int cycle_length = 0;         ///< 0 means d
  std::size_t trials = 2;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  bool force = false;           ///< skip the work ceiling
  double work_ceiling = kDefaultWorkCeiling;
  SkylineAlgorithm algorithm = SkylineAlgorithm::ThreePhase;
  std::uint64_t cycle_work_limit = kDefaultCycleWorkLimit;
};

struct EstimateResult {
  Statistic statistic = Statistic::SkylineCount;
  Model model = Model::Hypercube;
  std::size_t n = 0;
  std::size_t d = 0;
  int k = 0;
  std::size_t j = 0;
  std::size_t m = 0;
  int cycle_length = 0;
  std::size_t trials = 0;
  double mean = 0.0;
  double stderr_ = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  std::uint64_t seed = 0;
};

/// Estimated elementary comparisons n^2 d trials.
double estimate_cost(const EstimateRequest& request);

/// Per-trial values in trial order; trial t samples with stream t of `seed`.
/// Identical for any worker count.
std::vector<double> trial_values(const EstimateRequest& request);

EstimateResult estimate(const EstimateRequest& request);

/// Summary of per-trial values: mean, sample standard error, 95% interval.
EstimateResult summarize(const EstimateRequest& request, const std::vector<double>& values);

struct CloudCurve {
  std::vector<std::size_t> m_grid;
  /// per_trial[t][i] = points dominated by at most m_grid[i] others in trial t.
  std::vector<std::vector<std::size_t>> per_trial;
  std::vector<double> mean;
  std::vector<double> stderr_;
};

/// Mean of sum_{j<=m} L_{d,k}(n,j) over trials for every m in the grid.
CloudCurve cumulative_cloud_curve(const SamplerConfig& sampler, int k,
                                  const std::vector<std::size_t>& m_grid, std::size_t trials,
                                  std::uint64_t seed, unsigned workers = 1, bool force = false);

struct Distribution {
  std::map<long long, double> frequency;  ///< value -> empirical probability
  std::size_t trials = 0;
  double mean = 0.0;
  double variance = 0.0;                  ///< sample variance
};

Distribution distribution_histogram(const EstimateRequest& request);

/// Total-variation distance between an empirical distribution and Binomial(n, p).
double tv_distance_binomial(const Distribution& dist, std::size_t n, double p);

}  // namespace kdsky
