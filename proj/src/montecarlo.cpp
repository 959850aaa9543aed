#include "kdsky/montecarlo.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include <boost/math/distributions/binomial.hpp>

#include "kdsky/error.hpp"

namespace kdsky {
namespace {

// Runs body(t) for t in [0, trials) on `workers` threads. Results must be
// written to per-trial slots by the caller, so scheduling cannot leak into them.
template <class Body>
void for_each_trial(std::size_t trials, unsigned workers, Body body) {
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(trials, 1))));
  if (workers == 1) {
    for (std::size_t t = 0; t < trials; ++t) body(t);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t t = next.fetch_add(1);
        if (t >= trials) return;
        try {
          body(t);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          next.store(trials);
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

int resolve_k(int k, std::size_t d) {
  const int kk = k == 0 ? static_cast<int>(d) : k;
  if (kk < 1 || static_cast<std::size_t>(kk) > d) {
    fail(ErrorCode::OutOfRange, "k must lie in [1, " + std::to_string(d) + "]");
  }
  return kk;
}

void check_request(const EstimateRequest& r) {
  if (r.trials < 2) fail(ErrorCode::InvalidArgument, "trials must be >= 2");
  r.sampler.validate();
  const std::size_t d = r.sampler.dimension();
  resolve_k(r.k, d);
  const std::size_t n = r.sampler.n;
  if (r.statistic == Statistic::CloudCell && n > 0 && r.j > n - 1) {
    fail(ErrorCode::OutOfRange, "cloud cell j must lie in [0, n-1]");
  }
  if (r.statistic == Statistic::CycleCount) {
    const int len = r.cycle_length == 0 ? static_cast<int>(d) : r.cycle_length;
    if (len < 2 || static_cast<std::size_t>(len) > n) {
      fail(ErrorCode::OutOfRange, "cycle length must lie in [2, n]");
    }
  }
  if (!r.force && estimate_cost(r) > r.work_ceiling) {
    fail(ErrorCode::WorkLimitExceeded,
         "estimated work " + std::to_string(estimate_cost(r)) + " exceeds the ceiling " +
             std::to_string(r.work_ceiling) + "; pass force to run anyway");
  }
}

double trial_statistic(const EstimateRequest& r, std::size_t t) {
  SamplerConfig cfg = r.sampler;
  cfg.seed = r.seed;
  cfg.stream = t;
  const Dataset data = sample(cfg);
  const int k = resolve_k(r.k, data.dim());
  switch (r.statistic) {
    case Statistic::SkylineCount:
      return static_cast<double>(
          k_dominant_skyline(data, static_cast<int>(data.dim()), r.algorithm).size());
    case Statistic::KDominantCount:
      return static_cast<double>(k_dominant_skyline(data, k, r.algorithm).size());
    case Statistic::CloudCell: {
      const auto cells = dominator_histogram(data, k).cells();
      return r.j < cells.size() ? static_cast<double>(cells[r.j]) : 0.0;
    }
    case Statistic::CumulativeCloud:
      return static_cast<double>(dominator_histogram(data, k).cumulative(r.m));
    case Statistic::CycleCount: {
      const int len = r.cycle_length == 0 ? static_cast<int>(data.dim()) : r.cycle_length;
      return static_cast<double>(count_dominant_cycles(data, len, k, r.cycle_work_limit));
    }
  }
  return 0.0;
}

}  // namespace

Statistic parse_statistic(std::string_view name) {
  if (name == "skyline-count") return Statistic::SkylineCount;
  if (name == "k-dominant-count") return Statistic::KDominantCount;
  if (name == "cloud-cell") return Statistic::CloudCell;
  if (name == "cumulative-cloud") return Statistic::CumulativeCloud;
  if (name == "cycle-count") return Statistic::CycleCount;
  fail(ErrorCode::UnknownId, "unknown statistic '" + std::string(name) + "'");
}

std::string_view statistic_name(Statistic s) {
  switch (s) {
    case Statistic::SkylineCount: return "skyline-count";
    case Statistic::KDominantCount: return "k-dominant-count";
    case Statistic::CloudCell: return "cloud-cell";
    case Statistic::CumulativeCloud: return "cumulative-cloud";
    case Statistic::CycleCount: return "cycle-count";
  }
  return "?";
}

double estimate_cost(const EstimateRequest& r) {
  const double n = static_cast<double>(r.sampler.n);
  return n * n * static_cast<double>(r.sampler.dimension()) * static_cast<double>(r.trials);
}

std::vector<double> trial_values(const EstimateRequest& request) {
  check_request(request);
  std::vector<double> values(request.trials);
  for_each_trial(request.trials, request.workers,
                 [&](std::size_t t) { values[t] = trial_statistic(request, t); });
  return values;
}

EstimateResult summarize(const EstimateRequest& r, const std::vector<double>& values) {
  EstimateResult out;
  out.statistic = r.statistic;
  out.model = r.sampler.model;
  out.n = r.sampler.n;
  out.d = r.sampler.dimension();
  out.k = r.k == 0 ? static_cast<int>(out.d) : r.k;
  out.j = r.j;
  out.m = r.m;
  out.cycle_length = r.statistic == Statistic::CycleCount
                         ? (r.cycle_length == 0 ? static_cast<int>(out.d) : r.cycle_length)
                         : 0;
  out.trials = values.size();
  out.seed = r.seed;
  if (values.empty()) return out;
  long double sum = 0.0L;
  for (double v : values) sum += v;
  const long double mean = sum / values.size();
  long double ss = 0.0L;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double var = values.size() > 1 ? static_cast<double>(ss / (values.size() - 1)) : 0.0;
  out.mean = static_cast<double>(mean);
  out.stderr_ = std::sqrt(var / static_cast<double>(values.size()));
  out.ci_lo = out.mean - 1.96 * out.stderr_;
  out.ci_hi = out.mean + 1.96 * out.stderr_;
  return out;
}

EstimateResult estimate(const EstimateRequest& request) {
  return summarize(request, trial_values(request));
}

CloudCurve cumulative_cloud_curve(const SamplerConfig& sampler, int k,
                                  const std::vector<std::size_t>& m_grid, std::size_t trials,
                                  std::uint64_t seed, unsigned workers, bool force) {
  EstimateRequest r;
  r.statistic = Statistic::CumulativeCloud;
  r.sampler = sampler;
  r.k = k;
  r.trials = trials;
  r.seed = seed;
  r.force = force;
  check_request(r);
  for (std::size_t m : m_grid) {
    if (sampler.n == 0 || m > sampler.n - 1) fail(ErrorCode::OutOfRange, "m must lie in [0, n-1]");
  }
  CloudCurve curve;
  curve.m_grid = m_grid;
  curve.per_trial.assign(trials, std::vector<std::size_t>(m_grid.size()));
  for_each_trial(trials, workers, [&](std::size_t t) {
    SamplerConfig cfg = sampler;
    cfg.seed = seed;
    cfg.stream = t;
    const Dataset data = sample(cfg);
    const auto hist = dominator_histogram(data, resolve_k(k, data.dim()));
    for (std::size_t i = 0; i < m_grid.size(); ++i) curve.per_trial[t][i] = hist.cumulative(m_grid[i]);
  });
  for (std::size_t i = 0; i < m_grid.size(); ++i) {
    std::vector<double> column(trials);
    for (std::size_t t = 0; t < trials; ++t) column[t] = static_cast<double>(curve.per_trial[t][i]);
    const EstimateResult s = summarize(r, column);
    curve.mean.push_back(s.mean);
    curve.stderr_.push_back(s.stderr_);
  }
  return curve;
}

Distribution distribution_histogram(const EstimateRequest& request) {
  const std::vector<double> values = trial_values(request);
  Distribution dist;
  dist.trials = values.size();
  for (double v : values) dist.frequency[std::llround(v)] += 1.0;
  for (auto& [value, mass] : dist.frequency) mass /= static_cast<double>(values.size());
  const EstimateResult s = summarize(request, values);
  dist.mean = s.mean;
  dist.variance = s.stderr_ * s.stderr_ * static_cast<double>(values.size());
  return dist;
}

double tv_distance_binomial(const Distribution& dist, std::size_t n, double p) {
  boost::math::binomial_distribution<double> bin(static_cast<double>(n), p);
  double total = 0.0;
  for (std::size_t x = 0; x <= n; ++x) {
    auto it = dist.frequency.find(static_cast<long long>(x));
    const double emp = it == dist.frequency.end() ? 0.0 : it->second;
    total += std::abs(emp - boost::math::pdf(bin, static_cast<double>(x)));
  }
  for (const auto& [value, mass] : dist.frequency) {
    if (value < 0 || value > static_cast<long long>(n)) total += mass;
  }
  return 0.5 * total;
}

}  // namespace kdsky
