#include "kdsky/samplers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "kdsky/error.hpp"
#include "kdsky/rng.hpp"

namespace kdsky {

void WeightedSupport::validate() const {
  if (points.empty()) fail(ErrorCode::InvalidArgument, "weighted support is empty");
  if (points.size() != weights.size()) {
    fail(ErrorCode::DimensionMismatch, "support has " + std::to_string(points.size()) +
                                           " points but " + std::to_string(weights.size()) +
                                           " weights");
  }
  const std::size_t d = points.front().size();
  if (d == 0) fail(ErrorCode::InvalidArgument, "support points must have dimension >= 1");
  std::set<std::vector<int>> seen;
  for (const auto& p : points) {
    if (p.size() != d) fail(ErrorCode::DimensionMismatch, "support points differ in dimension");
    for (int v : p) {
      if (v < 1) fail(ErrorCode::InvalidArgument, "support levels must be >= 1");
    }
    if (!seen.insert(p).second) fail(ErrorCode::InvalidArgument, "support points must be distinct");
  }
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      fail(ErrorCode::InvalidArgument, "weights must be finite and nonnegative");
    }
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    fail(ErrorCode::InvalidArgument, "weights sum to " + std::to_string(total) + ", expected 1");
  }
}

std::uint64_t CategoricalSpace::grid_size() const {
  std::uint64_t u = 1;
  for (int l : levels) {
    if (u > std::numeric_limits<std::uint64_t>::max() / static_cast<std::uint64_t>(l)) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    u *= static_cast<std::uint64_t>(l);
  }
  return u;
}

void CategoricalSpace::validate() const {
  if (support) {
    support->validate();
    if (!levels.empty()) {
      if (levels.size() != support->dim()) {
        fail(ErrorCode::DimensionMismatch, "levels and support dimensions differ");
      }
      for (const auto& p : support->points) {
        for (std::size_t j = 0; j < p.size(); ++j) {
          if (p[j] > levels[j]) fail(ErrorCode::InvalidArgument, "support point outside the grid");
        }
      }
    }
    return;
  }
  if (levels.empty()) fail(ErrorCode::InvalidArgument, "categorical levels are empty");
  for (int l : levels) {
    if (l < 2) fail(ErrorCode::InvalidArgument, "every level count u_j must be >= 2");
  }
}

Model parse_model(std::string_view name) {
  if (name == "hypercube") return Model::Hypercube;
  if (name == "simplex") return Model::Simplex;
  if (name == "categorical") return Model::Categorical;
  if (name == "line-A" || name == "line-a" || name == "lineA") return Model::LineA;
  fail(ErrorCode::UnknownId, "unknown model '" + std::string(name) +
                                 "' (expected hypercube, simplex, categorical, line-A)");
}

std::string_view model_name(Model model) {
  switch (model) {
    case Model::Hypercube: return "hypercube";
    case Model::Simplex: return "simplex";
    case Model::Categorical: return "categorical";
    case Model::LineA: return "line-A";
  }
  return "?";
}

std::size_t SamplerConfig::dimension() const {
  switch (model) {
    case Model::LineA: return 4;
    case Model::Categorical: return categorical.dim();
    default: return d;
  }
}

void SamplerConfig::validate() const {
  if (model == Model::Categorical) {
    categorical.validate();
  } else if ((model == Model::Hypercube || model == Model::Simplex) && d < 1) {
    fail(ErrorCode::InvalidArgument, "dimension must be >= 1");
  }
}

Dataset sample_hypercube(std::size_t n, std::size_t d, std::uint64_t seed, std::uint64_t stream) {
  StreamRng rng(seed, stream);
  std::vector<double> coords(n * d);
  for (double& c : coords) c = rng.uniform_open();
  return Dataset(d, std::move(coords));
}

Dataset sample_simplex(std::size_t n, std::size_t d, std::uint64_t seed, std::uint64_t stream) {
  StreamRng rng(seed, stream);
  std::vector<double> coords(n * d);
  std::vector<double> e(d + 1);
  for (std::size_t i = 0; i < n; ++i) {
    double total = 0.0;
    for (double& x : e) total += (x = rng.exponential());
    for (std::size_t j = 0; j < d; ++j) coords[i * d + j] = -e[j] / total;
  }
  return Dataset(d, std::move(coords));
}

Dataset sample_line_a(std::size_t n, std::uint64_t seed, std::uint64_t stream) {
  StreamRng rng(seed, stream);
  std::vector<double> coords;
  coords.reserve(n * 4);
  for (std::size_t i = 0; i < n; ++i) {
    double t = 1.0 + rng.uniform_open();
    coords.insert(coords.end(), {-t, -2.0 * t, 3.0 * t, 4.0 * t});
  }
  return Dataset(4, std::move(coords));
}

Dataset sample_categorical(const SamplerConfig& config) {
  config.categorical.validate();
  StreamRng rng(config.seed, config.stream);
  const std::size_t n = config.n;

  if (config.categorical.support) {
    const auto& support = *config.categorical.support;
    const std::size_t d = support.dim();
    std::vector<double> cumulative(support.weights.size());
    std::partial_sum(support.weights.begin(), support.weights.end(), cumulative.begin());
    std::vector<double> coords;
    coords.reserve(n * d);
    for (std::size_t i = 0; i < n; ++i) {
      double u = rng.uniform_open() * cumulative.back();
      auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
      std::size_t idx = std::min<std::size_t>(it - cumulative.begin(), cumulative.size() - 1);
      // Zero-weight atoms share a cumulative value with their predecessor and
      // are never selected by upper_bound.
      for (int v : support.points[idx]) coords.push_back(v);
    }
    return Dataset(d, std::move(coords), CoordinateMode::Categorical);
  }

  const auto& levels = config.categorical.levels;
  const std::size_t d = levels.size();
  std::vector<double> coords(n * d);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      coords[i * d + j] = 1.0 + static_cast<double>(rng.uniform_below(levels[j]));
    }
  }
  return Dataset(d, std::move(coords), CoordinateMode::Categorical);
}

Dataset sample(const SamplerConfig& config) {
  config.validate();
  switch (config.model) {
    case Model::Hypercube: return sample_hypercube(config.n, config.d, config.seed, config.stream);
    case Model::Simplex: return sample_simplex(config.n, config.d, config.seed, config.stream);
    case Model::LineA: return sample_line_a(config.n, config.seed, config.stream);
    case Model::Categorical: return sample_categorical(config);
  }
  fail(ErrorCode::InvalidArgument, "unknown model");
}

}  // namespace kdsky
