#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "kdsky/categorical_space.hpp"
#include "kdsky/dataset.hpp"

namespace kdsky {

enum class Model { Hypercube, Simplex, Categorical, LineA };

Model parse_model(std::string_view name);
std::string_view model_name(Model model);

struct SamplerConfig {
  Model model = Model::Hypercube;
  std::size_t n = 0;
  std::size_t d = 1;          ///< ignored for LineA (always 4) and weighted supports
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;   ///< RNG stream id; Monte Carlo trial t uses stream t
  CategoricalSpace categorical;

  /// Effective dimension of the generated points.
  std::size_t dimension() const;
  void validate() const;
};

/// i.i.d. uniform points on (0,1)^d.
Dataset sample_hypercube(std::size_t n, std::size_t d, std::uint64_t seed, std::uint64_t stream = 0);

/// i.i.d. uniform points in {x : -1 <= x_j <= 0, sum |x_j| <= 1}, built from
/// d+1 standard exponentials: x_j = -e_j / (e_1 + ... + e_{d+1}).
Dataset sample_simplex(std::size_t n, std::size_t d, std::uint64_t seed, std::uint64_t stream = 0);

/// Points (-t, -2t, 3t, 4t) with t uniform on (1, 2); pairwise incomparable
/// under 3-dominance.
Dataset sample_line_a(std::size_t n, std::uint64_t seed, std::uint64_t stream = 0);

Dataset sample_categorical(const SamplerConfig& config);

/// Dispatches on config.model.
Dataset sample(const SamplerConfig& config);

}  // namespace kdsky
