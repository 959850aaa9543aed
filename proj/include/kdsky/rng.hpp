#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace kdsky {

/// Philox4x32-10 block function. Pure function of (counter, key); no
/// platform-dependent state.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key) noexcept;

/// Counter-based random stream keyed by (seed, stream id). Streams with
/// distinct ids are independent; a trial t of a Monte Carlo run uses stream t.
/// Satisfies UniformRandomBitGenerator.
class StreamRng {
 public:
  using result_type = std::uint64_t;

  StreamRng(std::uint64_t seed, std::uint64_t stream) noexcept;

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()() noexcept { return next_u64(); }

  std::uint64_t next_u64() noexcept;
  /// Uniform on the open interval (0, 1); never returns 0 or 1.
  double uniform_open() noexcept;
  /// Standard exponential variate.
  double exponential() noexcept;
  /// Unbiased integer in [0, bound), bound >= 1.
  std::uint64_t uniform_below(std::uint64_t bound) noexcept;

 private:
  void refill() noexcept;

  std::array<std::uint32_t, 2> key_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int used_ = 4;
};

}  // namespace kdsky
