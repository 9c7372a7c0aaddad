#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace hopskip {

/// Seedable generator whose output is identical across platforms: the engine
/// is fully specified by the standard and the distributions are implemented
/// here instead of relying on library-specific std:: distributions.
class Rng {
 public:
  static constexpr std::string_view kAlgorithm = "mt19937_64";

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform over [lo, hi] by rejection sampling.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

  /// Uniform over [0, 1).
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Box-Muller normal draw.
  double normal(double mean, double stddev);

  /// Normal draw rounded to the nearest integer and clamped to [lo, hi].
  std::int64_t discrete_normal(double mean, double variance, std::int64_t lo, std::int64_t hi);

 private:
  std::mt19937_64 engine_;
};

}  // namespace hopskip
