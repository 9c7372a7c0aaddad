#include "hopskip/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "hopskip/errors.hpp"

namespace hopskip {

std::int64_t Rng::uniform_int(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw InvalidArgumentError("empty integer range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo);
  if (span == std::numeric_limits<std::uint64_t>::max()) return static_cast<std::int64_t>(next());
  const std::uint64_t range = span + 1;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % range;
  std::uint64_t draw;
  do {
    draw = next();
  } while (draw >= limit);
  return lo + static_cast<std::int64_t>(draw % range);
}

double Rng::normal(double mean, double stddev) {
  double u1 = 0.0;
  while (u1 <= 0.0) u1 = uniform01();
  const double u2 = uniform01();
  return mean + stddev * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::int64_t Rng::discrete_normal(double mean, double variance, std::int64_t lo, std::int64_t hi) {
  const double v = normal(mean, std::sqrt(std::max(variance, 0.0)));
  const auto rounded = static_cast<std::int64_t>(std::llround(v));
  return std::clamp(rounded, lo, hi);
}

}  // namespace hopskip
