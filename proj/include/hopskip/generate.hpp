#pragma once

#include <cstdint>
#include <vector>

#include "hopskip/graph.hpp"
#include "hopskip/sdf.hpp"

namespace hopskip {

/// Normalized power model plus a random per-actor scaling factor psi: the
/// execution time is divided by psi and every power is multiplied by psi, so
/// execution energy is kept up to integer rounding of the time.
struct AugmentationPolicy {
  PowerParams base{Rational(1), Rational(9, 10), Rational(1, 2), Rational(1, 2), Rational(1, 10)};
  std::int64_t wakeup = 1;
  std::int64_t shutdown = 2;
  std::int64_t scale_min = 1;
  std::int64_t scale_max = 8;
  std::uint64_t seed = 1;

  void validate() const;
};

/// psi per actor, uniform over the integers [scale_min, scale_max].
std::vector<std::int64_t> draw_scale_factors(std::size_t actors, const AugmentationPolicy& policy);

/// d' = max(1, round(d / psi)), powers = base * psi, delays from the policy.
SdfGraph apply_scaling(const SdfGraph& sdf, const AugmentationPolicy& policy,
                       const std::vector<std::int64_t>& factors);

/// apply_scaling with factors drawn from policy.seed.
SdfGraph augment(const SdfGraph& sdf, const AugmentationPolicy& policy);

struct GeneratorParams {
  std::size_t actors = 15;
  double degree_mean = 3.0;
  double degree_variance = 3.0;
  std::int64_t rate_min = 1;
  std::int64_t rate_max = 20;
  double rate_mean = 3.0;
  double rate_variance = 6.0;
  std::int64_t repetition_sum = 250;
  std::int64_t exec_min = 1;
  std::int64_t exec_max = 10;
  /// Probability that a non-tree channel closes a cycle.
  double back_edge_probability = 0.25;
  /// Give every actor a rate-1 self loop holding one token, so its firings
  /// within an iteration execute one after another.
  bool self_loops = true;
  std::uint64_t seed = 1;
  std::size_t max_retries = 200;
  AugmentationPolicy policy;

  void validate() const;
};

/// Random connected, consistent and live SDF graph whose repetition vector
/// sums to params.repetition_sum, annotated through augment(). Throws
/// GenerationFailedError when no valid graph is found within max_retries.
SdfGraph generate_random(const GeneratorParams& params);

}  // namespace hopskip
