#pragma once

#include <initializer_list>
#include <span>
#include <vector>

#include "hopskip/dse.hpp"
#include "hopskip/rational.hpp"

namespace hopskip {

/// Per-objective bounds taken over every front being compared.
struct NormalizationBox {
  Rational period_min, period_max;
  Rational energy_min, energy_max;

  /// Union bounds of the given fronts. Throws InvalidArgumentError when all
  /// fronts are empty.
  static NormalizationBox enclosing(std::initializer_list<const Front*> fronts);
};

struct NormalizedPoint {
  Rational period;
  Rational energy;
};

/// Maps each objective to (v - min) / (max - min); a degenerate objective maps
/// to 0. Throws OutOfBoxError for points outside the box.
std::vector<NormalizedPoint> normalize(const Front& front, const NormalizationBox& box);

/// Area of the part of [0,1]^2 weakly dominated by the points, with the
/// reference point (1,1). Input order and dominated points do not matter.
Rational hypervolume(std::span<const NormalizedPoint> points);

/// hypervolume(app) / hypervolume(ref). Throws DegenerateError when the
/// reference hypervolume is zero.
Rational hypervolume_ratio(std::span<const NormalizedPoint> app,
                           std::span<const NormalizedPoint> ref);

/// Normalizes both fronts over their union box and returns the ratio.
Rational compare_fronts(const Front& app, const Front& ref);

/// True when every point of ref is weakly dominated by some point of app.
/// Decides front equality in (P, E) space when the reference hypervolume is
/// zero, e.g. for a front made of the two extreme points only.
bool weakly_covers(const Front& app, const Front& ref);

}  // namespace hopskip
