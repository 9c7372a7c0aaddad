#include "hopskip/metrics.hpp"

#include <algorithm>

#include "hopskip/errors.hpp"

namespace hopskip {
namespace {

Rational scale(const Rational& v, const Rational& lo, const Rational& hi) {
  if (v < lo || v > hi) {
    throw OutOfBoxError("value " + v.str() + " outside [" + lo.str() + ", " + hi.str() + "]");
  }
  if (hi == lo) return Rational(0);
  return (v - lo) / (hi - lo);
}

}  // namespace

NormalizationBox NormalizationBox::enclosing(std::initializer_list<const Front*> fronts) {
  NormalizationBox box;
  bool any = false;
  for (const Front* f : fronts) {
    for (const ExploredPoint& p : *f) {
      if (!any) {
        box = {p.period, p.period, p.energy, p.energy};
        any = true;
        continue;
      }
      box.period_min = std::min(box.period_min, p.period);
      box.period_max = std::max(box.period_max, p.period);
      box.energy_min = std::min(box.energy_min, p.energy);
      box.energy_max = std::max(box.energy_max, p.energy);
    }
  }
  if (!any) throw InvalidArgumentError("cannot normalize empty fronts");
  return box;
}

std::vector<NormalizedPoint> normalize(const Front& front, const NormalizationBox& box) {
  std::vector<NormalizedPoint> out;
  out.reserve(front.size());
  for (const ExploredPoint& p : front) {
    out.push_back({scale(p.period, box.period_min, box.period_max),
                   scale(p.energy, box.energy_min, box.energy_max)});
  }
  return out;
}

Rational hypervolume(std::span<const NormalizedPoint> points) {
  std::vector<NormalizedPoint> sorted(points.begin(), points.end());
  std::sort(sorted.begin(), sorted.end(), [](const NormalizedPoint& a, const NormalizedPoint& b) {
    return a.period != b.period ? a.period < b.period : a.energy < b.energy;
  });
  // Sweep by period; each point that lowers the energy level adds the strip
  // between the previous level and its own energy.
  Rational area(0);
  Rational level(1);
  for (const NormalizedPoint& p : sorted) {
    if (p.energy >= level) continue;
    area += (Rational(1) - p.period) * (level - p.energy);
    level = p.energy;
  }
  return area;
}

Rational hypervolume_ratio(std::span<const NormalizedPoint> app,
                           std::span<const NormalizedPoint> ref) {
  Rational denominator = hypervolume(ref);
  if (denominator.is_zero()) throw DegenerateError("reference front has zero hypervolume");
  return hypervolume(app) / denominator;
}

Rational compare_fronts(const Front& app, const Front& ref) {
  NormalizationBox box = NormalizationBox::enclosing({&app, &ref});
  auto a = normalize(app, box);
  auto r = normalize(ref, box);
  return hypervolume_ratio(a, r);
}

bool weakly_covers(const Front& app, const Front& ref) {
  return std::all_of(ref.begin(), ref.end(), [&](const ExploredPoint& r) {
    return std::any_of(app.begin(), app.end(), [&](const ExploredPoint& a) {
      return a.period <= r.period && a.energy <= r.energy;
    });
  });
}

}  // namespace hopskip
