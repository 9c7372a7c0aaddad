#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "hopskip/graph.hpp"
#include "hopskip/rational.hpp"

namespace hopskip {

struct ExploredPoint {
  Rational period;
  Rational energy;
  DecisionVector x;
  /// Set on the extra lower-extreme point the period sweep emits when the
  /// all-always-active period is not an integer.
  bool endpoint = false;
};

/// Points sorted by strictly increasing period and strictly decreasing
/// energy; no point weakly dominates another.
class Front {
 public:
  Front() = default;
  /// Throws InvalidArgumentError unless `points` already satisfies the order.
  explicit Front(std::vector<ExploredPoint> points);

  const std::vector<ExploredPoint>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  auto begin() const { return points_.begin(); }
  auto end() const { return points_.end(); }
  const ExploredPoint& operator[](std::size_t i) const { return points_[i]; }

 private:
  std::vector<ExploredPoint> points_;
};

/// Non-dominated subset under componentwise <= on (period, energy). Points
/// sharing (period, energy) collapse to the preferred configuration.
Front pareto_filter(std::span<const ExploredPoint> points);

struct ExploreOptions {
  std::size_t group_cap = 24;
  std::size_t workers = 1;
};

struct ExplorationStats {
  std::size_t lp_calls = 0;
  std::size_t milp_calls = 0;
  std::size_t milp_nodes = 0;
  double seconds = 0.0;
};

struct Exploration {
  std::string strategy;
  std::vector<ExploredPoint> points;
  ExplorationStats stats;
};

/// Exhaustive sweep: one point per decision vector at its minimum period.
/// Throws TooManyGroupsError above options.group_cap.
Exploration dse_xs(const MarkedGraph& g, const ExploreOptions& options = {});

/// Minimum-energy configuration for every integer period between the
/// all-always-active and the all-self-powered minimum periods.
Exploration dse_ps(const MarkedGraph& g, const ExploreOptions& options = {});

inline const Rational kDefaultEpsilon{1, 10};

/// Hop & Skip: from the all-self-powered period downwards, hop to the
/// minimum-energy configuration at P, skip to that configuration's minimum
/// period P', record (P', E(P'), x) and continue at P' - epsilon.
Exploration dse_hs(const MarkedGraph& g, const Rational& epsilon = kDefaultEpsilon,
                   const ExploreOptions& options = {});

}  // namespace hopskip
