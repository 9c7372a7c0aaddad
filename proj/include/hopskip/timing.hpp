#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hopskip/graph.hpp"
#include "hopskip/rational.hpp"

namespace hopskip {

struct EffectiveWeights {
  /// d + x*w: delay a successor observes on an outgoing channel.
  std::vector<std::int64_t> edge_weight;
  /// d + x*(w + s): lower bound on the period from the actor itself.
  std::vector<std::int64_t> self_bound;
};

/// Throws DimensionMismatchError when x does not have one bit per group.
EffectiveWeights effective_weights(const MarkedGraph& g, const DecisionVector& x);

/// Minimum sustainable period of the configuration: the larger of the maximum
/// cycle ratio (edge weights over tokens) and the largest self bound. Exact.
/// Throws DeadlockError on a token-free cycle.
Rational min_period(const MarkedGraph& g, const DecisionVector& x);

/// Which instant start times refer to. Fireability matches the channel
/// constraint with the wake-up term on the producer; execution-start times
/// are fireability plus the wake-up delay of self-powered actors.
enum class ScheduleAnchor { fireability, execution_start };

struct Schedule {
  Rational period;
  std::vector<Rational> starts;
  ScheduleAnchor anchor = ScheduleAnchor::fireability;
};

/// Result of a feasibility query: either a schedule or a cycle witness whose
/// ratio exceeds the requested period.
struct ScheduleResult {
  std::optional<Schedule> schedule;
  /// Actor ids along the violated cycle (single entry for a self bound).
  std::vector<std::size_t> witness;
  explicit operator bool() const { return schedule.has_value(); }
};

/// Start times for period P via difference constraints. Deterministic:
/// Bellman-Ford relaxes edges in (source actor, channel index) order and the
/// earliest start is shifted to zero. Throws InvalidArgumentError if P <= 0.
ScheduleResult schedule_for(const MarkedGraph& g, const DecisionVector& x,
                            const Rational& period);

/// Feasibility only; cheaper than schedule_for when start times are unused.
bool is_feasible(const MarkedGraph& g, const DecisionVector& x, const Rational& period);

struct ScheduleViolation {
  enum class Kind { channel, self_loop, dimension } kind;
  std::size_t index = 0;  // channel index or actor id
  Rational lhs;           // available side of the inequality
  Rational rhs;           // required side
  std::string describe(const MarkedGraph& g) const;
};

/// Checks every channel and self-loop constraint exactly. Empty means valid.
std::vector<ScheduleViolation> verify_schedule(const MarkedGraph& g, const DecisionVector& x,
                                               const Schedule& sched);

/// Re-anchors a schedule; the result is normalised so its earliest start is 0.
Schedule reanchor(const MarkedGraph& g, const DecisionVector& x, const Schedule& sched,
                  ScheduleAnchor anchor);

}  // namespace hopskip
