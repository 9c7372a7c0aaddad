#include "hopskip/dse.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <thread>

#include "hopskip/energy.hpp"
#include "hopskip/errors.hpp"
#include "hopskip/milp.hpp"
#include "hopskip/timing.hpp"

namespace hopskip {
namespace {

bool point_order(const ExploredPoint& a, const ExploredPoint& b) {
  if (a.period != b.period) return a.period < b.period;
  if (a.energy != b.energy) return a.energy < b.energy;
  return preferred_configuration(a.x, b.x);
}

// Runs body(i) for i in [0, count) on up to `workers` threads. Results are
// written by index, so the outcome does not depend on scheduling.
template <class Body>
void parallel_for(std::size_t count, std::size_t workers, Body body) {
  workers = std::max<std::size_t>(1, std::min(workers, count));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = count;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

}  // namespace

Front::Front(std::vector<ExploredPoint> points) : points_(std::move(points)) {
  for (std::size_t i = 1; i < points_.size(); ++i) {
    if (!(points_[i - 1].period < points_[i].period) ||
        !(points_[i - 1].energy > points_[i].energy)) {
      throw InvalidArgumentError("front points must have increasing period and decreasing energy");
    }
  }
}

Front pareto_filter(std::span<const ExploredPoint> points) {
  std::vector<ExploredPoint> sorted(points.begin(), points.end());
  std::sort(sorted.begin(), sorted.end(), point_order);
  std::vector<ExploredPoint> front;
  for (ExploredPoint& p : sorted) {
    // Sorted by period, so p is dominated iff some kept point has energy <= p's.
    if (front.empty() || p.energy < front.back().energy) front.push_back(std::move(p));
  }
  return Front(std::move(front));
}

Exploration dse_xs(const MarkedGraph& g, const ExploreOptions& options) {
  const std::size_t groups = g.group_count();
  if (groups > options.group_cap || groups >= 63) {
    throw TooManyGroupsError("exhaustive sweep over " + std::to_string(groups) +
                             " groups exceeds the cap of " + std::to_string(options.group_cap) +
                             "; use the hop-and-skip strategy");
  }
  Stopwatch clock;
  Exploration out;
  out.strategy = "xs";
  const std::size_t count = std::size_t{1} << groups;
  out.points.resize(count);
  parallel_for(count, options.workers, [&](std::size_t mask) {
    DecisionVector x = DecisionVector::from_mask(mask, groups);
    Rational period = min_period(g, x);
    Rational energy = total_energy(g, period, x);
    out.points[mask] = ExploredPoint{period, energy, std::move(x)};
  });
  out.stats.lp_calls = count;
  out.stats.seconds = clock.seconds();
  return out;
}

Exploration dse_ps(const MarkedGraph& g, const ExploreOptions& options) {
  Stopwatch clock;
  Exploration out;
  out.strategy = "ps";
  const std::size_t groups = g.group_count();
  const DecisionVector all_aa(groups, false);
  const Rational p_min = min_period(g, all_aa);
  const Rational p_max = min_period(g, DecisionVector(groups, true));
  out.stats.lp_calls = 2;

  std::int64_t lo = std::max<std::int64_t>(p_min.ceil(), 1);
  std::int64_t hi = p_max.floor();
  std::size_t count = hi >= lo ? static_cast<std::size_t>(hi - lo + 1) : 0;
  std::vector<ExploredPoint> swept(count);
  std::vector<MilpStats> stats(count);
  parallel_for(count, options.workers, [&](std::size_t i) {
    Rational period(lo + static_cast<std::int64_t>(i));
    MilpResult r = min_energy_config(g, period);
    stats[i] = r.stats;
    if (!r) throw Error("period sweep hit an infeasible period " + period.str());
    swept[i] = ExploredPoint{period, r.optimum->energy, r.optimum->x};
  });
  if (!p_min.is_integer() && p_min.sign() > 0) {
    out.points.push_back({p_min, total_energy(g, p_min, all_aa), all_aa, true});
  }
  for (auto& p : swept) out.points.push_back(std::move(p));
  out.stats.milp_calls = count;
  for (const MilpStats& s : stats) {
    out.stats.milp_nodes += s.nodes;
    out.stats.lp_calls += s.feasibility_checks;
  }
  out.stats.seconds = clock.seconds();
  return out;
}

Exploration dse_hs(const MarkedGraph& g, const Rational& epsilon, const ExploreOptions&) {
  if (epsilon.sign() <= 0) throw InvalidArgumentError("epsilon must be positive");
  Stopwatch clock;
  Exploration out;
  out.strategy = "hs";
  const std::size_t groups = g.group_count();
  const Rational p_min = min_period(g, DecisionVector(groups, false));
  Rational period = min_period(g, DecisionVector(groups, true));
  out.stats.lp_calls = 2;

  while (period >= p_min && period.sign() > 0) {
    MilpResult hop = min_energy_config(g, period);
    ++out.stats.milp_calls;
    out.stats.milp_nodes += hop.stats.nodes;
    out.stats.lp_calls += hop.stats.feasibility_checks;
    if (!hop) throw Error("hop step hit an infeasible period " + period.str());
    const DecisionVector& x = hop.optimum->x;
    Rational skipped = min_period(g, x);
    ++out.stats.lp_calls;
    bool duplicate = std::any_of(out.points.begin(), out.points.end(), [&](const ExploredPoint& p) {
      return p.period == skipped && p.x == x;
    });
    if (!duplicate) out.points.push_back({skipped, total_energy(g, skipped, x), x});
    period = skipped - epsilon;
  }
  out.stats.seconds = clock.seconds();
  return out;
}

}  // namespace hopskip
