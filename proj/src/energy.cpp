#include "hopskip/energy.hpp"

#include "hopskip/errors.hpp"

namespace hopskip {
namespace {

[[noreturn]] void too_short(const ActorSpec& a, const Rational& period, std::int64_t need) {
  throw PeriodTooShortError("period " + period.str() + " is shorter than " +
                                std::to_string(need) + " required by actor '" + a.name + "'",
                            a.id);
}

}  // namespace

Rational energy_aa(const ActorSpec& a, const Rational& period) {
  if (period < Rational(a.exec_time)) too_short(a, period, a.exec_time);
  const Rational d(a.exec_time);
  return a.power.exe * d + a.power.idle * (period - d);
}

Rational energy_sp(const ActorSpec& a, const Rational& period) {
  const std::int64_t busy = a.wakeup + a.exec_time + a.shutdown;
  if (period < Rational(busy)) too_short(a, period, busy);
  return a.power.wu * Rational(a.wakeup) + a.power.exe * Rational(a.exec_time) +
         a.power.sd * Rational(a.shutdown) + a.power.slp * (period - Rational(busy));
}

Rational total_energy(const MarkedGraph& g, const Rational& period, const DecisionVector& x) {
  if (x.size() != g.group_count()) {
    throw DimensionMismatchError("decision vector does not match the graph's groups");
  }
  Rational sum(0);
  for (const ActorSpec& a : g.actors()) sum += actor_energy(a, x[a.group], period);
  return sum;
}

std::string_view phase_name(Phase p) {
  switch (p) {
    case Phase::wakeup: return "wakeup";
    case Phase::execution: return "execution";
    case Phase::shutdown: return "shutdown";
    case Phase::sleep: return "sleep";
    case Phase::idle: return "idle";
  }
  return "?";
}

std::vector<ProfileSegment> power_profile(const ActorSpec& a, bool self_powered,
                                          const Rational& period, const Rational& start) {
  std::vector<ProfileSegment> out;
  Rational t = start;
  auto push = [&](Phase kind, const Rational& duration, const Rational& power) {
    if (duration.is_zero()) return;
    out.push_back({kind, t, duration, power});
    t += duration;
  };
  if (self_powered) {
    const std::int64_t busy = a.wakeup + a.exec_time + a.shutdown;
    if (period < Rational(busy)) too_short(a, period, busy);
    push(Phase::wakeup, Rational(a.wakeup), a.power.wu);
    push(Phase::execution, Rational(a.exec_time), a.power.exe);
    push(Phase::shutdown, Rational(a.shutdown), a.power.sd);
    push(Phase::sleep, period - Rational(busy), a.power.slp);
  } else {
    if (period < Rational(a.exec_time)) too_short(a, period, a.exec_time);
    push(Phase::execution, Rational(a.exec_time), a.power.exe);
    push(Phase::idle, period - Rational(a.exec_time), a.power.idle);
  }
  return out;
}

}  // namespace hopskip
