#pragma once

#include <string_view>
#include <vector>

#include "hopskip/graph.hpp"
#include "hopskip/rational.hpp"

namespace hopskip {

/// Energy per iteration of an always-active actor: exe*d + idle*(P - d).
/// Throws PeriodTooShortError when P < d.
Rational energy_aa(const ActorSpec& a, const Rational& period);

/// Energy per iteration of a self-powered actor:
/// wu*w + exe*d + sd*s + slp*(P - w - d - s).
/// Throws PeriodTooShortError when P < w + d + s.
Rational energy_sp(const ActorSpec& a, const Rational& period);

inline Rational actor_energy(const ActorSpec& a, bool self_powered, const Rational& period) {
  return self_powered ? energy_sp(a, period) : energy_aa(a, period);
}

/// Energy of a hybrid implementation: the sum over all actors of the energy
/// of the mode chosen for the actor's group.
Rational total_energy(const MarkedGraph& g, const Rational& period, const DecisionVector& x);

enum class Phase { wakeup, execution, shutdown, sleep, idle };

std::string_view phase_name(Phase p);

struct ProfileSegment {
  Phase kind;
  Rational start;
  Rational duration;
  Rational power;
};

/// Phases of one period beginning at `start` (the instant the actor becomes
/// fireable). Zero-length phases are omitted.
std::vector<ProfileSegment> power_profile(const ActorSpec& a, bool self_powered,
                                          const Rational& period, const Rational& start);

}  // namespace hopskip
