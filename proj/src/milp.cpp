#include "hopskip/milp.hpp"

#include <algorithm>
#include <numeric>

#include "hopskip/energy.hpp"
#include "hopskip/errors.hpp"

namespace hopskip {
namespace {

struct GroupEnergy {
  Rational aa;
  std::optional<Rational> sp;  // empty when w + d + s exceeds P for a member

  Rational cheapest() const { return sp && *sp <= aa ? *sp : aa; }
  bool prefers_sp() const { return sp && *sp <= aa; }
};

std::vector<GroupEnergy> group_energies(const MarkedGraph& g, const Rational& period) {
  std::vector<GroupEnergy> out(g.group_count(), GroupEnergy{Rational(0), Rational(0)});
  for (const ActorSpec& a : g.actors()) {
    GroupEnergy& e = out[a.group];
    e.aa += energy_aa(a, period);
    if (e.sp) {
      if (period >= Rational(a.wakeup + a.exec_time + a.shutdown)) {
        *e.sp += energy_sp(a, period);
      } else {
        e.sp.reset();
      }
    }
  }
  return out;
}

DecisionVector completion(const PartialAssignment& partial, bool undecided_value) {
  DecisionVector x(partial.size());
  for (std::size_t i = 0; i < partial.size(); ++i) {
    x.set(i, partial[i] == Assignment::undecided ? undecided_value
                                                 : partial[i] == Assignment::self_powered);
  }
  return x;
}

void check_partial(const MarkedGraph& g, const PartialAssignment& partial) {
  if (partial.size() != g.group_count()) {
    throw DimensionMismatchError("partial assignment does not match the graph's groups");
  }
}

class BranchAndBound {
 public:
  BranchAndBound(const MarkedGraph& g, const Rational& period, MilpStats& stats)
      : g_(g), period_(period), stats_(stats), energy_(group_energies(g, period)) {
    const std::size_t n = g.group_count();
    partial_.assign(n, Assignment::undecided);
    undecided_floor_ = Rational(0);
    for (std::size_t k = 0; k < n; ++k) {
      if (!energy_[k].sp) {
        partial_[k] = Assignment::always_active;
        decided_ += energy_[k].aa;
      } else {
        order_.push_back(k);
        undecided_floor_ += energy_[k].cheapest();
      }
    }
    std::stable_sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
      return leverage(a) > leverage(b);
    });
  }

  std::optional<EnergyOptimum> solve() {
    search(0);
    if (!best_x_) return std::nullopt;
    ScheduleResult s = schedule_for(g_, *best_x_, period_);
    return EnergyOptimum{*best_x_, std::move(*s.schedule), best_energy_};
  }

 private:
  Rational leverage(std::size_t k) const { return abs(energy_[k].aa - *energy_[k].sp); }

  bool feasible(const DecisionVector& x) {
    ++stats_.feasibility_checks;
    return is_feasible(g_, x, period_);
  }

  void offer(const DecisionVector& x, const Rational& energy) {
    if (!best_x_ || energy < best_energy_ ||
        (energy == best_energy_ && preferred_configuration(x, *best_x_))) {
      best_x_ = x;
      best_energy_ = energy;
    }
  }

  void search(std::size_t depth) {
    ++stats_.nodes;
    const Rational bound = decided_ + undecided_floor_;
    if (best_x_ && bound > best_energy_) return;

    // Cheapest completion; if it is feasible nothing below can beat it.
    DecisionVector greedy(partial_.size());
    for (std::size_t k = 0; k < partial_.size(); ++k) {
      greedy.set(k, partial_[k] == Assignment::undecided ? energy_[k].prefers_sp()
                                                         : partial_[k] == Assignment::self_powered);
    }
    if (feasible(greedy)) {
      offer(greedy, bound);
      return;
    }
    if (depth == order_.size()) return;
    if (!feasible(completion(partial_, false))) return;

    const std::size_t k = order_[depth];
    const GroupEnergy& e = energy_[k];
    const bool sp_first = e.prefers_sp();
    undecided_floor_ -= e.cheapest();
    for (bool sp : {sp_first, !sp_first}) {
      partial_[k] = sp ? Assignment::self_powered : Assignment::always_active;
      const Rational cost = sp ? *e.sp : e.aa;
      decided_ += cost;
      search(depth + 1);
      decided_ -= cost;
    }
    partial_[k] = Assignment::undecided;
    undecided_floor_ += e.cheapest();
  }

  const MarkedGraph& g_;
  Rational period_;
  MilpStats& stats_;
  std::vector<GroupEnergy> energy_;
  std::vector<std::size_t> order_;
  PartialAssignment partial_;
  Rational decided_{0};
  Rational undecided_floor_{0};
  std::optional<DecisionVector> best_x_;
  Rational best_energy_{0};
};

}  // namespace

MilpResult min_energy_config(const MarkedGraph& g, const Rational& period) {
  if (period.sign() <= 0) throw InvalidArgumentError("period must be positive");
  MilpResult out;
  ++out.stats.feasibility_checks;
  ScheduleResult root = schedule_for(g, DecisionVector(g.group_count(), false), period);
  if (!root) {
    out.witness = std::move(root.witness);
    return out;
  }
  BranchAndBound bnb(g, period, out.stats);
  out.optimum = bnb.solve();
  return out;
}

Rational relaxation_bound(const MarkedGraph& g, const Rational& period,
                          const PartialAssignment& partial) {
  check_partial(g, partial);
  std::vector<GroupEnergy> energy = group_energies(g, period);
  Rational sum(0);
  for (std::size_t k = 0; k < partial.size(); ++k) {
    switch (partial[k]) {
      case Assignment::always_active:
        sum += energy[k].aa;
        break;
      case Assignment::self_powered:
        if (!energy[k].sp) {
          // Surface the offending actor.
          for (const ActorSpec& a : g.actors()) {
            if (a.group == k) energy_sp(a, period);
          }
        }
        sum += *energy[k].sp;
        break;
      case Assignment::undecided:
        sum += energy[k].cheapest();
        break;
    }
  }
  return sum;
}

PruneVerdict feasibility_prune(const MarkedGraph& g, const Rational& period,
                               const PartialAssignment& partial) {
  check_partial(g, partial);
  return is_feasible(g, completion(partial, false), period) ? PruneVerdict::feasible_possible
                                                            : PruneVerdict::provably_infeasible;
}

}  // namespace hopskip
