#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "hopskip/graph.hpp"
#include "hopskip/rational.hpp"
#include "hopskip/timing.hpp"

namespace hopskip {

enum class Assignment : std::uint8_t { always_active, self_powered, undecided };

/// One entry per decision group.
using PartialAssignment = std::vector<Assignment>;

struct EnergyOptimum {
  DecisionVector x;
  Schedule schedule;
  Rational energy;
};

struct MilpStats {
  std::size_t nodes = 0;
  std::size_t feasibility_checks = 0;
};

struct MilpResult {
  std::optional<EnergyOptimum> optimum;
  /// Cycle that binds even with every group always-active, when infeasible.
  std::vector<std::size_t> witness;
  MilpStats stats;
  explicit operator bool() const { return optimum.has_value(); }
};

/// Exact minimum-energy configuration sustaining period P. Branch-and-bound
/// over decision groups: groups with the largest |E_aa - E_sp| are branched
/// first, the cheaper mode is tried first, subtrees are cut by an energy lower
/// bound and by infeasibility of the least-constraining completion. Among
/// equal-energy optima the configuration with more self-powered groups wins,
/// then the lexicographically smallest bit string.
MilpResult min_energy_config(const MarkedGraph& g, const Rational& period);

/// Energy of the decided groups plus, for every undecided group, the cheaper
/// of its two modes at P. A mode whose delays do not fit into P is skipped
/// for undecided groups. Never exceeds the energy of any completion.
Rational relaxation_bound(const MarkedGraph& g, const Rational& period,
                          const PartialAssignment& partial);

enum class PruneVerdict { feasible_possible, provably_infeasible };

/// Sets undecided groups always-active (the least-constraining completion) and
/// checks feasibility at P. Infeasible means every completion is infeasible.
PruneVerdict feasibility_prune(const MarkedGraph& g, const Rational& period,
                               const PartialAssignment& partial);

}  // namespace hopskip
