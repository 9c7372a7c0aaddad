#include "hopskip/timing.hpp"

#include <algorithm>
#include <limits>

#include "hopskip/errors.hpp"

namespace hopskip {
namespace {

using wide = __int128;

// Channel (i -> j, delta) yields tau_i - tau_j <= delta*P - weight_i, i.e. a
// shortest-path edge j -> i. Edges are stored grouped by j, then by channel
// index, which fixes the relaxation order.
struct ConstraintEdge {
  std::size_t from;
  std::size_t to;
  std::int64_t tokens;
  std::int64_t weight;
  std::size_t channel;
};

std::vector<ConstraintEdge> constraint_edges(const MarkedGraph& g, const EffectiveWeights& w) {
  const auto& channels = g.channels();
  std::vector<std::size_t> offset(g.actor_count() + 1, 0);
  for (const Channel& c : channels) ++offset[c.dst + 1];
  for (std::size_t i = 1; i < offset.size(); ++i) offset[i] += offset[i - 1];
  std::vector<ConstraintEdge> edges(channels.size());
  for (std::size_t k = 0; k < channels.size(); ++k) {
    const Channel& c = channels[k];
    edges[offset[c.dst]++] = {c.dst, c.src, c.tokens, w.edge_weight[c.src], k};
  }
  return edges;
}

struct Relaxation {
  bool feasible = true;
  std::vector<wide> dist;
  std::vector<std::size_t> cycle;  // constraint-edge indices, in walk order
};

// Bellman-Ford from a virtual source joined to every actor with cost 0, at
// period num/den with all costs scaled by den. Any cycle that appears in the
// predecessor graph is negative and is returned.
Relaxation relax(std::size_t n, const std::vector<ConstraintEdge>& edges, std::int64_t num,
                 std::int64_t den) {
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  Relaxation r;
  r.dist.assign(n, 0);
  std::vector<std::size_t> parent(n, kNone);

  auto find_parent_cycle = [&]() -> bool {
    // walk[v] = 1 + id of the walk that first reached v, 0 if unvisited.
    std::vector<std::size_t> walk(n, 0);
    for (std::size_t s = 0; s < n; ++s) {
      if (walk[s] != 0) continue;
      std::size_t v = s;
      while (v != kNone && walk[v] == 0) {
        walk[v] = s + 1;
        v = parent[v] == kNone ? kNone : edges[parent[v]].from;
      }
      if (v == kNone || walk[v] != s + 1) continue;
      const std::size_t start = v;
      std::vector<std::size_t> cyc;
      do {
        std::size_t e = parent[v];
        cyc.push_back(e);
        v = edges[e].from;
      } while (v != start);
      std::reverse(cyc.begin(), cyc.end());
      r.cycle = std::move(cyc);
      return true;
    }
    return false;
  };

  for (std::size_t pass = 0; pass <= n; ++pass) {
    bool changed = false;
    for (std::size_t k = 0; k < edges.size(); ++k) {
      const ConstraintEdge& e = edges[k];
      wide cost = wide{e.tokens} * num - wide{e.weight} * den;
      wide candidate = r.dist[e.from] + cost;
      if (candidate < r.dist[e.to]) {
        r.dist[e.to] = candidate;
        parent[e.to] = k;
        changed = true;
      }
    }
    if (!changed) return r;
    if (find_parent_cycle()) {
      r.feasible = false;
      return r;
    }
  }
  // Unreachable for exact arithmetic: a negative cycle always shows up in the
  // predecessor graph within n passes.
  throw Error("Bellman-Ford failed to converge");
}

std::int64_t narrow(wide v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min()) {
    throw OverflowError("start time exceeds 64-bit range");
  }
  return static_cast<std::int64_t>(v);
}

std::vector<std::size_t> witness_actors(const std::vector<ConstraintEdge>& edges,
                                        const std::vector<std::size_t>& cycle) {
  // Constraint edges run against the channel direction.
  std::vector<std::size_t> actors;
  for (auto it = cycle.rbegin(); it != cycle.rend(); ++it) actors.push_back(edges[*it].to);
  return actors;
}

void check_dimensions(const MarkedGraph& g, const DecisionVector& x) {
  if (x.size() != g.group_count()) {
    throw DimensionMismatchError("decision vector has " + std::to_string(x.size()) +
                                 " bits, graph has " + std::to_string(g.group_count()) +
                                 " groups");
  }
}

struct SelfBound {
  std::int64_t value = 0;
  std::size_t actor = 0;
};

SelfBound largest_self_bound(const EffectiveWeights& w) {
  SelfBound best;
  for (std::size_t i = 0; i < w.self_bound.size(); ++i) {
    if (w.self_bound[i] > best.value) best = {w.self_bound[i], i};
  }
  return best;
}

}  // namespace

EffectiveWeights effective_weights(const MarkedGraph& g, const DecisionVector& x) {
  check_dimensions(g, x);
  EffectiveWeights w;
  w.edge_weight.reserve(g.actor_count());
  w.self_bound.reserve(g.actor_count());
  for (const ActorSpec& a : g.actors()) {
    const bool sp = x[a.group];
    w.edge_weight.push_back(a.exec_time + (sp ? a.wakeup : 0));
    w.self_bound.push_back(a.exec_time + (sp ? a.wakeup + a.shutdown : 0));
  }
  return w;
}

Rational min_period(const MarkedGraph& g, const DecisionVector& x) {
  EffectiveWeights w = effective_weights(g, x);
  if (LivenessResult live = validate_liveness(g); !live) {
    throw DeadlockError("token-free cycle", live.cycle);
  }
  if (g.actor_count() == 0) return Rational(0);

  const auto edges = constraint_edges(g, w);
  Rational period(largest_self_bound(w).value);
  // Each round either certifies the period or jumps to the ratio of a cycle
  // that violates it; ratios strictly increase over a finite set.
  for (;;) {
    Relaxation r = relax(g.actor_count(), edges, period.num(), period.den());
    if (r.feasible) return period;
    std::int64_t weight = 0, tokens = 0;
    for (std::size_t e : r.cycle) {
      weight += edges[e].weight;
      tokens += edges[e].tokens;
    }
    if (tokens == 0) throw DeadlockError("token-free cycle", witness_actors(edges, r.cycle));
    Rational ratio(weight, tokens);
    if (ratio <= period) throw Error("cycle ratio iteration did not increase");
    period = ratio;
  }
}

ScheduleResult schedule_for(const MarkedGraph& g, const DecisionVector& x, const Rational& period) {
  if (period.sign() <= 0) throw InvalidArgumentError("period must be positive");
  EffectiveWeights w = effective_weights(g, x);
  ScheduleResult out;
  for (std::size_t i = 0; i < w.self_bound.size(); ++i) {
    if (Rational(w.self_bound[i]) > period) {
      out.witness = {i};
      return out;
    }
  }
  const auto edges = constraint_edges(g, w);
  Relaxation r = relax(g.actor_count(), edges, period.num(), period.den());
  if (!r.feasible) {
    out.witness = witness_actors(edges, r.cycle);
    return out;
  }
  Schedule s;
  s.period = period;
  wide lowest = 0;
  for (wide d : r.dist) lowest = std::min(lowest, d);
  s.starts.reserve(r.dist.size());
  for (wide d : r.dist) s.starts.emplace_back(narrow(d - lowest), period.den());
  out.schedule = std::move(s);
  return out;
}

bool is_feasible(const MarkedGraph& g, const DecisionVector& x, const Rational& period) {
  EffectiveWeights w = effective_weights(g, x);
  for (std::int64_t b : w.self_bound) {
    if (Rational(b) > period) return false;
  }
  const auto edges = constraint_edges(g, w);
  return relax(g.actor_count(), edges, period.num(), period.den()).feasible;
}

std::string ScheduleViolation::describe(const MarkedGraph& g) const {
  switch (kind) {
    case Kind::channel: {
      const Channel& c = g.channels().at(index);
      return "channel (" + g.actor(c.src).name + "," + g.actor(c.dst).name + "): " +
             lhs.str() + " < " + rhs.str();
    }
    case Kind::self_loop:
      return "self loop of " + g.actor(index).name + ": period " + lhs.str() + " < " + rhs.str();
    case Kind::dimension:
      return "schedule dimension mismatch";
  }
  return {};
}

std::vector<ScheduleViolation> verify_schedule(const MarkedGraph& g, const DecisionVector& x,
                                               const Schedule& sched) {
  using Kind = ScheduleViolation::Kind;
  std::vector<ScheduleViolation> out;
  if (x.size() != g.group_count() || sched.starts.size() != g.actor_count()) {
    out.push_back({Kind::dimension, 0, Rational(0), Rational(0)});
    return out;
  }
  const Rational& P = sched.period;
  const bool at_execution = sched.anchor == ScheduleAnchor::execution_start;
  for (std::size_t k = 0; k < g.channels().size(); ++k) {
    const Channel& c = g.channels()[k];
    const ActorSpec& src = g.actor(c.src);
    const ActorSpec& dst = g.actor(c.dst);
    Rational lhs = sched.starts[c.dst] + P * Rational(c.tokens);
    Rational rhs = sched.starts[c.src] + Rational(src.exec_time);
    if (at_execution) {
      if (x[dst.group]) lhs -= Rational(dst.wakeup);
    } else if (x[src.group]) {
      rhs += Rational(src.wakeup);
    }
    if (lhs < rhs) out.push_back({Kind::channel, k, lhs, rhs});
  }
  for (const ActorSpec& a : g.actors()) {
    Rational need(a.exec_time + (x[a.group] ? a.wakeup + a.shutdown : 0));
    if (P < need) out.push_back({Kind::self_loop, a.id, P, need});
  }
  return out;
}

Schedule reanchor(const MarkedGraph& g, const DecisionVector& x, const Schedule& sched,
                  ScheduleAnchor anchor) {
  check_dimensions(g, x);
  Schedule out = sched;
  out.anchor = anchor;
  if (anchor != sched.anchor) {
    const Rational sign(anchor == ScheduleAnchor::execution_start ? 1 : -1);
    for (const ActorSpec& a : g.actors()) {
      if (x[a.group]) out.starts[a.id] += sign * Rational(a.wakeup);
    }
  }
  if (!out.starts.empty()) {
    Rational lowest = *std::min_element(out.starts.begin(), out.starts.end());
    for (Rational& t : out.starts) t -= lowest;
  }
  return out;
}

}  // namespace hopskip
