#pragma once

// Fixtures and brute-force oracles shared by the unit and acceptance tests.
// The oracles only read raw actor fields (d, w, s, powers) and never call the
// library's timing, energy or dse code.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "hopskip/graph.hpp"
#include "hopskip/rational.hpp"
#include "hopskip/sdf3.hpp"

namespace testing {

using hopskip::ActorSpec;
using hopskip::Channel;
using hopskip::DecisionVector;
using hopskip::MarkedGraph;
using hopskip::PowerParams;
using hopskip::Rational;

inline std::string data_path(const std::string& name) { return std::string(HOPSKIP_DATA_DIR) + "/" + name; }

inline PowerParams normalized_powers(std::int64_t psi = 1) {
  return {Rational(psi), Rational(9 * psi, 10), Rational(psi, 2), Rational(psi, 2), Rational(psi, 10)};
}

// AEC topology: a1 -> a2 -> a3 -> a4 -> a5, a5 -> a2 with one token,
// a6 feeding a4 and a5.
inline MarkedGraph aec() {
  const std::int64_t d[] = {4, 3, 3, 9, 8, 4};
  std::vector<ActorSpec> actors;
  for (std::size_t i = 0; i < 6; ++i) {
    actors.push_back({i, "a" + std::to_string(i + 1), d[i], 1, 2, normalized_powers(), i});
  }
  std::vector<Channel> channels{{0, 1, 0}, {1, 2, 0}, {2, 3, 0}, {5, 3, 0}, {3, 4, 0}, {5, 4, 0}, {4, 1, 1}};
  return MarkedGraph(actors, channels, 6);
}

inline MarkedGraph load_fixture(const std::string& stem) {
  auto sdf = hopskip::load_sdf3(data_path(stem + ".xml"), data_path(stem + ".annotations.json"));
  return hopskip::unroll(sdf).graph;
}

// ---- cycle oracle -----------------------------------------------------------

// Calls visit(actors, tokens) once per simple directed cycle, each cycle
// rooted at its smallest actor id.
inline void for_each_simple_cycle(const MarkedGraph& g,
                                  const std::function<void(const std::vector<std::size_t>&,
                                                           std::int64_t)>& visit) {
  const std::size_t n = g.actor_count();
  std::vector<std::vector<std::pair<std::size_t, std::int64_t>>> out(n);
  for (const Channel& c : g.channels()) out[c.src].push_back({c.dst, c.tokens});
  std::vector<std::size_t> path;
  std::vector<bool> on_path(n, false);
  std::function<void(std::size_t, std::size_t, std::int64_t)> dfs = [&](std::size_t root, std::size_t v,
                                                                       std::int64_t tokens) {
    for (auto [w, t] : out[v]) {
      if (w == root) {
        visit(path, tokens + t);
      } else if (w > root && !on_path[w]) {
        on_path[w] = true;
        path.push_back(w);
        dfs(root, w, tokens + t);
        path.pop_back();
        on_path[w] = false;
      }
    }
  };
  for (std::size_t r = 0; r < n; ++r) {
    path = {r};
    on_path[r] = true;
    dfs(r, r, 0);
    on_path[r] = false;
  }
}

// Maximum of the cycle ratios (sum of d + x*w over tokens) and of the
// self bounds d + x*(w + s). Empty optional for a token-free cycle.
inline std::optional<Rational> oracle_min_period(const MarkedGraph& g, const DecisionVector& x) {
  Rational best(0);
  for (const ActorSpec& a : g.actors()) {
    const std::int64_t sb = a.exec_time + (x[a.group] ? a.wakeup + a.shutdown : 0);
    best = std::max(best, Rational(sb));
  }
  bool dead = false;
  for_each_simple_cycle(g, [&](const std::vector<std::size_t>& cyc, std::int64_t tokens) {
    std::int64_t weight = 0;
    for (std::size_t v : cyc) {
      const ActorSpec& a = g.actor(v);
      weight += a.exec_time + (x[a.group] ? a.wakeup : 0);
    }
    if (tokens == 0) {
      dead = true;
      return;
    }
    best = std::max(best, Rational(weight, tokens));
  });
  if (dead) return std::nullopt;
  return best;
}

inline Rational oracle_energy(const MarkedGraph& g, const Rational& p, const DecisionVector& x) {
  Rational e(0);
  for (const ActorSpec& a : g.actors()) {
    const PowerParams& pw = a.power;
    if (x[a.group]) {
      e += pw.wu * a.wakeup + pw.exe * a.exec_time + pw.sd * a.shutdown +
           pw.slp * (p - a.wakeup - a.exec_time - a.shutdown);
    } else {
      e += pw.exe * a.exec_time + pw.idle * (p - a.exec_time);
    }
  }
  return e;
}

struct OraclePoint {
  Rational period;
  Rational energy;
  friend bool operator==(const OraclePoint&, const OraclePoint&) = default;
};

// True Pareto front by brute force over both axes: every per-x minimum
// period is a candidate P, and at each candidate the cheapest x feasible
// there is found by scanning all vectors. Dominated candidates are removed
// by pairwise comparison.
inline std::vector<OraclePoint> oracle_front(const MarkedGraph& g) {
  const std::size_t groups = g.group_count();
  std::vector<std::pair<DecisionVector, Rational>> per_x;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << groups); ++m) {
    DecisionVector x = DecisionVector::from_mask(m, groups);
    per_x.emplace_back(x, *oracle_min_period(g, x));
  }
  std::vector<Rational> candidates;
  for (auto& [x, p] : per_x) candidates.push_back(p);
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  std::vector<OraclePoint> pts;
  for (const Rational& p : candidates) {
    std::optional<Rational> best;
    for (auto& [x, px] : per_x) {
      if (px > p) continue;
      Rational e = oracle_energy(g, p, x);
      if (!best || e < *best) best = e;
    }
    pts.push_back({p, *best});
  }
  std::vector<OraclePoint> front;
  for (const auto& a : pts) {
    bool dominated = false;
    for (const auto& b : pts) {
      if (!(b == a) && b.period <= a.period && b.energy <= a.energy) dominated = true;
    }
    if (!dominated) front.push_back(a);
  }
  std::sort(front.begin(), front.end(), [](auto& a, auto& b) { return a.period < b.period; });
  return front;
}

// ---- random instances ----------------------------------------------------------

// Live marked graph: channels towards a smaller id always carry a token.
inline MarkedGraph random_marked_graph(std::mt19937_64& rng, std::size_t n, std::size_t groups,
                                       double density, bool small_delays = true) {
  auto pick = [&](std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
  };
  std::vector<ActorSpec> actors;
  for (std::size_t i = 0; i < n; ++i) {
    ActorSpec a;
    a.id = i;
    a.name = "v" + std::to_string(i);
    a.exec_time = pick(0, 9);
    a.wakeup = pick(0, small_delays ? 2 : 6);
    a.shutdown = pick(0, small_delays ? 3 : 6);
    a.power = {Rational(pick(5, 20), 4), Rational(pick(2, 15), 4), Rational(pick(0, 8), 4),
               Rational(pick(0, 8), 4), Rational(pick(1, 4), 8)};
    a.group = groups == n ? i : static_cast<std::size_t>(pick(0, static_cast<std::int64_t>(groups) - 1));
    actors.push_back(a);
  }
  if (groups < n) {
    // Every group owns at least one actor.
    for (std::size_t k = 0; k < groups; ++k) actors[k].group = k;
  }
  std::vector<Channel> channels;
  std::bernoulli_distribution coin(density);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || !coin(rng)) continue;
      const std::int64_t tokens = j < i ? pick(1, 3) : pick(0, 1) * pick(0, 2);
      channels.push_back({i, j, tokens});
    }
  }
  if (coin(rng)) channels.push_back({0, 0, 1});
  return MarkedGraph(actors, channels, groups);
}

}  // namespace testing
