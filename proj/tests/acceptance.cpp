// Acceptance checks. One PASS/FAIL line per criterion; exits nonzero when
// any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "hopskip/dse.hpp"
#include "hopskip/energy.hpp"
#include "hopskip/errors.hpp"
#include "hopskip/generate.hpp"
#include "hopskip/metrics.hpp"
#include "hopskip/milp.hpp"
#include "hopskip/sdf.hpp"
#include "hopskip/sdf3.hpp"
#include "hopskip/timing.hpp"
#include "support.hpp"

using namespace hopskip;

namespace {

// Wall-clock limits in seconds.
constexpr double kLimitC1 = 1, kLimitC2 = 1, kLimitC3 = 1, kLimitC4 = 60, kLimitC5 = 300, kLimitC6 = 30,
                 kLimitC7 = 10, kLimitC8 = 60, kLimitC9 = 1, kLimitC10 = 30;

struct Outcome {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

template <class T>
std::string str(const T& v) {
  std::ostringstream o;
  o << v;
  return o.str();
}

int failures = 0;

void run(int id, double limit, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome r;
  try {
    r = body();
  } catch (const std::exception& e) {
    r.ok = false;
    r.detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (r.ok && secs > limit) {
    r.ok = false;
    r.detail += " (over time limit)";
  }
  if (!r.ok) ++failures;
  std::printf("[%s] C%d %s (%.3f s, limit %.0f s)\n", r.ok ? "PASS" : "FAIL", id, r.detail.c_str(), secs, limit);
  std::fflush(stdout);
}

// HV ratio 1, or both normalized hypervolumes zero with the reference
// weakly covered. Counts each case.
struct HvTally {
  int exact = 0, degenerate = 0, below = 0;
  Rational worst{1};
  void add(const Front& app, const Front& ref) {
    try {
      const Rational r = compare_fronts(app, ref);
      if (r == 1) {
        ++exact;
      } else {
        ++below;
        worst = std::min(worst, r);
      }
    } catch (const DegenerateError&) {
      if (weakly_covers(app, ref)) {
        ++degenerate;
      } else {
        ++below;
        worst = 0;
      }
    }
  }
  int ones() const { return exact + degenerate; }
  std::string text() const {
    return str(exact) + " exact, " + str(degenerate) + " degenerate-covered, " + str(below) + " below 1";
  }
};

bool same(const Front& f, const std::vector<testing::OraclePoint>& o) {
  if (f.size() != o.size()) return false;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i].period != o[i].period || f[i].energy != o[i].energy) return false;
  }
  return true;
}

Outcome c1() {
  Outcome r;
  auto g = testing::load_fixture("aec");
  const Rational lo = min_period(g, DecisionVector(6)), hi = min_period(g, DecisionVector(6, true));
  r.require(lo == Rational(23, 1), "P(0) = " + str(lo));
  r.require(hi == Rational(27, 1), "P(1) = " + str(hi));
  r.detail = r.ok ? "AEC P(0) = 23/1, P(1) = 27/1" : r.detail;
  return r;
}

Outcome c2() {
  Outcome r;
  auto g = testing::load_fixture("aec");
  const std::vector<Rational> tau{0, 4, 7, 10, 19, 6};
  Schedule s{23, tau, ScheduleAnchor::execution_start};
  auto v = verify_schedule(g, DecisionVector::parse("100001"), s);
  r.require(v.empty(), v.empty() ? "" : v.front().describe(g));
  r.detail = r.ok ? "tau = (0,4,7,10,19,6) at P = 23, x = 100001 accepted (execution-start times)" : r.detail;
  return r;
}

Outcome c3() {
  Outcome r;
  auto g = testing::load_fixture("aec");
  auto m = min_energy_config(g, 23);
  r.require(m.optimum.has_value(), "infeasible at 23");
  if (!r.ok) return r;
  // Exhaustive scan over 2^6 with the same tie rule.
  std::optional<Rational> best;
  DecisionVector best_x(6);
  for (std::uint64_t k = 0; k < 64; ++k) {
    auto x = DecisionVector::from_mask(k, 6);
    auto p = testing::oracle_min_period(g, x);
    if (!p || *p > 23) continue;
    auto e = testing::oracle_energy(g, 23, x);
    if (!best || e < *best || (e == *best && preferred_configuration(x, best_x))) {
      best = e;
      best_x = x;
    }
  }
  r.require(m.optimum->x.str() == "100001", "x = " + m.optimum->x.str());
  r.require(best && best_x == m.optimum->x && *best == m.optimum->energy,
            "brute force disagrees: " + best_x.str());
  r.detail = r.ok ? "x = 100001, E = " + str(m.optimum->energy) + " matches 2^6 scan" : r.detail;
  return r;
}

Outcome c4() {
  Outcome r;
  std::mt19937_64 rng(4004);
  HvTally hv;
  for (int t = 0; t < 50 && r.ok; ++t) {
    const std::size_t groups = 2 + t % 7;
    const std::size_t n = groups + t % 3;
    auto g = testing::random_marked_graph(rng, n, groups, 0.35, t % 2 == 0);
    auto f = pareto_filter(dse_xs(g).points);
    auto oracle = testing::oracle_front(g);
    r.require(same(f, oracle), "front mismatch on graph " + str(t));
    std::vector<ExploredPoint> ref;
    for (const auto& o : oracle) ref.push_back({o.period, o.energy, DecisionVector(groups)});
    hv.add(f, Front(ref));
  }
  r.require(hv.below == 0, "HV < 1: " + hv.text());
  r.detail = r.ok ? "50/50 fronts equal the brute force; HV: " + hv.text() : r.detail;
  return r;
}

Outcome c5() {
  Outcome r;
  HvTally coarse, fine, ps_int;
  int integral = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    GeneratorParams p;
    p.seed = seed;
    p.actors = 8;
    p.repetition_sum = 40;
    p.rate_max = 6;
    auto g = unroll(generate_random(p)).graph;
    auto ref = pareto_filter(dse_xs(g).points);
    coarse.add(pareto_filter(dse_hs(g, Rational(1, 10)).points), ref);
    fine.add(pareto_filter(dse_hs(g, Rational(1, 100)).points), ref);
    bool all_int = true;
    for (const auto& q : ref) all_int = all_int && q.period.is_integer();
    if (all_int) {
      ++integral;
      ps_int.add(pareto_filter(dse_ps(g).points), ref);
    }
  }
  r.require(coarse.ones() >= 19, "HS(1/10): " + coarse.text());
  r.require(fine.ones() == 20, "HS(1/100): " + fine.text());
  r.require(ps_int.below == 0, "PS on integral fronts: " + ps_int.text());

  auto rc = testing::load_fixture("rational_cycle");
  auto rc_ref = pareto_filter(dse_xs(rc).points);
  const Rational rc_ps = compare_fronts(pareto_filter(dse_ps(rc).points), rc_ref);
  r.require(rc_ps < 1, "PS on the rational fixture reaches " + str(rc_ps));
  r.detail = r.ok ? "HS(1/10) " + str(coarse.ones()) + "/20, HS(1/100) " + str(fine.ones()) + "/20 [" +
                        fine.text() + "]; PS 1 on " + str(ps_int.ones()) + "/" + str(integral) +
                        " integral fronts; PS on rational fixture " + str(rc_ps)
                  : r.detail;
  return r;
}

Outcome c6() {
  Outcome r;
  std::mt19937_64 rng(6006);
  int deadlocks = 0;
  for (int t = 0; t < 100 && r.ok; ++t) {
    const std::size_t n = 1 + t % 12;
    auto g = testing::random_marked_graph(rng, n, n, 0.3, t % 2 == 0);
    auto x = DecisionVector::from_mask(rng(), n);
    auto want = testing::oracle_min_period(g, x);
    if (!want) {
      ++deadlocks;
      bool threw = false;
      try {
        min_period(g, x);
      } catch (const DeadlockError&) {
        threw = true;
      }
      r.require(threw, "no deadlock reported on graph " + str(t));
      continue;
    }
    const Rational got = min_period(g, x);
    r.require(got == *want, "graph " + str(t) + ": " + str(got) + " vs " + str(*want));
  }
  r.detail = r.ok ? "100/100 equal to cycle enumeration (" + str(deadlocks) + " deadlocked)" : r.detail;
  return r;
}

Outcome c7() {
  Outcome r;
  std::mt19937_64 rng(7007);
  std::uniform_int_distribution<std::int64_t> small(0, 12), num(0, 40), den(1, 8), pos(1, 40);
  for (int i = 0; i < 1000 && r.ok; ++i) {
    ActorSpec a{0, "a", small(rng), small(rng), small(rng), {}, 0};
    a.power = {Rational(num(rng), den(rng)), Rational(num(rng), den(rng)), Rational(num(rng), den(rng)),
               Rational(num(rng), den(rng)), Rational(num(rng), den(rng))};
    const bool sp = rng() % 2 == 0;
    const std::int64_t need = a.exec_time + (sp ? a.wakeup + a.shutdown : 0);
    const Rational p = Rational(need) + Rational(num(rng), den(rng));
    Rational sum(0);
    for (const auto& s : power_profile(a, sp, p, Rational(num(rng), den(rng)))) sum += s.duration * s.power;
    // Closed forms written out here rather than taken from the library.
    const Rational want =
        sp ? a.power.wu * a.wakeup + a.power.exe * a.exec_time + a.power.sd * a.shutdown +
                 a.power.slp * (p - Rational(a.wakeup + a.exec_time + a.shutdown))
           : a.power.exe * a.exec_time + a.power.idle * (p - Rational(a.exec_time));
    r.require(sum == want, "triple " + str(i) + ": " + str(sum) + " vs " + str(want));
  }
  for (int t = 0; t < 100 && r.ok; ++t) {
    auto g = testing::random_marked_graph(rng, 6, 6, 0.3);
    auto x = DecisionVector::from_mask(rng(), 6);
    Rational p0(0);
    for (const auto& a : g.actors()) p0 = std::max(p0, Rational(a.exec_time + a.wakeup + a.shutdown));
    const Rational step(pos(rng), den(rng));
    const Rational e0 = total_energy(g, p0, x), e1 = total_energy(g, p0 + step, x),
                   e2 = total_energy(g, p0 + step * 2, x);
    r.require(e0 < e1 && e1 < e2, "not strictly increasing on graph " + str(t));
    r.require(e2 - e1 == e1 - e0, "not affine on graph " + str(t));
  }
  r.detail = r.ok ? "1000 profile integrals exact; 100 graphs affine and strictly increasing" : r.detail;
  return r;
}

Outcome c8() {
  Outcome r;
  auto sdf = load_sdf3(testing::data_path("samplerate.xml"), testing::data_path("samplerate.annotations.json"));
  auto g = unroll(sdf).graph;
  r.require(sdf.actors.size() == 6, "SDF actors " + str(sdf.actors.size()));
  r.require(g.actor_count() == 612, "|A| = " + str(g.actor_count()));
  auto xs = dse_xs(g);
  r.require(xs.points.size() == 64, "XS points " + str(xs.points.size()));
  auto hs = dse_hs(g, Rational(1, 10));
  r.require(hs.points.size() == 4, "HS points " + str(hs.points.size()));
  auto front = pareto_filter(hs.points);
  r.require(front.size() == 2, "HS non-dominated " + str(front.size()));
  r.detail = r.ok ? "612 actors, XS 64 points, HS 4 points, 2 non-dominated" : r.detail;
  return r;
}

Outcome c9() {
  Outcome r;
  using P = NormalizedPoint;
  const Rational h = Rational(1, 2);
  r.require(hypervolume(std::vector<P>{{0, 0}}) == 1, "{(0,0)}");
  r.require(hypervolume(std::vector<P>{{h, h}}) == Rational(1, 4), "{(.5,.5)}");
  r.require(hypervolume(std::vector<P>{{0, h}, {h, 0}}) == Rational(3, 4), "{(0,.5),(.5,0)}");
  r.detail = r.ok ? "1, 1/4, 3/4" : r.detail;
  return r;
}

Outcome c10() {
  Outcome r;
  std::mt19937_64 rng(1010);
  for (int t = 0; t < 40 && r.ok; ++t) {
    const std::size_t groups = 1 + t % 6;
    auto g = testing::random_marked_graph(rng, groups + t % 3, groups, 0.35, t % 2 == 0);
    const std::uint64_t total = std::uint64_t{1} << groups;
    std::vector<Rational> periods(total);
    for (std::uint64_t m = 0; m < total; ++m) periods[m] = min_period(g, DecisionVector::from_mask(m, groups));
    for (std::uint64_t m = 0; m < total; ++m) {
      for (std::size_t b = 0; b < groups; ++b) {
        const std::uint64_t up = m | (std::uint64_t{1} << b);
        r.require(periods[up] >= periods[m], "raising a bit lowered P on graph " + str(t));
      }
    }
    // Probe every breakpoint, the midpoints between them and both ends.
    std::vector<Rational> probes(periods);
    std::sort(probes.begin(), probes.end());
    probes.erase(std::unique(probes.begin(), probes.end()), probes.end());
    const std::size_t k = probes.size();
    for (std::size_t i = 0; i + 1 < k; ++i) probes.push_back((probes[i] + probes[i + 1]) / 2);
    probes.push_back(probes.front() - Rational(1, 3));
    probes.push_back(probes[k - 1] + 1);
    std::sort(probes.begin(), probes.end());
    std::vector<bool> prev(total, false);
    for (const Rational& p : probes) {
      if (p.sign() <= 0) continue;
      for (std::uint64_t m = 0; m < total; ++m) {
        const bool ok = is_feasible(g, DecisionVector::from_mask(m, groups), p);
        r.require(!prev[m] || ok, "feasible set shrank on graph " + str(t));
        r.require(ok == (periods[m] <= p), "feasibility disagrees with min period on graph " + str(t));
        prev[m] = ok;
      }
    }
  }
  r.detail = r.ok ? "40 graphs up to 6 groups: bit monotonicity and feasible-set inclusion hold" : r.detail;
  return r;
}

}  // namespace

int main() {
  run(1, kLimitC1, c1);
  run(2, kLimitC2, c2);
  run(3, kLimitC3, c3);
  run(4, kLimitC4, c4);
  run(5, kLimitC5, c5);
  run(6, kLimitC6, c6);
  run(7, kLimitC7, c7);
  run(8, kLimitC8, c8);
  run(9, kLimitC9, c9);
  run(10, kLimitC10, c10);
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
