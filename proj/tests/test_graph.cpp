#include <deque>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <tuple>

#include "doctest.h"
#include "hopskip/errors.hpp"
#include "hopskip/graph.hpp"
#include "hopskip/sdf.hpp"
#include "support.hpp"

using namespace hopskip;

namespace {

SdfGraph chain(std::vector<std::tuple<std::size_t, std::size_t, std::int64_t, std::int64_t, std::int64_t>> chans,
               std::size_t actors) {
  SdfGraph g;
  g.name = "t";
  for (std::size_t i = 0; i < actors; ++i) {
    g.actors.push_back({"n" + std::to_string(i), static_cast<std::int64_t>(i + 1), 1, 2, testing::normalized_powers()});
  }
  for (auto [s, d, p, c, t] : chans) g.channels.push_back({"c" + std::to_string(g.channels.size()), s, d, p, c, t});
  return g;
}

using Edge = std::tuple<std::int64_t, std::int64_t, std::int64_t>;  // producer firing, consumer firing, tokens

// Precedences of a single producer/consumer channel by running its FIFO:
// labels record which producer firing made each token.
std::map<std::pair<std::int64_t, std::int64_t>, std::int64_t> simulate_channel(std::int64_t qa, std::int64_t qb,
                                                                              std::int64_t p, std::int64_t c,
                                                                              std::int64_t t) {
  const std::int64_t iterations = t / (qa * p) + 3;
  std::deque<std::pair<std::int64_t, std::int64_t>> fifo;  // (iteration, firing) of the producer
  for (std::int64_t i = 0; i < t; ++i) fifo.push_back({-1000, -1});
  for (std::int64_t it = 0; it < iterations; ++it) {
    for (std::int64_t j = 0; j < qa; ++j) {
      for (std::int64_t k = 0; k < p; ++k) fifo.push_back({it, j});
    }
  }
  std::map<std::pair<std::int64_t, std::int64_t>, std::int64_t> best;
  const std::int64_t observe = iterations - 1;
  for (std::int64_t it = 0; it <= observe; ++it) {
    for (std::int64_t k = 0; k < qb; ++k) {
      for (std::int64_t m = 0; m < c; ++m) {
        auto [pit, pj] = fifo.front();
        fifo.pop_front();
        if (it != observe) continue;
        REQUIRE(pj >= 0);
        const std::int64_t delta = observe - pit;
        auto key = std::make_pair(pj, k);
        auto f = best.find(key);
        if (f == best.end() || delta < f->second) best[key] = delta;
      }
    }
  }
  return best;
}

}  // namespace

TEST_CASE("repetition vector examples") {
  CHECK(repetition_vector(chain({}, 1)) == std::vector<std::int64_t>{1});
  CHECK(repetition_vector(chain({{0, 1, 2, 3, 0}}, 2)) == std::vector<std::int64_t>{3, 2});
  CHECK(repetition_vector(chain({{0, 1, 1, 1, 0}, {1, 0, 1, 1, 1}}, 2)) == std::vector<std::int64_t>{1, 1});
  // Inconsistent triangle.
  CHECK_THROWS_AS(repetition_vector(chain({{0, 1, 1, 1, 0}, {1, 2, 1, 1, 0}, {0, 2, 2, 1, 1}}, 3)),
                  InconsistentGraphError);
}

TEST_CASE("repetition vector balances and is minimal on random chains") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::int64_t> rate(1, 9);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + trial % 6;
    std::vector<std::tuple<std::size_t, std::size_t, std::int64_t, std::int64_t, std::int64_t>> chans;
    for (std::size_t i = 1; i < n; ++i) chans.push_back({i - 1, i, rate(rng), rate(rng), 0});
    auto g = chain(chans, n);
    auto q = repetition_vector(g);
    for (const auto& c : g.channels) CHECK(q[c.src] * c.prod == q[c.dst] * c.cons);
    std::int64_t gcd = 0;
    for (auto v : q) {
      CHECK(v > 0);
      gcd = std::gcd(gcd, v);
    }
    CHECK(gcd == 1);
  }
}

TEST_CASE("repetition vector per weakly connected component") {
  auto g = chain({{0, 1, 2, 1, 0}, {2, 3, 1, 3, 0}}, 4);
  CHECK(repetition_vector(g) == std::vector<std::int64_t>{1, 2, 3, 1});
}

TEST_CASE("unroll of a homogeneous graph keeps the structure") {
  auto sdf = chain({{0, 1, 1, 1, 0}, {1, 2, 1, 1, 0}, {2, 0, 1, 1, 2}}, 3);
  auto u = unroll(sdf);
  auto direct = as_marked_graph(sdf);
  REQUIRE(u.graph.actor_count() == 3);
  REQUIRE(u.graph.channels().size() == direct.channels().size());
  std::multiset<std::tuple<std::size_t, std::size_t, std::int64_t>> a, b;
  for (const auto& c : u.graph.channels()) a.insert({c.src, c.dst, c.tokens});
  for (const auto& c : direct.channels()) b.insert({c.src, c.dst, c.tokens});
  CHECK(a == b);
  CHECK(u.graph.group_count() == 3);
}

TEST_CASE("unroll 2:3 channel gives the expected precedences") {
  auto sdf = chain({{0, 1, 2, 3, 0}}, 2);
  auto u = unroll(sdf);
  REQUIRE(u.graph.actor_count() == 5);
  CHECK(u.graph.group_count() == 2);
  std::set<Edge> edges;
  for (const auto& c : u.graph.channels()) {
    CHECK(u.instance_map[c.src] == 0);
    CHECK(u.instance_map[c.dst] == 1);
    edges.insert({u.firing_index[c.src], u.firing_index[c.dst], c.tokens});
  }
  // b1 after a1, a2; b2 after a2, a3.
  CHECK(edges == std::set<Edge>{{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {2, 1, 0}});
  // Instances inherit the SDF actor's annotation.
  for (const auto& a : u.graph.actors()) {
    const auto& src = sdf.actors[u.instance_map[a.id]];
    CHECK(a.exec_time == src.exec_time);
    CHECK(a.power == src.power);
    CHECK(a.group == u.instance_map[a.id]);
  }
  CHECK(u.graph.actor(0).name == "n0_0");
}

TEST_CASE("unroll matches a FIFO simulation on random channels") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<std::int64_t> rate(1, 7), tok(0, 30);
  for (int trial = 0; trial < 300; ++trial) {
    const std::int64_t p = rate(rng), c = rate(rng), t = trial % 3 == 0 ? 0 : tok(rng);
    auto sdf = chain({{0, 1, p, c, t}}, 2);
    auto q = repetition_vector(sdf);
    auto u = unroll(sdf);
    std::map<std::pair<std::int64_t, std::int64_t>, std::int64_t> got;
    for (const auto& ch : u.graph.channels()) {
      if (u.instance_map[ch.src] != 0 || u.instance_map[ch.dst] != 1) continue;
      got[{u.firing_index[ch.src], u.firing_index[ch.dst]}] = ch.tokens;
    }
    CHECK(got == simulate_channel(q[0], q[1], p, c, t));
  }
}

TEST_CASE("unroll self loop serialises the instances") {
  auto sdf = chain({{0, 1, 3, 1, 0}, {1, 1, 1, 1, 1}}, 2);
  auto u = unroll(sdf);
  REQUIRE(u.graph.actor_count() == 4);
  std::set<Edge> loop;
  for (const auto& c : u.graph.channels()) {
    if (u.instance_map[c.src] == 1 && u.instance_map[c.dst] == 1) {
      loop.insert({u.firing_index[c.src], u.firing_index[c.dst], c.tokens});
    }
  }
  CHECK(loop == std::set<Edge>{{0, 1, 0}, {1, 2, 0}, {2, 0, 1}});
}

TEST_CASE("unroll keeps initial tokens on a back edge") {
  auto sdf = chain({{0, 1, 1, 1, 0}, {1, 0, 1, 1, 1}}, 2);
  auto u = unroll(sdf);
  bool found = false;
  for (const auto& c : u.graph.channels()) {
    if (c.src == 1 && c.dst == 0) {
      CHECK(c.tokens == 1);
      found = true;
    }
  }
  CHECK(found);
}

TEST_CASE("unroll instance cap") {
  auto sdf = chain({{0, 1, 1000, 1, 0}}, 2);
  CHECK_THROWS_AS(unroll(sdf, 100), OverflowError);
  CHECK(unroll(sdf, 1001).graph.actor_count() == 1001);
}

TEST_CASE("samplerate unrolls to 612 instances") {
  auto g = testing::load_fixture("samplerate");
  CHECK(g.actor_count() == 612);
  CHECK(g.group_count() == 6);
}

TEST_CASE("liveness") {
  CHECK(validate_liveness(testing::aec()).ok);
  std::vector<ActorSpec> two{{0, "a", 1, 0, 0, testing::normalized_powers(), 0},
                             {1, "b", 1, 0, 0, testing::normalized_powers(), 1}};
  auto dead = MarkedGraph::with_singleton_groups(two, {{0, 1, 0}, {1, 0, 0}});
  auto r = validate_liveness(dead);
  CHECK_FALSE(r.ok);
  CHECK(std::set<std::size_t>(r.cycle.begin(), r.cycle.end()) == std::set<std::size_t>{0, 1});
  auto three = two;
  three.push_back({2, "c", 1, 0, 0, testing::normalized_powers(), 2});
  CHECK(validate_liveness(MarkedGraph::with_singleton_groups(three, {{0, 1, 0}, {1, 2, 0}})).ok);
  // Token-free self edge is dead too.
  CHECK_FALSE(validate_liveness(MarkedGraph::with_singleton_groups(two, {{0, 0, 0}})).ok);
}

TEST_CASE("marked graph validation") {
  ActorSpec a{0, "a", 1, 0, 0, testing::normalized_powers(), 0};
  CHECK_THROWS_AS(MarkedGraph({a}, {{0, 1, 0}}, 1), InvalidArgumentError);
  CHECK_THROWS_AS(MarkedGraph({a}, {}, 0), InvalidArgumentError);
  ActorSpec neg = a;
  neg.exec_time = -1;
  CHECK_THROWS_AS(MarkedGraph({neg}, {}, 1), InvalidArgumentError);
  ActorSpec hot = a;
  hot.power.slp = 2;
  CHECK(MarkedGraph({hot}, {}, 1).lint().size() == 1);
  CHECK(testing::aec().lint().empty());
}

TEST_CASE("decision vectors") {
  auto x = DecisionVector::parse("100001");
  CHECK(x.size() == 6);
  CHECK(x[0]);
  CHECK_FALSE(x[1]);
  CHECK(x.count() == 2);
  CHECK(x.str() == "100001");
  CHECK(DecisionVector::from_mask(0b100001, 6) == x);
  CHECK_THROWS_AS(DecisionVector::parse("10a"), InvalidArgumentError);
  CHECK(preferred_configuration(DecisionVector::parse("110"), DecisionVector::parse("001")));
  CHECK(preferred_configuration(DecisionVector::parse("011"), DecisionVector::parse("110")));
  CHECK_FALSE(preferred_configuration(DecisionVector::parse("110"), DecisionVector::parse("101")));
}
