#include "hopskip/sdf.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>

#include "hopskip/errors.hpp"

namespace hopskip {
namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_mul_overflow(a, b, &out)) throw OverflowError("token index overflow");
  return out;
}

void check_rates(const SdfGraph& sdf) {
  if (sdf.actors.empty()) throw InvalidArgumentError("SDF graph has no actors");
  for (const SdfChannel& c : sdf.channels) {
    if (c.src >= sdf.actors.size() || c.dst >= sdf.actors.size()) {
      throw InvalidArgumentError("channel '" + c.name + "' references a missing actor");
    }
    if (c.prod < 1 || c.cons < 1) {
      throw InvalidArgumentError("channel '" + c.name + "' has a rate below 1");
    }
    if (c.tokens < 0) {
      throw InvalidArgumentError("channel '" + c.name + "' has negative tokens");
    }
  }
}

}  // namespace

std::size_t SdfGraph::find_actor(const std::string& actor_name) const {
  for (std::size_t i = 0; i < actors.size(); ++i) {
    if (actors[i].name == actor_name) return i;
  }
  return static_cast<std::size_t>(-1);
}

std::vector<std::int64_t> repetition_vector(const SdfGraph& sdf) {
  check_rates(sdf);
  const std::size_t n = sdf.actors.size();
  std::vector<std::vector<std::size_t>> incident(n);
  for (std::size_t e = 0; e < sdf.channels.size(); ++e) {
    incident[sdf.channels[e].src].push_back(e);
    incident[sdf.channels[e].dst].push_back(e);
  }

  std::vector<Rational> rate(n, Rational(0));
  std::vector<std::int64_t> q(n, 0);
  std::vector<bool> seen(n, false);
  for (std::size_t root = 0; root < n; ++root) {
    if (seen[root]) continue;
    std::vector<std::size_t> component;
    std::queue<std::size_t> frontier;
    frontier.push(root);
    seen[root] = true;
    rate[root] = Rational(1);
    while (!frontier.empty()) {
      std::size_t u = frontier.front();
      frontier.pop();
      component.push_back(u);
      for (std::size_t e : incident[u]) {
        const SdfChannel& c = sdf.channels[e];
        std::size_t v = c.src == u ? c.dst : c.src;
        Rational expected = c.src == u ? rate[u] * Rational(c.prod, c.cons)
                                       : rate[u] * Rational(c.cons, c.prod);
        if (!seen[v]) {
          seen[v] = true;
          rate[v] = expected;
          frontier.push(v);
        } else if (rate[v] != expected) {
          throw InconsistentGraphError("balance equations have no positive solution (channel '" +
                                       c.name + "')");
        }
      }
    }
    std::int64_t lcm_den = 1;
    for (std::size_t u : component) {
      lcm_den = std::lcm(lcm_den, rate[u].den());
      if (lcm_den <= 0) throw OverflowError("repetition vector overflow");
    }
    std::int64_t g = 0;
    for (std::size_t u : component) {
      q[u] = checked_mul(rate[u].num(), lcm_den / rate[u].den());
      g = std::gcd(g, q[u]);
    }
    for (std::size_t u : component) q[u] /= g;
  }
  return q;
}

UnrolledGraph unroll(const SdfGraph& sdf, std::size_t instance_cap) {
  std::vector<std::int64_t> q = repetition_vector(sdf);
  const std::size_t n = sdf.actors.size();

  std::size_t total = 0;
  for (std::int64_t r : q) {
    total += static_cast<std::size_t>(r);
    if (total > instance_cap) {
      throw OverflowError("unrolled graph exceeds the instance cap of " +
                          std::to_string(instance_cap) + " actors");
    }
  }

  std::vector<std::size_t> first(n, 0);
  for (std::size_t a = 1; a < n; ++a) first[a] = first[a - 1] + static_cast<std::size_t>(q[a - 1]);

  UnrolledGraph out;
  std::vector<ActorSpec> actors;
  actors.reserve(total);
  out.instance_map.reserve(total);
  out.firing_index.reserve(total);
  for (std::size_t a = 0; a < n; ++a) {
    const SdfActor& src = sdf.actors[a];
    for (std::int64_t k = 0; k < q[a]; ++k) {
      ActorSpec spec;
      spec.id = actors.size();
      spec.name = q[a] == 1 ? src.name : src.name + "_" + std::to_string(k);
      spec.exec_time = src.exec_time;
      spec.wakeup = src.wakeup;
      spec.shutdown = src.shutdown;
      spec.power = src.power;
      spec.group = a;
      actors.push_back(std::move(spec));
      out.instance_map.push_back(a);
      out.firing_index.push_back(k);
    }
  }

  std::vector<Channel> channels;
  for (const SdfChannel& c : sdf.channels) {
    const std::int64_t qa = q[c.src];
    const std::int64_t qb = q[c.dst];
    for (std::int64_t k = 0; k < qb; ++k) {
      // Consumer firing k takes tokens [k*cons, (k+1)*cons). Token m was
      // produced by global producer firing floor((m - tokens) / prod).
      std::int64_t lo = floor_div(checked_mul(k, c.cons) - c.tokens, c.prod);
      std::int64_t hi = floor_div(checked_mul(k + 1, c.cons) - 1 - c.tokens, c.prod);
      std::map<std::int64_t, std::int64_t> tokens_by_instance;
      for (std::int64_t f = lo; f <= hi; ++f) {
        std::int64_t iteration = floor_div(f, qa);
        std::int64_t instance = f - iteration * qa;
        std::int64_t delta = -iteration;
        auto [it, inserted] = tokens_by_instance.emplace(instance, delta);
        if (!inserted) it->second = std::min(it->second, delta);
      }
      for (const auto& [instance, delta] : tokens_by_instance) {
        channels.push_back({first[c.src] + static_cast<std::size_t>(instance),
                            first[c.dst] + static_cast<std::size_t>(k), delta});
      }
    }
  }

  out.graph = MarkedGraph(std::move(actors), std::move(channels), n);
  return out;
}

MarkedGraph as_marked_graph(const SdfGraph& sdf) {
  check_rates(sdf);
  std::vector<ActorSpec> actors;
  for (std::size_t a = 0; a < sdf.actors.size(); ++a) {
    const SdfActor& src = sdf.actors[a];
    actors.push_back({a, src.name, src.exec_time, src.wakeup, src.shutdown, src.power, a});
  }
  std::vector<Channel> channels;
  for (const SdfChannel& c : sdf.channels) {
    if (c.prod != 1 || c.cons != 1) {
      throw InvalidArgumentError("channel '" + c.name + "' is not homogeneous");
    }
    channels.push_back({c.src, c.dst, c.tokens});
  }
  return MarkedGraph(std::move(actors), std::move(channels), sdf.actors.size());
}

}  // namespace hopskip
