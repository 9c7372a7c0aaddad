#include "hopskip/generate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <set>

#include "hopskip/errors.hpp"
#include "hopskip/rng.hpp"

namespace hopskip {

void AugmentationPolicy::validate() const {
  if (scale_min < 1 || scale_max < scale_min) {
    throw InvalidArgumentError("scaling range must satisfy 1 <= lo <= hi");
  }
  if (wakeup < 0 || shutdown < 0) throw InvalidArgumentError("negative delay in policy");
  for (const Rational* v : {&base.exe, &base.idle, &base.sd, &base.wu, &base.slp}) {
    if (v->sign() < 0) throw InvalidArgumentError("negative power in policy");
  }
}

std::vector<std::int64_t> draw_scale_factors(std::size_t actors, const AugmentationPolicy& policy) {
  policy.validate();
  Rng rng(policy.seed);
  std::vector<std::int64_t> out(actors);
  for (auto& psi : out) psi = rng.uniform_int(policy.scale_min, policy.scale_max);
  return out;
}

SdfGraph apply_scaling(const SdfGraph& sdf, const AugmentationPolicy& policy,
                       const std::vector<std::int64_t>& factors) {
  policy.validate();
  if (factors.size() != sdf.actors.size()) {
    throw DimensionMismatchError("one scaling factor per actor is required");
  }
  SdfGraph out = sdf;
  for (std::size_t i = 0; i < out.actors.size(); ++i) {
    const std::int64_t psi = factors[i];
    if (psi < 1) throw InvalidArgumentError("scaling factor below 1");
    SdfActor& a = out.actors[i];
    // Round half up, never below one time unit.
    a.exec_time = std::max<std::int64_t>(1, (2 * a.exec_time + psi) / (2 * psi));
    a.wakeup = policy.wakeup;
    a.shutdown = policy.shutdown;
    const Rational k(psi);
    a.power = {policy.base.exe * k, policy.base.idle * k, policy.base.sd * k,
               policy.base.wu * k, policy.base.slp * k};
  }
  return out;
}

SdfGraph augment(const SdfGraph& sdf, const AugmentationPolicy& policy) {
  return apply_scaling(sdf, policy, draw_scale_factors(sdf.actors.size(), policy));
}

void GeneratorParams::validate() const {
  if (actors < 1) throw InvalidArgumentError("generator needs at least one actor");
  if (rate_min < 1 || rate_max < rate_min) throw InvalidArgumentError("rate range must satisfy 1 <= min <= max");
  if (repetition_sum < static_cast<std::int64_t>(actors)) {
    throw InvalidArgumentError("repetition vector sum must be at least the actor count");
  }
  if (exec_min < 0 || exec_max < exec_min) throw InvalidArgumentError("invalid execution time range");
  if (degree_mean <= 0 || degree_variance < 0 || rate_mean <= 0 || rate_variance < 0) {
    throw InvalidArgumentError("distribution parameters must be positive");
  }
  if (back_edge_probability < 0 || back_edge_probability > 1) {
    throw InvalidArgumentError("back edge probability must lie in [0, 1]");
  }
  policy.validate();
}

namespace {

// Firing counts shaped by random rates along a spanning tree, then rescaled
// so they sum to the target exactly.
std::vector<std::int64_t> draw_repetitions(const GeneratorParams& p, Rng& rng,
                                           const std::vector<std::size_t>& parent) {
  const std::size_t n = p.actors;
  std::vector<double> shape(n, 1.0);
  for (std::size_t i = 1; i < n; ++i) {
    const auto prod = rng.discrete_normal(p.rate_mean, p.rate_variance, p.rate_min, p.rate_max);
    const auto cons = rng.discrete_normal(p.rate_mean, p.rate_variance, p.rate_min, p.rate_max);
    shape[i] = shape[parent[i]] * static_cast<double>(prod) / static_cast<double>(cons);
  }
  const double total = std::accumulate(shape.begin(), shape.end(), 0.0);
  std::vector<double> target(n);
  std::vector<std::int64_t> q(n);
  for (std::size_t i = 0; i < n; ++i) {
    target[i] = shape[i] * static_cast<double>(p.repetition_sum) / total;
    q[i] = std::max<std::int64_t>(1, std::llround(target[i]));
  }
  std::int64_t sum = std::accumulate(q.begin(), q.end(), std::int64_t{0});
  while (sum != p.repetition_sum) {
    // Move the entry furthest from its target by one.
    std::size_t pick = n;
    double best = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double residual = target[i] - static_cast<double>(q[i]);
      if (sum > p.repetition_sum) residual = -residual;
      if (sum > p.repetition_sum && q[i] == 1) continue;
      if (pick == n || residual > best) {
        pick = i;
        best = residual;
      }
    }
    if (pick == n) break;
    q[pick] += sum > p.repetition_sum ? -1 : 1;
    sum += sum > p.repetition_sum ? -1 : 1;
  }
  return q;
}

std::optional<SdfGraph> attempt(const GeneratorParams& p, Rng& rng) {
  const std::size_t n = p.actors;
  std::vector<std::size_t> parent(n, 0);
  for (std::size_t i = 1; i < n; ++i) parent[i] = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(i) - 1));

  std::vector<std::int64_t> q = draw_repetitions(p, rng, parent);
  std::int64_t g = 0;
  for (auto v : q) g = std::gcd(g, v);
  if (g != 1 || std::accumulate(q.begin(), q.end(), std::int64_t{0}) != p.repetition_sum) {
    return std::nullopt;
  }

  SdfGraph sdf;
  sdf.name = "random_" + std::to_string(p.seed);
  for (std::size_t i = 0; i < n; ++i) {
    SdfActor a;
    a.name = "a" + std::to_string(i);
    a.exec_time = rng.uniform_int(p.exec_min, p.exec_max);
    sdf.actors.push_back(std::move(a));
  }

  auto add_channel = [&](std::size_t src, std::size_t dst, bool back) {
    const std::int64_t gg = std::gcd(q[src], q[dst]);
    SdfChannel c;
    c.name = "ch" + std::to_string(sdf.channels.size());
    c.src = src;
    c.dst = dst;
    c.prod = q[dst] / gg;
    c.cons = q[src] / gg;
    // One full iteration of tokens on a back edge keeps every unrolled
    // precedence on it marked.
    c.tokens = back ? c.cons * q[dst] : 0;
    sdf.channels.push_back(std::move(c));
  };
  auto rate_ok = [&](std::size_t a, std::size_t b) {
    const std::int64_t gg = std::gcd(q[a], q[b]);
    return std::max(q[a], q[b]) / gg <= p.rate_max;
  };

  std::set<std::pair<std::size_t, std::size_t>> connected;
  std::vector<std::int64_t> degree(n, 0);
  for (std::size_t i = 1; i < n; ++i) {
    add_channel(parent[i], i, false);
    connected.insert({parent[i], i});
    ++degree[parent[i]];
    ++degree[i];
  }

  std::int64_t wanted = 0;
  for (std::size_t i = 0; i < n; ++i) {
    wanted += rng.discrete_normal(p.degree_mean, p.degree_variance, 1,
                                  std::max<std::int64_t>(1, static_cast<std::int64_t>(n) - 1));
  }
  const std::int64_t max_edges = static_cast<std::int64_t>(n * (n - 1) / 2);
  std::int64_t extra = std::min(wanted / 2, max_edges) - static_cast<std::int64_t>(n - 1);
  for (std::int64_t e = 0, tries = 0; e < extra && tries < 50 * static_cast<std::int64_t>(n); ++tries) {
    auto a = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(n) - 1));
    auto b = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(n) - 1));
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    if (connected.count({a, b})) continue;
    // Prefer pairs whose derived rates stay in range; accept others late.
    if (!rate_ok(a, b) && tries < 25 * static_cast<std::int64_t>(n)) continue;
    const bool back = rng.uniform01() < p.back_edge_probability;
    if (back) {
      add_channel(b, a, true);
    } else {
      add_channel(a, b, false);
    }
    connected.insert({a, b});
    ++e;
  }

  if (p.self_loops) {
    for (std::size_t i = 0; i < n; ++i) {
      sdf.channels.push_back({"self" + std::to_string(i), i, i, 1, 1, 1});
    }
  }

  std::vector<std::int64_t> check = repetition_vector(sdf);
  if (check != q) return std::nullopt;

  AugmentationPolicy policy = p.policy;
  policy.seed = rng.next();
  return augment(sdf, policy);
}

}  // namespace

SdfGraph generate_random(const GeneratorParams& params) {
  params.validate();
  Rng rng(params.seed);
  for (std::size_t retry = 0; retry < params.max_retries; ++retry) {
    if (auto g = attempt(params, rng)) return std::move(*g);
  }
  throw GenerationFailedError("no valid graph after " + std::to_string(params.max_retries) +
                              " attempts");
}

}  // namespace hopskip
