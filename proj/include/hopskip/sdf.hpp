#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "hopskip/graph.hpp"

namespace hopskip {

struct SdfActor {
  std::string name;
  std::int64_t exec_time = 0;
  std::int64_t wakeup = 0;
  std::int64_t shutdown = 0;
  PowerParams power;
};

struct SdfChannel {
  std::string name;
  std::size_t src = 0;
  std::size_t dst = 0;
  std::int64_t prod = 1;
  std::int64_t cons = 1;
  std::int64_t tokens = 0;
};

/// Rate-annotated dataflow graph. Each actor is one decision group once
/// unrolled.
struct SdfGraph {
  std::string name;
  std::vector<SdfActor> actors;
  std::vector<SdfChannel> channels;

  std::size_t find_actor(const std::string& actor_name) const;  // npos if absent
};

inline constexpr std::size_t kDefaultInstanceCap = 1'000'000;

/// Minimal positive solution of the balance equations q[src]*prod ==
/// q[dst]*cons, scaled independently per weakly connected component.
/// Throws InconsistentGraphError.
std::vector<std::int64_t> repetition_vector(const SdfGraph& sdf);

struct UnrolledGraph {
  MarkedGraph graph;
  /// Marked-graph actor id -> SDF actor index.
  std::vector<std::size_t> instance_map;
  /// Marked-graph actor id -> firing index within one iteration.
  std::vector<std::int64_t> firing_index;
};

/// Expands an SDF graph into its equivalent marked graph. Firing k of the
/// consumer depends on every producer firing that supplies one of its tokens,
/// with initial tokens consumed first-in first-out; the number of iterations
/// separating producer and consumer becomes the token count of the edge.
/// Instance k of actor a belongs to decision group a.
UnrolledGraph unroll(const SdfGraph& sdf, std::size_t instance_cap = kDefaultInstanceCap);

/// Interprets a homogeneous graph (all rates 1) directly, without expansion.
MarkedGraph as_marked_graph(const SdfGraph& sdf);

}  // namespace hopskip
