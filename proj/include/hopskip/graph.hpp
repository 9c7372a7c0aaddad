#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "hopskip/rational.hpp"

namespace hopskip {

/// Per-actor power levels in abstract power units.
struct PowerParams {
  Rational exe;
  Rational idle;
  Rational sd;   // shutdown
  Rational wu;   // wake-up
  Rational slp;  // sleep / dormant

  friend bool operator==(const PowerParams&, const PowerParams&) = default;
};

struct ActorSpec {
  std::size_t id = 0;
  std::string name;
  std::int64_t exec_time = 0;
  std::int64_t wakeup = 0;
  std::int64_t shutdown = 0;
  PowerParams power;
  std::size_t group = 0;
};

/// FIFO channel carrying `tokens` initial tokens. Self edges are allowed.
struct Channel {
  std::size_t src = 0;
  std::size_t dst = 0;
  std::int64_t tokens = 0;
};

/// Marked graph: every firing consumes and produces one token per channel.
/// Immutable after construction. Actor ids are the positions in actors().
class MarkedGraph {
 public:
  MarkedGraph() = default;
  /// Validates ids, delays, powers and group indices. Liveness is checked
  /// separately by validate_liveness().
  MarkedGraph(std::vector<ActorSpec> actors, std::vector<Channel> channels,
              std::size_t groups);
  /// Convenience: every actor becomes its own decision group.
  static MarkedGraph with_singleton_groups(std::vector<ActorSpec> actors,
                                           std::vector<Channel> channels);

  const std::vector<ActorSpec>& actors() const { return actors_; }
  const std::vector<Channel>& channels() const { return channels_; }
  std::size_t actor_count() const { return actors_.size(); }
  std::size_t group_count() const { return groups_; }
  const ActorSpec& actor(std::size_t id) const { return actors_.at(id); }

  /// Advisory findings, e.g. sleep power above idle power. Never fatal.
  std::vector<std::string> lint() const;

 private:
  std::vector<ActorSpec> actors_;
  std::vector<Channel> channels_;
  std::size_t groups_ = 0;
};

/// One mode bit per decision group: 1 = self-powered, 0 = always-active.
class DecisionVector {
 public:
  DecisionVector() = default;
  explicit DecisionVector(std::size_t size, bool value = false)
      : bits_(size, value ? 1 : 0) {}
  explicit DecisionVector(std::vector<std::uint8_t> bits);
  /// Parses a string of '0'/'1' characters, group 0 first.
  static DecisionVector parse(std::string_view bits);
  /// Bit i of the vector is bit i of `mask`.
  static DecisionVector from_mask(std::uint64_t mask, std::size_t size);

  std::size_t size() const { return bits_.size(); }
  bool operator[](std::size_t i) const { return bits_[i] != 0; }
  void set(std::size_t i, bool value) { bits_.at(i) = value ? 1 : 0; }
  std::size_t count() const;
  std::string str() const;
  const std::vector<std::uint8_t>& bits() const { return bits_; }

  friend bool operator==(const DecisionVector&, const DecisionVector&) = default;
  friend auto operator<=>(const DecisionVector&, const DecisionVector&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

/// Tie-break among equal-energy configurations: more self-powered groups
/// first, then lexicographically smallest bit string.
bool preferred_configuration(const DecisionVector& a, const DecisionVector& b);

struct LivenessResult {
  bool ok = true;
  /// Actor ids along a token-free cycle when !ok.
  std::vector<std::size_t> cycle;
  explicit operator bool() const { return ok; }
};

LivenessResult validate_liveness(const MarkedGraph& g);

}  // namespace hopskip
