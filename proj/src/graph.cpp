#include "hopskip/graph.hpp"

#include <algorithm>

#include "hopskip/errors.hpp"

namespace hopskip {

MarkedGraph::MarkedGraph(std::vector<ActorSpec> actors,
                         std::vector<Channel> channels, std::size_t groups)
    : actors_(std::move(actors)), channels_(std::move(channels)), groups_(groups) {
  for (std::size_t i = 0; i < actors_.size(); ++i) {
    const ActorSpec& a = actors_[i];
    if (a.id != i) {
      throw InvalidArgumentError("actor '" + a.name + "' has id " +
                                 std::to_string(a.id) + ", expected " +
                                 std::to_string(i));
    }
    if (a.exec_time < 0 || a.wakeup < 0 || a.shutdown < 0) {
      throw InvalidArgumentError("actor '" + a.name + "' has a negative delay");
    }
    const PowerParams& p = a.power;
    for (const Rational* v : {&p.exe, &p.idle, &p.sd, &p.wu, &p.slp}) {
      if (v->sign() < 0) {
        throw InvalidArgumentError("actor '" + a.name + "' has a negative power");
      }
    }
    if (a.group >= groups_) {
      throw InvalidArgumentError("actor '" + a.name + "' references group " +
                                 std::to_string(a.group) + " of " +
                                 std::to_string(groups_));
    }
  }
  for (const Channel& c : channels_) {
    if (c.src >= actors_.size() || c.dst >= actors_.size()) {
      throw InvalidArgumentError("channel references a missing actor");
    }
    if (c.tokens < 0) throw InvalidArgumentError("channel with negative tokens");
  }
}

MarkedGraph MarkedGraph::with_singleton_groups(std::vector<ActorSpec> actors,
                                               std::vector<Channel> channels) {
  for (std::size_t i = 0; i < actors.size(); ++i) actors[i].group = i;
  std::size_t n = actors.size();
  return MarkedGraph(std::move(actors), std::move(channels), n);
}

std::vector<std::string> MarkedGraph::lint() const {
  std::vector<std::string> out;
  for (const ActorSpec& a : actors_) {
    if (a.power.slp > a.power.idle) {
      out.push_back("actor '" + a.name + "': sleep power exceeds idle power");
    }
    if (a.power.idle > a.power.exe) {
      out.push_back("actor '" + a.name + "': idle power exceeds execution power");
    }
  }
  bool any_time = std::any_of(actors_.begin(), actors_.end(), [](const ActorSpec& a) {
    return a.exec_time + a.wakeup + a.shutdown > 0;
  });
  if (!actors_.empty() && !any_time) out.push_back("all actor delays are zero");
  return out;
}

DecisionVector::DecisionVector(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (auto& b : bits_) b = b != 0 ? 1 : 0;
}

DecisionVector DecisionVector::parse(std::string_view bits) {
  std::vector<std::uint8_t> out;
  out.reserve(bits.size());
  for (char c : bits) {
    if (c != '0' && c != '1') {
      throw InvalidArgumentError("decision vector must consist of 0/1, got '" +
                                 std::string(bits) + "'");
    }
    out.push_back(c == '1' ? 1 : 0);
  }
  return DecisionVector(std::move(out));
}

DecisionVector DecisionVector::from_mask(std::uint64_t mask, std::size_t size) {
  DecisionVector x(size);
  for (std::size_t i = 0; i < size && i < 64; ++i) x.bits_[i] = (mask >> i) & 1u;
  return x;
}

std::size_t DecisionVector::count() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1));
}

std::string DecisionVector::str() const {
  std::string s;
  s.reserve(bits_.size());
  for (auto b : bits_) s.push_back(b ? '1' : '0');
  return s;
}

bool preferred_configuration(const DecisionVector& a, const DecisionVector& b) {
  std::size_t ca = a.count(), cb = b.count();
  if (ca != cb) return ca > cb;
  return a.bits() < b.bits();
}

LivenessResult validate_liveness(const MarkedGraph& g) {
  const std::size_t n = g.actor_count();
  // Token-free channels only; any cycle among them is dead.
  std::vector<std::vector<std::size_t>> succ(n);
  for (const Channel& c : g.channels()) {
    if (c.tokens == 0) succ[c.src].push_back(c.dst);
  }
  enum : std::uint8_t { kWhite, kGrey, kBlack };
  std::vector<std::uint8_t> color(n, kWhite);
  std::vector<std::size_t> parent(n, n);

  struct Frame {
    std::size_t node;
    std::size_t next;
  };
  std::vector<Frame> stack;
  for (std::size_t root = 0; root < n; ++root) {
    if (color[root] != kWhite) continue;
    stack.push_back({root, 0});
    color[root] = kGrey;
    while (!stack.empty()) {
      Frame& f = stack.back();
      if (f.next == succ[f.node].size()) {
        color[f.node] = kBlack;
        stack.pop_back();
        continue;
      }
      std::size_t v = succ[f.node][f.next++];
      if (color[v] == kGrey) {
        LivenessResult dead{false, {}};
        for (std::size_t u = f.node; u != v; u = parent[u]) dead.cycle.push_back(u);
        dead.cycle.push_back(v);
        std::reverse(dead.cycle.begin(), dead.cycle.end());
        return dead;
      }
      if (color[v] == kWhite) {
        color[v] = kGrey;
        parent[v] = f.node;
        stack.push_back({v, 0});
      }
    }
  }
  return {};
}

}  // namespace hopskip
