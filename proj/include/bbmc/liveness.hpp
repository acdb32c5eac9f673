// Copyright 2026 The bbmc Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BBMC_LIVENESS_HPP
#define BBMC_LIVENESS_HPP

#include <algorithm>
#include <deque>
#include <optional>
#include <utility>
#include <vector>

#include "bbmc/graph.hpp"
#include "bbmc/host_system.hpp"

namespace bbmc {

/// Boolean relation over the states of one system.
class Relation {
 public:
  explicit Relation(std::size_t n = 0) : n_(n), bits_(n * n, false) {}

  bool contains(StateId a, StateId b) const { return bits_[a.value * n_ + b.value]; }
  void insert(StateId a, StateId b) { bits_[a.value * n_ + b.value] = true; }
  std::size_t universe() const noexcept { return n_; }

  std::vector<std::pair<StateId, StateId>> pairs() const {
    std::vector<std::pair<StateId, StateId>> out;
    for (std::uint32_t a = 0; a < n_; ++a) {
      for (std::uint32_t b = 0; b < n_; ++b) {
        if (bits_[a * n_ + b]) out.push_back({StateId{a}, StateId{b}});
      }
    }
    return out;
  }

  bool subset_of(const Relation& o) const {
    for (std::size_t i = 0; i < bits_.size(); ++i) {
      if (bits_[i] && !o.bits_[i]) return false;
    }
    return true;
  }

  friend bool operator==(const Relation&, const Relation&) = default;

  /// Pairs connected by one or more steps.
  Relation transitive_closure() const {
    Relation out(n_);
    for (std::uint32_t a = 0; a < n_; ++a) {
      std::vector<bool> seen(n_, false);
      std::deque<std::uint32_t> queue;
      for (std::uint32_t b = 0; b < n_; ++b) {
        if (bits_[a * n_ + b] && !seen[b]) {
          seen[b] = true;
          queue.push_back(b);
        }
      }
      while (!queue.empty()) {
        std::uint32_t v = queue.front();
        queue.pop_front();
        out.insert(StateId{a}, StateId{v});
        for (std::uint32_t w = 0; w < n_; ++w) {
          if (bits_[v * n_ + w] && !seen[w]) {
            seen[w] = true;
            queue.push_back(w);
          }
        }
      }
    }
    return out;
  }

 private:
  std::size_t n_;
  std::vector<bool> bits_;
};

/// Step relations of M with their transitive closures.
struct ClosureRelations {
  Relation env_step;
  Relation comm_step;
  Relation step;
  Relation env_closure;
  Relation full_closure;
};

inline ClosureRelations compute_closures(const HostSystem& m) {
  const std::size_t n = m.state_count();
  ClosureRelations r{Relation(n), Relation(n), Relation(n), Relation(n), Relation(n)};
  for (const auto& t : m.transitions()) {
    (t.communicates() ? r.comm_step : r.env_step).insert(t.from, t.to);
    r.step.insert(t.from, t.to);
  }
  r.env_closure = r.env_step.transitive_closure();
  r.full_closure = r.step.transitive_closure();
  return r;
}

/// Candidate witnesses for "from source, visit target infinitely often".
struct CommunicationGraph {
  SubGraph graph;
  StateId source;
  StateId target;
};

/// Outcome of the closure analysis: a definite answer, or the graph the
/// black-box search has to explore.
struct LivenessAnalysis {
  enum class Kind { definitely_true, definitely_false, needs_testing };

  Kind kind = Kind::definitely_false;
  std::optional<CommunicationGraph> graph;

  bool definite() const noexcept { return kind != Kind::needs_testing; }
};

inline LivenessAnalysis check_io(const HostSystem& m, const ClosureRelations& c,
                                 StateId source, StateId target) {
  if (source.value >= m.state_count()) throw UnknownState("#" + std::to_string(source.value));
  if (target.value >= m.state_count()) throw UnknownState("#" + std::to_string(target.value));
  LivenessAnalysis out;
  // With source == target only the loop matters: reaching is vacuous.
  const bool same = source == target;
  const bool loop_env = c.env_closure.contains(target, target);
  const bool reach_env = same || c.env_closure.contains(source, target);
  if (reach_env && loop_env) {
    out.kind = LivenessAnalysis::Kind::definitely_true;
    return out;
  }
  const bool loop_any = c.full_closure.contains(target, target);
  const bool reach_any = same || c.full_closure.contains(source, target);
  if (!reach_any || !loop_any) {
    out.kind = LivenessAnalysis::Kind::definitely_false;
    return out;
  }
  std::vector<StateId> nodes{source, target};
  for (StateId s : m.states()) {
    if (c.full_closure.contains(source, s) && c.full_closure.contains(s, target)) {
      nodes.push_back(s);
    }
  }
  out.kind = LivenessAnalysis::Kind::needs_testing;
  out.graph = CommunicationGraph{induced_subgraph(m, nodes), source, target};
  return out;
}

inline LivenessAnalysis check_io(const HostSystem& m, StateId source, StateId target) {
  return check_io(m, compute_closures(m), source, target);
}

enum class BoundMode { exact, overapprox };

/// How search horizons are derived from a graph.
struct BoundPolicy {
  enum class Request { automatic, exact, overapprox };

  Request request = Request::automatic;
  std::size_t exact_threshold = 12;  // automatic: exact up to this many nodes
  // Also bound by communications on simple cycles anywhere in the graph.
  // Without this a cycle off every simple path can hide the only way to
  // steer X into the state a later edge needs.
  bool count_cycles = true;

  BoundMode resolve(std::size_t nodes) const {
    // The subset DP needs 2^nodes * nodes cells.
    constexpr std::size_t kHardCap = 20;
    if (request == Request::overapprox) return BoundMode::overapprox;
    if (request == Request::exact) return nodes <= kHardCap ? BoundMode::exact : BoundMode::overapprox;
    return nodes <= exact_threshold ? BoundMode::exact : BoundMode::overapprox;
  }
};

/// Communication counts bounding the liveness search: n1 over simple
/// source-to-target paths, n2 over simple loops through the target.
struct CommBounds {
  std::size_t n1 = 0;
  std::size_t n2 = 0;
  std::size_t cycles = 0;  // simple cycles anywhere in G, when counted
  std::size_t n = 0;
  BoundMode mode = BoundMode::exact;
};

inline CommBounds comm_bounds(const CommunicationGraph& g, const BoundPolicy& policy = {}) {
  CommBounds b;
  b.mode = policy.resolve(g.graph.nodes().size());
  if (b.mode == BoundMode::overapprox) {
    // A simple path or loop uses each edge at most once.
    b.n1 = b.n2 = g.graph.communication_edges();
    if (policy.count_cycles) b.cycles = b.n1;
  } else {
    b.n1 = max_comm_simple_path(g.graph, g.source, g.target).value_or(0);
    b.n2 = max_comm_simple_loop(g.graph, g.target).value_or(0);
    if (policy.count_cycles) b.cycles = max_comm_simple_cycle(g.graph);
  }
  b.n = std::max({b.n1, b.n2, b.cycles});
  return b;
}

/// Horizon for a witness graph: communications over any simple path, and
/// over simple cycles too when the search has to close loops or the policy
/// counts them.
inline std::size_t graph_bound(const SubGraph& g, bool loops, const BoundPolicy& policy,
                               BoundMode* mode = nullptr) {
  BoundMode m = policy.resolve(g.nodes().size());
  if (mode) *mode = m;
  if (m == BoundMode::overapprox) return g.communication_edges();
  return max_comm_anywhere(g, loops || policy.count_cycles);
}

}  // namespace bbmc

#endif  // BBMC_LIVENESS_HPP
