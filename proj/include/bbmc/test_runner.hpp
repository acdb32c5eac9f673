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

#ifndef BBMC_TEST_RUNNER_HPP
#define BBMC_TEST_RUNNER_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <tuple>
#include <vector>

#include "bbmc/experiment.hpp"
#include "bbmc/graph.hpp"
#include "bbmc/host_system.hpp"
#include "bbmc/liveness.hpp"
#include "bbmc/witness.hpp"

namespace bbmc {

namespace detail {

// Feeds every input annotating a communication edge out of `s` (in name
// order) after `pi`, and calls `visit(child, edge)` for each edge whose
// annotation matches X's answer until it returns true.
template <class Visit>
bool probe_edges(ComponentSession& x, const HostSystem& m, Prefix pi,
                 const std::vector<const Transition*>& edges, Visit&& visit) {
  std::vector<InputId> inputs;
  for (const Transition* t : edges) {
    if (t->communicates()) inputs.push_back(t->comm.input);
  }
  std::sort(inputs.begin(), inputs.end(), [&](InputId a, InputId b) {
    return m.inputs().name(a) < m.inputs().name(b);
  });
  inputs.erase(std::unique(inputs.begin(), inputs.end()), inputs.end());
  for (InputId a : inputs) {
    Prefix child = x.probe(pi, a);
    OutputId b = x.output(child);
    for (const Transition* t : edges) {
      if (t->communicates() && t->comm.input == a && t->comm.output == b) {
        if (visit(child, *t)) return true;
      }
    }
  }
  return false;
}

}  // namespace detail

/// Outcome of a liveness search; `witness` is the accepted input prefix.
struct LivenessOutcome {
  bool holds = false;
  std::optional<Prefix> witness;
};

/// Bounded nested DFS: reach the target from the source, then come back to
/// it until it has been met m more times, validating each communication on X.
inline LivenessOutcome test_liveness(ComponentSession& x, const HostSystem& m,
                                     const CommunicationGraph& g, const CommBounds& bounds) {
  const std::size_t limit = x.state_bound() * bounds.n;
  const std::size_t visits = x.state_bound();
  std::set<std::tuple<Prefix, std::uint32_t, std::size_t, std::size_t>> seen;
  LivenessOutcome out;
  std::ostream* trace = x.trace();

  auto search = [&](auto& self, Prefix pi, StateId s, std::size_t level,
                    std::size_t count) -> bool {
    if (level > limit) return false;
    if (s == g.target) {
      if (count >= visits) {
        out.witness = pi;
        return true;
      }
      ++count;
      level = 0;
    }
    if (!seen.insert({pi, s.value, level, count}).second) return false;
    if (trace) {
      *trace << "search liveness at " << m.state_name(s) << " level " << level << " count "
             << count << '\n';
    }
    auto edges = g.graph.out(s);
    for (const Transition* t : edges) {
      if (!t->communicates() && self(self, pi, t->to, level, count)) return true;
    }
    if (level + 1 > limit) return false;
    return detail::probe_edges(x, m, pi, edges, [&](Prefix child, const Transition& t) {
      return self(self, child, t.to, level + 1, count);
    });
  };
  out.holds = search(search, x.root(), g.source, 0, 0);
  if (trace) *trace << "verdict liveness " << (out.holds ? "true" : "false") << '\n';
  return out;
}

/// Evaluates ID expressions against X by searching witness graphs.
class TestRunner {
 public:
  TestRunner(const HostSystem& m, const WitnessRegistry& reg, ComponentSession& x,
             BoundPolicy policy = {})
      : m_(m), reg_(reg), x_(x), policy_(policy) {
    for (const auto& g : reg_.graphs()) {
      std::size_t n = 0;
      if (g.kind == WitnessKind::ex) {
        n = g.graph.communication_edges() > 0 ? 1 : 0;
      } else {
        n = graph_bound(g.graph, g.kind == WitnessKind::eg, policy_);
      }
      bounds_.push_back(n);
    }
  }

  /// Communication bound n of graph `id`.
  std::size_t bound(std::uint32_t id) const { return bounds_.at(id - 2); }
  std::size_t max_bound() const {
    return bounds_.empty() ? 0 : *std::max_element(bounds_.begin(), bounds_.end());
  }

  bool test_wg(Prefix pi, StateId s, const IdExpr& psi) {
    switch (psi.kind) {
      case IdExpr::Kind::negation: return !test_wg(pi, s, *psi.lhs);
      case IdExpr::Kind::disjunction:
        return test_wg(pi, s, *psi.lhs) || test_wg(pi, s, *psi.rhs);
      case IdExpr::Kind::id: break;
    }
    if (psi.is_true()) return true;
    auto key = std::make_tuple(pi, s.value, psi.id);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    const WitnessGraph& g = reg_.at(psi.id);
    bool r = false;
    switch (g.kind) {
      case WitnessKind::ex: r = test_ex(pi, s, g); break;
      case WitnessKind::eu: r = test_eu(pi, s, g); break;
      case WitnessKind::eg: r = test_eg(pi, s, g); break;
    }
    if (trace()) {
      *trace() << "verdict " << to_string(g.kind) << '#' << g.id << " at " << m_.state_name(s)
               << " after '" << x_.render(pi) << "': " << (r ? "true" : "false") << '\n';
    }
    memo_.emplace(key, r);
    return r;
  }

  bool test_ex(Prefix pi, StateId s, const WitnessGraph& g) {
    auto edges = g.graph.out(s);
    for (const Transition* t : edges) {
      if (t->communicates()) continue;
      if (const IdExprPtr* e = g.first.find(t->to); e && test_wg(pi, t->to, **e)) return true;
    }
    return detail::probe_edges(x_, m_, pi, edges, [&](Prefix child, const Transition& t) {
      const IdExprPtr* e = g.first.find(t.to);
      return e && test_wg(child, t.to, **e);
    });
  }

  bool test_eu(Prefix pi, StateId s, const WitnessGraph& g, std::size_t level = 0) {
    Visited seen;
    return eu(pi, s, g, level, x_.state_bound() * bound(g.id), seen);
  }

  bool test_eg(Prefix pi, StateId s, const WitnessGraph& g) {
    for (const auto& scc : nontrivial_sccs(g.graph)) {
      for (StateId target : scc) {
        if (sub_test_eg(pi, s, target, g, 0, 0)) return true;
      }
    }
    return false;
  }

  bool sub_test_eg(Prefix pi, StateId s, StateId target, const WitnessGraph& g,
                   std::size_t level, std::size_t count) {
    Visited seen;
    return eg(pi, s, target, g, level, count, x_.state_bound() * bound(g.id), seen);
  }

 private:
  using Visited = std::set<std::tuple<Prefix, std::uint32_t, std::size_t, std::size_t>>;

  std::ostream* trace() const { return x_.trace(); }

  bool eu(Prefix pi, StateId s, const WitnessGraph& g, std::size_t level, std::size_t limit,
          Visited& seen) {
    if (level > limit) return false;
    if (const IdExprPtr* e = g.second.find(s); e && test_wg(pi, s, **e)) return true;
    const IdExprPtr* e = g.first.find(s);
    if (!e || !test_wg(pi, s, **e)) return false;
    if (!seen.insert({pi, s.value, level, 0}).second) return false;
    auto edges = g.graph.out(s);
    for (const Transition* t : edges) {
      if (!t->communicates() && eu(pi, t->to, g, level, limit, seen)) return true;
    }
    if (level + 1 > limit) return false;
    return detail::probe_edges(x_, m_, pi, edges, [&](Prefix child, const Transition& t) {
      return eu(child, t.to, g, level + 1, limit, seen);
    });
  }

  bool eg(Prefix pi, StateId s, StateId target, const WitnessGraph& g, std::size_t level,
          std::size_t count, std::size_t limit, Visited& seen) {
    if (level > limit) return false;
    const IdExprPtr* e = g.first.find(s);
    if (!e || !test_wg(pi, s, **e)) return false;
    if (s == target) {
      if (count >= x_.state_bound()) return true;
      ++count;
      level = 0;
    }
    if (!seen.insert({pi, s.value, level, count}).second) return false;
    auto edges = g.graph.out(s);
    for (const Transition* t : edges) {
      if (!t->communicates() && eg(pi, t->to, target, g, level, count, limit, seen)) return true;
    }
    if (level + 1 > limit) return false;
    return detail::probe_edges(x_, m_, pi, edges, [&](Prefix child, const Transition& t) {
      return eg(child, t.to, target, g, level + 1, count, limit, seen);
    });
  }

  const HostSystem& m_;
  const WitnessRegistry& reg_;
  ComponentSession& x_;
  BoundPolicy policy_;
  std::vector<std::size_t> bounds_;
  std::map<std::tuple<Prefix, std::uint32_t, std::uint32_t>, bool> memo_;
};

}  // namespace bbmc

#endif  // BBMC_TEST_RUNNER_HPP
