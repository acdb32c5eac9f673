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

#ifndef BBMC_CTL_ENGINE_HPP
#define BBMC_CTL_ENGINE_HPP

#include <deque>
#include <vector>

#include "bbmc/formula.hpp"
#include "bbmc/graph.hpp"
#include "bbmc/host_system.hpp"
#include "bbmc/witness.hpp"

namespace bbmc {

namespace detail {

// How a state is labeled while a handler's fixpoint runs. Ranks only grow.
enum class Rank { none, inherited, testing, sure };

inline LabelingFunction materialize(const std::vector<Rank>& rank, const IdExprPtr& fresh,
                                    const LabelingFunction* inherited = nullptr) {
  LabelingFunction out;
  for (std::uint32_t i = 0; i < rank.size(); ++i) {
    StateId s{i};
    switch (rank[i]) {
      case Rank::none: break;
      case Rank::inherited: out.define(s, *inherited->find(s)); break;
      case Rank::testing: out.define(s, fresh); break;
      case Rank::sure: out.define(s, IdExpr::truth()); break;
    }
  }
  return out;
}

}  // namespace detail

/// Atomic case: Id(1) wherever the atom (or `true`) holds.
inline LabelingFunction handle_atomic(const HostSystem& m, const Formula& h) {
  LabelingFunction out;
  for (StateId s : m.states()) {
    if (h.op == Op::True || m.atom_holds(s, h.name)) out.define(s, IdExpr::truth());
  }
  return out;
}

inline LabelingFunction handle_union(const LabelingFunction& l1, const LabelingFunction& l2) {
  LabelingFunction out;
  for (const auto& [s, e] : l1) {
    const IdExprPtr* other = l2.find(s);
    if (!other) {
      out.define(s, e);
    } else if (e->is_true() || (*other)->is_true()) {
      out.define(s, IdExpr::truth());
    } else {
      out.define(s, IdExpr::disjunction(e, *other));
    }
  }
  for (const auto& [s, e] : l2) {
    if (!l1.contains(s)) out.define(s, e);
  }
  return out;
}

inline LabelingFunction handle_negation(const HostSystem& m, const LabelingFunction& l1) {
  LabelingFunction out;
  for (StateId s : m.states()) {
    const IdExprPtr* e = l1.find(s);
    if (!e) {
      out.define(s, IdExpr::truth());
    } else if (!(*e)->is_true()) {
      out.define(s, IdExpr::negation(*e));
    }
  }
  return out;
}

inline LabelingFunction handle_ex(const HostSystem& m, const LabelingFunction& lg,
                                  WitnessRegistry& reg) {
  using detail::Rank;
  std::vector<Rank> rank(m.state_count(), Rank::none);
  WitnessGraph g{WitnessKind::ex, 0, SubGraph(m.state_count()), lg, {}};
  for (StateId t : lg.domain()) g.graph.add_node(t);
  for (const auto& tr : m.transitions()) {
    if (!lg.contains(tr.to)) continue;
    g.graph.add_edge(tr);
    Rank r = !tr.communicates() && lg.is_true(tr.to) ? Rank::sure : Rank::testing;
    rank[tr.from.value] = std::max(rank[tr.from.value], r);
  }
  IdExprPtr fresh = IdExpr::leaf(reg.next_id());
  reg.add(std::move(g));
  return detail::materialize(rank, fresh);
}

inline LabelingFunction handle_eu(const HostSystem& m, const LabelingFunction& l1,
                                  const LabelingFunction& l2, WitnessRegistry& reg) {
  using detail::Rank;
  std::vector<Rank> rank(m.state_count(), Rank::none);
  std::deque<StateId> work;
  for (const auto& [s, e] : l2) {
    rank[s.value] = e->is_true() ? Rank::sure : Rank::inherited;
    work.push_back(s);
  }
  // A g2-state whose own label is not 1 may still satisfy the until through
  // a g1-continuation, so it is upgraded like any other g1-state.
  while (!work.empty()) {
    StateId t = work.front();
    work.pop_front();
    for (std::size_t idx : m.in(t)) {
      const Transition& tr = m.transitions()[idx];
      StateId s = tr.from;
      if (!l1.contains(s)) continue;
      Rank r = l1.is_true(s) && !tr.communicates() && rank[t.value] == Rank::sure
                   ? Rank::sure
                   : Rank::testing;
      if (r > rank[s.value]) {
        rank[s.value] = r;
        work.push_back(s);
      }
    }
  }
  IdExprPtr fresh = IdExpr::leaf(reg.next_id());
  LabelingFunction out = detail::materialize(rank, fresh, &l2);
  reg.add(WitnessGraph{WitnessKind::eu, 0, induced_subgraph(m, out.domain()), l1, l2});
  return out;
}

inline LabelingFunction handle_eg(const HostSystem& m, const LabelingFunction& lg,
                                  WitnessRegistry& reg) {
  using detail::Rank;
  const std::size_t n = m.state_count();
  std::vector<Rank> rank(n, Rank::none);

  // Environment-only loops through Id(1) states need no testing.
  SubGraph env_true(n);
  for (StateId s : lg.domain()) {
    if (lg.is_true(s)) env_true.add_node(s);
  }
  for (const auto& tr : m.transitions()) {
    if (!tr.communicates() && lg.is_true(tr.from) && lg.is_true(tr.to)) env_true.add_edge(tr);
  }
  std::deque<StateId> work;
  for (const auto& scc : nontrivial_sccs(env_true)) {
    for (StateId s : scc) {
      rank[s.value] = Rank::sure;
      work.push_back(s);
    }
  }
  while (!work.empty()) {
    StateId t = work.front();
    work.pop_front();
    for (std::size_t idx : m.in(t)) {
      const Transition& tr = m.transitions()[idx];
      if (tr.communicates() || !lg.is_true(tr.from) || rank[tr.from.value] == Rank::sure) continue;
      rank[tr.from.value] = Rank::sure;
      work.push_back(tr.from);
    }
  }

  // Everything else in dom(L_g) that can stay inside dom(L_g) forever
  // needs testing.
  SubGraph within = induced_subgraph(m, lg.domain());
  std::vector<bool> reach(n, false);
  for (const auto& scc : nontrivial_sccs(within)) {
    for (StateId s : scc) {
      if (!reach[s.value]) {
        reach[s.value] = true;
        work.push_back(s);
      }
    }
  }
  while (!work.empty()) {
    StateId t = work.front();
    work.pop_front();
    for (std::size_t idx : m.in(t)) {
      StateId s = m.transitions()[idx].from;
      if (lg.contains(s) && !reach[s.value]) {
        reach[s.value] = true;
        work.push_back(s);
      }
    }
  }
  for (std::uint32_t i = 0; i < n; ++i) {
    if (reach[i] && rank[i] != Rank::sure) rank[i] = Rank::testing;
  }

  IdExprPtr fresh = IdExpr::leaf(reg.next_id());
  LabelingFunction out = detail::materialize(rank, fresh);
  reg.add(WitnessGraph{WitnessKind::eg, 0, induced_subgraph(m, out.domain()), lg, {}});
  return out;
}

/// Labels M for a normalized formula, registering one witness graph per
/// temporal operator (children first).
inline LabelingFunction process_ctl(const HostSystem& m, const Formula& h, WitnessRegistry& reg) {
  switch (h.op) {
    case Op::True:
    case Op::Atom: return handle_atomic(m, h);
    case Op::Or: {
      LabelingFunction l1 = process_ctl(m, *h.lhs, reg);
      LabelingFunction l2 = process_ctl(m, *h.rhs, reg);
      return handle_union(l1, l2);
    }
    case Op::Not: return handle_negation(m, process_ctl(m, *h.lhs, reg));
    case Op::EX: return handle_ex(m, process_ctl(m, *h.lhs, reg), reg);
    case Op::EU: {
      LabelingFunction l1 = process_ctl(m, *h.lhs, reg);
      LabelingFunction l2 = process_ctl(m, *h.rhs, reg);
      return handle_eu(m, l1, l2, reg);
    }
    case Op::EG: return handle_eg(m, process_ctl(m, *h.lhs, reg), reg);
    default: throw Error("formula is not in existential normal form: " + to_string(h));
  }
}

}  // namespace bbmc

#endif  // BBMC_CTL_ENGINE_HPP
