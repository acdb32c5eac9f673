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

#ifndef BBMC_ORACLE_HPP
#define BBMC_ORACLE_HPP

#include <algorithm>
#include <cstdint>
#include <deque>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "bbmc/errors.hpp"
#include "bbmc/formula.hpp"
#include "bbmc/graph.hpp"
#include "bbmc/host_system.hpp"
#include "bbmc/mealy.hpp"
#include "bbmc/tableau.hpp"

namespace bbmc {

/// Throws AlphabetMismatch unless M and X agree on the input and output
/// alphabets (as sets of names).
inline void require_matching_alphabets(const HostSystem& m, const MealyMachine& x) {
  auto same = [](std::vector<std::string> a, std::vector<std::string> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
  };
  if (!same(m.inputs().names(), x.inputs().names())) {
    throw AlphabetMismatch("component inputs differ from the system's inputs");
  }
  if (!same(m.outputs().names(), x.outputs().names())) {
    throw AlphabetMismatch("component outputs differ from the system's outputs");
  }
}

/// M and a fully specified X as one flat transition system over pairs.
struct ComposedSystem {
  std::size_t host_states = 0;
  std::size_t component_states = 0;
  std::vector<std::vector<std::uint32_t>> succ;  // by pair index
  std::vector<std::uint32_t> initial;

  std::uint32_t index(StateId s, std::uint32_t x) const {
    return static_cast<std::uint32_t>(s.value * component_states + x);
  }
  StateId host(std::uint32_t pair) const {
    return StateId{static_cast<std::uint32_t>(pair / component_states)};
  }
  std::uint32_t component(std::uint32_t pair) const {
    return static_cast<std::uint32_t>(pair % component_states);
  }
  std::size_t size() const noexcept { return succ.size(); }
};

inline ComposedSystem compose(const HostSystem& m, const MealyMachine& x) {
  require_matching_alphabets(m, x);
  ComposedSystem c;
  c.host_states = m.state_count();
  c.component_states = x.state_count();
  c.succ.resize(c.host_states * c.component_states);
  for (const auto& t : m.transitions()) {
    for (std::uint32_t q = 0; q < c.component_states; ++q) {
      if (!t.communicates()) {
        c.succ[c.index(t.from, q)].push_back(c.index(t.to, q));
        continue;
      }
      InputId a = *x.inputs().find(m.inputs().name(t.comm.input));
      const auto& r = x.step(q, a);
      if (x.outputs().name(r.output) == m.outputs().name(t.comm.output)) {
        c.succ[c.index(t.from, q)].push_back(c.index(t.to, r.next));
      }
    }
  }
  for (StateId s : m.initial_states()) c.initial.push_back(c.index(s, x.initial()));
  return c;
}

namespace detail {

using Set = std::vector<bool>;

inline Set exists_next(const ComposedSystem& c, const Set& z) {
  Set out(c.size(), false);
  for (std::uint32_t v = 0; v < c.size(); ++v) {
    for (auto w : c.succ[v]) {
      if (z[w]) {
        out[v] = true;
        break;
      }
    }
  }
  return out;
}

inline Set all_next(const ComposedSystem& c, const Set& z) {
  Set out(c.size(), true);
  for (std::uint32_t v = 0; v < c.size(); ++v) {
    for (auto w : c.succ[v]) {
      if (!z[w]) {
        out[v] = false;
        break;
      }
    }
  }
  return out;
}

template <class Step>
Set fixpoint(Set z, Step step) {
  for (;;) {
    Set next = step(z);
    if (next == z) return z;
    z = std::move(next);
  }
}

inline Set sat(const ComposedSystem& c, const HostSystem& m, const Formula& f) {
  const std::size_t n = c.size();
  auto unite = [](Set a, const Set& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = a[i] || b[i];
    return a;
  };
  auto meet = [](Set a, const Set& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = a[i] && b[i];
    return a;
  };
  auto complement = [](Set a) {
    a.flip();
    return a;
  };
  switch (f.op) {
    case Op::True: return Set(n, true);
    case Op::False: return Set(n, false);
    case Op::Atom: {
      Set out(n, false);
      for (std::uint32_t v = 0; v < n; ++v) out[v] = m.atom_holds(c.host(v), f.name);
      return out;
    }
    case Op::Not: return complement(sat(c, m, *f.lhs));
    case Op::And: return meet(sat(c, m, *f.lhs), sat(c, m, *f.rhs));
    case Op::Or: return unite(sat(c, m, *f.lhs), sat(c, m, *f.rhs));
    case Op::Implies: return unite(complement(sat(c, m, *f.lhs)), sat(c, m, *f.rhs));
    case Op::EX: return exists_next(c, sat(c, m, *f.lhs));
    case Op::AX: return all_next(c, sat(c, m, *f.lhs));
    case Op::EF: {
      Set g = sat(c, m, *f.lhs);
      return fixpoint(Set(n, false), [&](const Set& z) { return unite(g, exists_next(c, z)); });
    }
    case Op::AF: {
      Set g = sat(c, m, *f.lhs);
      return fixpoint(Set(n, false), [&](const Set& z) { return unite(g, all_next(c, z)); });
    }
    case Op::EG: {
      Set g = sat(c, m, *f.lhs);
      return fixpoint(Set(n, true), [&](const Set& z) { return meet(g, exists_next(c, z)); });
    }
    case Op::AG: {
      Set g = sat(c, m, *f.lhs);
      return fixpoint(Set(n, true), [&](const Set& z) { return meet(g, all_next(c, z)); });
    }
    case Op::EU: {
      Set a = sat(c, m, *f.lhs);
      Set b = sat(c, m, *f.rhs);
      return fixpoint(Set(n, false),
                      [&](const Set& z) { return unite(b, meet(a, exists_next(c, z))); });
    }
    case Op::AU: {
      Set a = sat(c, m, *f.lhs);
      Set b = sat(c, m, *f.rhs);
      return fixpoint(Set(n, false),
                      [&](const Set& z) { return unite(b, meet(a, all_next(c, z))); });
    }
  }
  return Set(n, false);
}

// Vertices of nontrivial SCCs of an adjacency list.
inline std::vector<std::vector<std::uint32_t>> cyclic_components(
    const std::vector<std::vector<std::uint32_t>>& adj) {
  auto comp = scc_index(adj);
  std::uint32_t count = 0;
  for (auto c : comp) count = std::max(count, c + 1);
  std::vector<std::vector<std::uint32_t>> members(count);
  std::vector<bool> cyclic(count, false);
  for (std::uint32_t v = 0; v < adj.size(); ++v) {
    members[comp[v]].push_back(v);
    for (auto w : adj[v]) {
      if (comp[w] == comp[v]) cyclic[comp[v]] = true;
    }
  }
  std::vector<std::vector<std::uint32_t>> out;
  for (std::uint32_t c = 0; c < count; ++c) {
    if (cyclic[c]) out.push_back(std::move(members[c]));
  }
  return out;
}

inline std::vector<bool> reachable(const std::vector<std::vector<std::uint32_t>>& adj,
                                   const std::vector<std::uint32_t>& from) {
  std::vector<bool> seen(adj.size(), false);
  std::deque<std::uint32_t> queue;
  for (auto v : from) {
    if (!seen[v]) {
      seen[v] = true;
      queue.push_back(v);
    }
  }
  while (!queue.empty()) {
    auto v = queue.front();
    queue.pop_front();
    for (auto w : adj[v]) {
      if (!seen[w]) {
        seen[w] = true;
        queue.push_back(w);
      }
    }
  }
  return seen;
}

}  // namespace detail

/// Classical CTL labeling of the composed system, for any CTL formula.
/// E-operators range over infinite paths where it matters (EG); AX holds
/// vacuously at dead ends, so each A-operator is the dual of its E-form.
inline std::vector<bool> oracle_sat(const ComposedSystem& c, const HostSystem& m, const Formula& f) {
  return detail::sat(c, m, f);
}

inline bool oracle_ctl(const ComposedSystem& c, const HostSystem& m, StateId s0,
                       const MealyMachine& x, const Formula& f) {
  return detail::sat(c, m, f)[c.index(s0, x.initial())];
}

/// True iff the composed system, started at (s0, initial), has an infinite
/// path through states projecting to sf infinitely often.
inline bool oracle_infinite_often(const ComposedSystem& c, StateId s0, StateId sf,
                                  const MealyMachine& x) {
  auto seen = detail::reachable(c.succ, {c.index(s0, x.initial())});
  for (const auto& comp : detail::cyclic_components(c.succ)) {
    for (auto v : comp) {
      if (seen[v] && c.host(v) == sf) return true;
    }
  }
  return false;
}

/// Existence of a fair path of M x X x T from (s0, initial, q), q a start
/// state of the tableau, checked by generalized Buchi SCC analysis.
inline bool oracle_ltl(const HostSystem& m, const MealyMachine& x, const Tableau& t,
                       const std::string& tag, StateId s0) {
  ComposedSystem c = compose(m, x);
  const std::size_t nq = t.state_count();
  auto id = [&](std::uint32_t pair, TableauStateId q) {
    return static_cast<std::uint32_t>(pair * nq + q.value);
  };
  std::vector<bool> ok(c.size() * nq, false);
  for (std::uint32_t v = 0; v < c.size(); ++v) {
    for (TableauStateId q : t.states().ids()) ok[id(v, q)] = guard_holds(m, c.host(v), t.guard(q));
  }
  std::vector<std::vector<std::uint32_t>> adj(c.size() * nq);
  for (std::uint32_t v = 0; v < c.size(); ++v) {
    for (auto w : c.succ[v]) {
      for (TableauStateId q : t.states().ids()) {
        if (!ok[id(v, q)]) continue;
        for (TableauStateId q2 : t.successors(q)) {
          if (ok[id(w, q2)]) adj[id(v, q)].push_back(id(w, q2));
        }
      }
    }
  }
  std::vector<std::uint32_t> start;
  for (TableauStateId q : t.start(tag)) {
    auto v = id(c.index(s0, x.initial()), q);
    if (ok[v]) start.push_back(v);
  }
  auto seen = detail::reachable(adj, start);
  for (const auto& comp : detail::cyclic_components(adj)) {
    if (!seen[comp.front()]) continue;
    bool fair = true;
    for (const auto& f : t.fairness()) {
      bool hit = false;
      for (auto v : comp) {
        TableauStateId q{static_cast<std::uint32_t>(v % nq)};
        if (std::find(f.begin(), f.end(), q) != f.end()) hit = true;
      }
      fair = fair && hit;
    }
    if (fair) return true;
  }
  return false;
}

/// Size limits for generated instances.
struct InstanceLimits {
  std::size_t host_states = 6;
  std::size_t component_states = 3;
  std::size_t events = 1;
  std::size_t inputs = 2;
  std::size_t outputs = 2;
  std::size_t depth = 3;
};

struct RandomInstance {
  HostSystem system;
  MealyMachine component;
};

namespace detail {

// Uniform enough for test generation and identical on every platform.
inline std::size_t pick(std::mt19937_64& rng, std::size_t n) {
  return n == 0 ? 0 : static_cast<std::size_t>(rng() % n);
}

}  // namespace detail

/// Reproducible random problem: a connected M (every state reachable from
/// the initial state s0) and a complete deterministic X.
inline RandomInstance random_instance(std::uint64_t seed, const InstanceLimits& limits = {}) {
  using detail::pick;
  std::mt19937_64 rng(seed);
  RandomInstance r;
  HostSystem& m = r.system;
  std::size_t n = 1 + pick(rng, limits.host_states);
  for (std::size_t i = 0; i < n; ++i) m.add_state("s" + std::to_string(i));
  for (std::size_t i = 0; i < std::max<std::size_t>(1, limits.events); ++i) {
    m.add_event("e" + std::to_string(i));
  }
  for (std::size_t i = 0; i < std::max<std::size_t>(1, limits.inputs); ++i) {
    m.add_input("a" + std::to_string(i));
  }
  for (std::size_t i = 0; i < std::max<std::size_t>(1, limits.outputs); ++i) {
    m.add_output("b" + std::to_string(i));
  }
  m.add_proposition("p");
  m.add_initial(StateId{0});
  auto connect = [&](StateId from, StateId to) {
    if (m.between(from, to)) return;
    if (pick(rng, 2) == 0) {
      m.add_env(from, EventId{static_cast<std::uint32_t>(pick(rng, m.events().size()))}, to);
    } else {
      m.add_comm(from, InputId{static_cast<std::uint32_t>(pick(rng, m.inputs().size()))},
                 OutputId{static_cast<std::uint32_t>(pick(rng, m.outputs().size()))}, to);
    }
  };
  for (std::uint32_t i = 1; i < n; ++i) {
    connect(StateId{static_cast<std::uint32_t>(pick(rng, i))}, StateId{i});
  }
  std::size_t extra = pick(rng, 2 * n + 1);
  for (std::size_t e = 0; e < extra; ++e) {
    connect(StateId{static_cast<std::uint32_t>(pick(rng, n))},
            StateId{static_cast<std::uint32_t>(pick(rng, n))});
  }
  for (StateId s : m.states()) {
    if (pick(rng, 2) == 0) m.add_label(s, "p");
  }

  MealyMachine& x = r.component;
  x.name = "x" + std::to_string(seed);
  for (const auto& a : m.inputs().names()) x.add_input(a);
  for (const auto& b : m.outputs().names()) x.add_output(b);
  std::size_t k = 1 + pick(rng, limits.component_states);
  for (std::size_t i = 0; i < k; ++i) x.add_state("x" + std::to_string(i));
  x.set_initial(0);
  for (std::uint32_t q = 0; q < k; ++q) {
    for (InputId a : x.inputs().ids()) {
      x.add_delta(q, a, OutputId{static_cast<std::uint32_t>(pick(rng, x.outputs().size()))},
                  static_cast<std::uint32_t>(pick(rng, k)));
    }
  }
  return r;
}

/// Random CTL formula of depth at most `depth` over `atoms`, using every
/// operator of the surface syntax.
inline FormulaPtr random_formula(std::mt19937_64& rng, const std::vector<std::string>& atoms,
                                 std::size_t depth) {
  using detail::pick;
  auto leaf = [&]() -> FormulaPtr {
    std::size_t r = pick(rng, atoms.size() + 2);
    if (r == atoms.size()) return Formula::truth();
    if (r == atoms.size() + 1) return Formula::falsity();
    return Formula::atom(atoms[r]);
  };
  if (depth <= 1 || pick(rng, 4) == 0) return leaf();
  static constexpr Op kUnary[] = {Op::Not, Op::EX, Op::AX, Op::EF, Op::AF, Op::EG, Op::AG};
  static constexpr Op kBinary[] = {Op::And, Op::Or, Op::Implies, Op::EU, Op::AU};
  if (pick(rng, 2) == 0) {
    return Formula::unary(kUnary[pick(rng, std::size(kUnary))],
                          random_formula(rng, atoms, depth - 1));
  }
  Op op = kBinary[pick(rng, std::size(kBinary))];
  auto l = random_formula(rng, atoms, depth - 1);
  auto r = random_formula(rng, atoms, depth - 1);
  return Formula::binary(op, std::move(l), std::move(r));
}

}  // namespace bbmc

#endif  // BBMC_ORACLE_HPP
