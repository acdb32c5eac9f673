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

#ifndef BBMC_TABLEAU_HPP
#define BBMC_TABLEAU_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bbmc/errors.hpp"
#include "bbmc/host_system.hpp"
#include "bbmc/ids.hpp"

namespace bbmc {

using TableauStateId = Id<struct TableauStateTag>;

/// `p` or `!p`; an empty conjunction is `true`.
struct Literal {
  std::string atom;
  bool positive = true;

  friend bool operator==(const Literal&, const Literal&) = default;
};

/// A pre-built tableau: states with propositional guards, successor edges,
/// tagged sat sets and fairness sets.
class Tableau {
 public:
  TableauStateId add_state(std::string name) {
    TableauStateId q = states_.add(std::move(name));
    guards_.emplace_back();
    succ_.emplace_back();
    return q;
  }
  void add_initial(TableauStateId q) { initial_.push_back(check(q)); }
  void set_guard(TableauStateId q, std::vector<Literal> g) { guards_[check(q).value] = std::move(g); }
  void add_edge(TableauStateId a, TableauStateId b) {
    auto& s = succ_[check(a).value];
    check(b);
    if (std::find(s.begin(), s.end(), b) == s.end()) s.push_back(b);
  }
  void add_sat(const std::string& tag, std::vector<TableauStateId> qs) {
    auto& v = sat_[tag];
    for (auto q : qs) v.push_back(check(q));
  }
  void add_fairness(std::vector<TableauStateId> qs) {
    for (auto q : qs) check(q);
    fair_.push_back(std::move(qs));
  }

  const Alphabet<TableauStateId>& states() const noexcept { return states_; }
  std::size_t state_count() const noexcept { return states_.size(); }
  const std::string& name(TableauStateId q) const { return states_.name(q); }
  const std::vector<TableauStateId>& initial() const noexcept { return initial_; }
  const std::vector<Literal>& guard(TableauStateId q) const { return guards_.at(q.value); }
  const std::vector<TableauStateId>& successors(TableauStateId q) const {
    return succ_.at(q.value);
  }
  const std::map<std::string, std::vector<TableauStateId>>& sat() const noexcept { return sat_; }
  const std::vector<std::vector<TableauStateId>>& fairness() const noexcept { return fair_; }

  /// Start states for `tag`: sat(tag), the only sat set when `tag` is
  /// empty, or the tinit states when the tableau defines no sat set.
  const std::vector<TableauStateId>& start(const std::string& tag) const {
    if (!tag.empty()) {
      auto it = sat_.find(tag);
      if (it == sat_.end()) throw ValidationError("tableau has no sat set '" + tag + "'");
      return it->second;
    }
    if (sat_.empty()) return initial_;
    if (sat_.size() == 1) return sat_.begin()->second;
    throw ValidationError("tableau defines several sat sets; choose one with a tag");
  }

  std::vector<std::string> atoms() const {
    std::vector<std::string> out;
    for (const auto& g : guards_) {
      for (const auto& l : g) {
        if (std::find(out.begin(), out.end(), l.atom) == out.end()) out.push_back(l.atom);
      }
    }
    return out;
  }

 private:
  TableauStateId check(TableauStateId q) const {
    if (q.value >= states_.size()) throw ValidationError("undeclared tableau state");
    return q;
  }

  Alphabet<TableauStateId> states_;
  std::vector<std::vector<Literal>> guards_;
  std::vector<std::vector<TableauStateId>> succ_;
  std::vector<TableauStateId> initial_;
  std::map<std::string, std::vector<TableauStateId>> sat_;
  std::vector<std::vector<TableauStateId>> fair_;
};

inline bool guard_holds(const HostSystem& m, StateId s, const std::vector<Literal>& g) {
  for (const auto& l : g) {
    if (m.atom_holds(s, l.atom) != l.positive) return false;
  }
  return true;
}

/// The composition of M and a tableau. P is a host system over compatible
/// pairs, named "s@q", with M's alphabets and transition kinds.
struct TableauProduct {
  HostSystem system;
  std::vector<std::pair<StateId, TableauStateId>> pairs;  // indexed by P state
  std::vector<std::vector<StateId>> fairness;             // lifted fairness sets
  std::vector<StateId> start;                             // (s, q) with q in sat(f)
};

inline TableauProduct build_product(const HostSystem& m, const Tableau& t,
                                    const std::string& tag = {}) {
  for (const auto& a : t.atoms()) {
    if (!m.is_atom(a)) throw AlphabetMismatch("tableau guard uses unknown proposition '" + a + "'");
  }
  TableauProduct p;
  HostSystem& sys = p.system;
  for (const auto& e : m.events().names()) sys.add_event(e);
  for (const auto& a : m.inputs().names()) sys.add_input(a);
  for (const auto& b : m.outputs().names()) sys.add_output(b);

  const std::size_t nq = t.state_count();
  std::vector<std::vector<std::optional<StateId>>> index(
      m.state_count(), std::vector<std::optional<StateId>>(nq));
  for (StateId s : m.states()) {
    for (TableauStateId q : t.states().ids()) {
      if (!guard_holds(m, s, t.guard(q))) continue;
      index[s.value][q.value] = sys.add_state(m.state_name(s) + "@" + t.name(q));
      p.pairs.push_back({s, q});
    }
  }
  for (const auto& tr : m.transitions()) {
    for (TableauStateId q : t.states().ids()) {
      auto from = index[tr.from.value][q.value];
      if (!from) continue;
      for (TableauStateId q2 : t.successors(q)) {
        auto to = index[tr.to.value][q2.value];
        if (!to) continue;
        if (tr.communicates()) {
          sys.add_comm(*from, tr.comm.input, tr.comm.output, *to);
        } else {
          sys.add_env(*from, tr.event, *to);
        }
      }
    }
  }
  for (const auto& f : t.fairness()) {
    std::vector<StateId> lifted;
    for (std::uint32_t i = 0; i < p.pairs.size(); ++i) {
      if (std::find(f.begin(), f.end(), p.pairs[i].second) != f.end()) lifted.push_back(StateId{i});
    }
    p.fairness.push_back(std::move(lifted));
  }
  const auto& start = t.start(tag);
  for (StateId s : m.initial_states()) {
    for (TableauStateId q : start) {
      if (auto ps = index[s.value][q.value]) p.start.push_back(*ps);
    }
  }
  for (StateId s : p.start) sys.add_initial(s);
  return p;
}

/// One-target form of a fairness problem: P' has a path visiting some
/// target infinitely often iff P has a path visiting every fairness set
/// infinitely often.
struct Degeneralized {
  HostSystem system;
  std::vector<StateId> targets;
  std::vector<StateId> start;
  std::vector<std::pair<StateId, std::size_t>> origin;  // (P state, counter)
};

inline Degeneralized degeneralize(const HostSystem& p, const std::vector<std::vector<StateId>>& fairness,
                                  const std::vector<StateId>& start) {
  Degeneralized d;
  const std::size_t k = fairness.size();
  if (k <= 1) {
    d.system = p;
    d.start = start;
    d.targets = k == 0 ? p.states() : fairness[0];
    std::sort(d.targets.begin(), d.targets.end());
    d.targets.erase(std::unique(d.targets.begin(), d.targets.end()), d.targets.end());
    for (StateId s : p.states()) d.origin.push_back({s, 0});
    return d;
  }
  std::vector<std::vector<bool>> in(k, std::vector<bool>(p.state_count(), false));
  for (std::size_t i = 0; i < k; ++i) {
    for (StateId s : fairness[i]) in[i][s.value] = true;
  }
  HostSystem& sys = d.system;
  for (const auto& e : p.events().names()) sys.add_event(e);
  for (const auto& a : p.inputs().names()) sys.add_input(a);
  for (const auto& b : p.outputs().names()) sys.add_output(b);
  auto id = [&](StateId s, std::size_t i) {
    return StateId{static_cast<std::uint32_t>(s.value * k + i)};
  };
  for (StateId s : p.states()) {
    for (std::size_t i = 0; i < k; ++i) {
      sys.add_state(p.state_name(s) + "#" + std::to_string(i));
      d.origin.push_back({s, i});
    }
  }
  for (const auto& tr : p.transitions()) {
    for (std::size_t i = 0; i < k; ++i) {
      std::size_t j = in[i][tr.from.value] ? (i + 1) % k : i;
      if (tr.communicates()) {
        sys.add_comm(id(tr.from, i), tr.comm.input, tr.comm.output, id(tr.to, j));
      } else {
        sys.add_env(id(tr.from, i), tr.event, id(tr.to, j));
      }
    }
  }
  for (StateId s : fairness[0]) d.targets.push_back(id(s, 0));
  std::sort(d.targets.begin(), d.targets.end());
  d.targets.erase(std::unique(d.targets.begin(), d.targets.end()), d.targets.end());
  for (StateId s : start) {
    d.start.push_back(id(s, 0));
    sys.add_initial(id(s, 0));
  }
  return d;
}

}  // namespace bbmc

#endif  // BBMC_TABLEAU_HPP
