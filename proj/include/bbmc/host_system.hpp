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

#ifndef BBMC_HOST_SYSTEM_HPP
#define BBMC_HOST_SYSTEM_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "bbmc/errors.hpp"
#include "bbmc/ids.hpp"

namespace bbmc {

/// An exchange with the component: M sends `input`, X answers `output`.
struct Communication {
  InputId input;
  OutputId output;

  constexpr auto operator<=>(const Communication&) const = default;
};

enum class TransitionKind { environment, communication };

struct Transition {
  StateId from;
  StateId to;
  TransitionKind kind = TransitionKind::environment;
  EventId event{};      // environment transitions only
  Communication comm{};  // communication transitions only

  bool communicates() const noexcept {
    return kind == TransitionKind::communication;
  }
};

/// The fully specified host M = <S, Gamma, R_env, R_comm, I> together with
/// the Kripke labeling of its states.
///
/// At most one transition exists per ordered state pair; M itself may still
/// be nondeterministic.
class HostSystem {
 public:
  std::string name;

  StateId add_state(std::string name) {
    StateId id = states_.add(std::move(name));
    out_.emplace_back();
    in_.emplace_back();
    labels_.emplace_back();
    return id;
  }
  EventId add_event(std::string name) { return events_.add(std::move(name)); }
  InputId add_input(std::string name) { return inputs_.add(std::move(name)); }
  OutputId add_output(std::string name) {
    return outputs_.add(std::move(name));
  }
  void add_proposition(std::string name) {
    if (!propositions_.insert(name).second) {
      throw ValidationError("duplicate proposition '" + name + "'");
    }
  }

  void add_env(StateId from, EventId event, StateId to) {
    check_state(from);
    check_state(to);
    if (event.value >= events_.size()) {
      throw ValidationError("undeclared event");
    }
    Transition t;
    t.from = from;
    t.to = to;
    t.kind = TransitionKind::environment;
    t.event = event;
    insert(t);
  }

  void add_comm(StateId from, InputId input, OutputId output, StateId to) {
    check_state(from);
    check_state(to);
    if (input.value >= inputs_.size() || output.value >= outputs_.size()) {
      throw ValidationError("undeclared communication symbol");
    }
    Transition t;
    t.from = from;
    t.to = to;
    t.kind = TransitionKind::communication;
    t.comm = {input, output};
    insert(t);
  }

  void add_initial(StateId s) {
    check_state(s);
    if (std::find(initial_.begin(), initial_.end(), s) == initial_.end()) {
      initial_.push_back(s);
    }
  }

  void add_label(StateId s, const std::string& proposition) {
    check_state(s);
    if (!propositions_.contains(proposition)) {
      throw ValidationError("undeclared proposition '" + proposition + "'");
    }
    labels_[s.value].insert(proposition);
  }

  /// Whole-model checks that cannot be done incrementally.
  void validate() const {
    if (states_.empty()) throw ValidationError("system declares no states");
    if (initial_.empty()) throw ValidationError("system has no initial state");
    std::set<std::string> seen;
    auto claim = [&](const std::vector<std::string>& names, const char* what) {
      for (const auto& n : names) {
        if (!seen.insert(n).second) {
          throw ValidationError(std::string(what) + " '" + n +
                                "' reuses a name from another alphabet");
        }
      }
    };
    claim(events_.names(), "event");
    claim(inputs_.names(), "input");
    claim(outputs_.names(), "output");
    for (const auto& p : propositions_) {
      if (states_.contains(p)) {
        throw ValidationError("proposition '" + p +
                              "' collides with a state name");
      }
    }
  }

  std::size_t state_count() const noexcept { return states_.size(); }
  std::vector<StateId> states() const { return states_.ids(); }
  const std::string& state_name(StateId s) const { return states_.name(s); }
  std::optional<StateId> find_state(std::string_view name) const {
    return states_.find(name);
  }
  StateId state(std::string_view name) const {
    auto s = states_.find(name);
    if (!s) throw UnknownState(std::string(name));
    return *s;
  }

  const Alphabet<StateId>& state_names() const noexcept { return states_; }
  const Alphabet<EventId>& events() const noexcept { return events_; }
  const Alphabet<InputId>& inputs() const noexcept { return inputs_; }
  const Alphabet<OutputId>& outputs() const noexcept { return outputs_; }
  const std::set<std::string>& propositions() const noexcept {
    return propositions_;
  }
  const std::vector<StateId>& initial_states() const noexcept {
    return initial_;
  }
  bool is_initial(StateId s) const {
    return std::find(initial_.begin(), initial_.end(), s) != initial_.end();
  }

  const std::vector<Transition>& transitions() const noexcept {
    return transitions_;
  }
  /// Indices into transitions() leaving / entering a state.
  const std::vector<std::size_t>& out(StateId s) const {
    return out_.at(s.value);
  }
  const std::vector<std::size_t>& in(StateId s) const { return in_.at(s.value); }

  const Transition* between(StateId from, StateId to) const {
    auto it = pair_index_.find({from.value, to.value});
    return it == pair_index_.end() ? nullptr : &transitions_[it->second];
  }

  bool has_communication() const {
    return std::any_of(transitions_.begin(), transitions_.end(),
                       [](const Transition& t) { return t.communicates(); });
  }

  const std::set<std::string>& labels(StateId s) const {
    return labels_.at(s.value);
  }

  /// An atom is a declared proposition or a state name ("current state is").
  bool is_atom(std::string_view name) const {
    return propositions_.contains(std::string(name)) || states_.contains(name);
  }

  bool atom_holds(StateId s, std::string_view name) const {
    if (auto named = states_.find(name)) return *named == s;
    if (!propositions_.contains(std::string(name))) {
      throw ValidationError("unknown atomic proposition '" +
                            std::string(name) + "'");
    }
    return labels_.at(s.value).contains(std::string(name));
  }

  std::string describe(const Transition& t) const {
    std::string out = state_name(t.from) + " -";
    if (t.communicates()) {
      out += inputs_.name(t.comm.input) + "/" + outputs_.name(t.comm.output);
    } else {
      out += events_.name(t.event) + "?";
    }
    return out + "-> " + state_name(t.to);
  }

 private:
  void check_state(StateId s) const {
    if (s.value >= states_.size()) throw ValidationError("undeclared state");
  }

  void insert(const Transition& t) {
    auto key = std::make_pair(t.from.value, t.to.value);
    if (pair_index_.contains(key)) {
      throw ValidationError("second transition between " + state_name(t.from) +
                            " and " + state_name(t.to) +
                            " (only one transition per state pair)");
    }
    pair_index_.emplace(key, transitions_.size());
    out_[t.from.value].push_back(transitions_.size());
    in_[t.to.value].push_back(transitions_.size());
    transitions_.push_back(t);
  }

  Alphabet<StateId> states_;
  Alphabet<EventId> events_;
  Alphabet<InputId> inputs_;
  Alphabet<OutputId> outputs_;
  std::set<std::string> propositions_;
  std::vector<Transition> transitions_;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<std::vector<std::size_t>> in_;
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::size_t> pair_index_;
  std::vector<StateId> initial_;
  std::vector<std::set<std::string>> labels_;
};

}  // namespace bbmc

#endif  // BBMC_HOST_SYSTEM_HPP
