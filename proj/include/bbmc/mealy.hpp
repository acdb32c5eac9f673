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

#ifndef BBMC_MEALY_HPP
#define BBMC_MEALY_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bbmc/errors.hpp"
#include "bbmc/ids.hpp"

namespace bbmc {

/// A fully specified deterministic Mealy machine. Used as the in-process
/// reference component and as the oracle's view of X.
class MealyMachine {
 public:
  struct Response {
    OutputId output;
    std::uint32_t next = 0;
  };

  std::string name;

  InputId add_input(std::string s) { return inputs_.add(std::move(s)); }
  OutputId add_output(std::string s) { return outputs_.add(std::move(s)); }

  std::uint32_t add_state(std::string s) {
    auto id = states_.add(std::move(s));
    return id.value;
  }

  void set_initial(std::uint32_t state) {
    if (state >= states_.size()) throw ValidationError("undeclared state");
    initial_ = state;
  }

  void add_delta(std::uint32_t from, InputId input, OutputId output,
                 std::uint32_t to) {
    if (from >= states_.size() || to >= states_.size()) {
      throw ValidationError("undeclared state");
    }
    if (input.value >= inputs_.size() || output.value >= outputs_.size()) {
      throw ValidationError("undeclared symbol");
    }
    grow();
    auto& slot = delta_[from][input.value];
    if (slot) {
      throw DeterminismError("second delta for state '" +
                             states_.name(StateId{from}) + "' and input '" +
                             inputs_.name(input) + "'");
    }
    slot = Response{output, to};
  }

  /// Throws unless every (state, input) pair has a response.
  void validate() const {
    if (states_.empty()) throw ValidationError("component declares no states");
    if (inputs_.empty()) throw ValidationError("component declares no inputs");
    for (std::uint32_t s = 0; s < states_.size(); ++s) {
      for (std::uint32_t a = 0; a < inputs_.size(); ++a) {
        if (s >= delta_.size() || a >= delta_[s].size() || !delta_[s][a]) {
          throw ValidationError("no delta for state '" +
                                states_.name(StateId{s}) + "' and input '" +
                                inputs_.name(InputId{a}) + "'");
        }
      }
    }
  }

  const Response& step(std::uint32_t state, InputId input) const {
    const auto& slot = delta_.at(state).at(input.value);
    if (!slot) throw ValidationError("incomplete component");
    return *slot;
  }

  std::vector<OutputId> run(std::span<const InputId> word) const {
    std::vector<OutputId> out;
    out.reserve(word.size());
    std::uint32_t state = initial_;
    for (InputId a : word) {
      const auto& r = step(state, a);
      out.push_back(r.output);
      state = r.next;
    }
    return out;
  }

  std::optional<std::uint32_t> find_state(std::string_view s) const {
    auto id = states_.find(s);
    if (!id) return std::nullopt;
    return id->value;
  }

  std::uint32_t initial() const noexcept { return initial_; }
  std::size_t state_count() const noexcept { return states_.size(); }
  const std::string& state_name(std::uint32_t s) const {
    return states_.name(StateId{s});
  }
  const Alphabet<InputId>& inputs() const noexcept { return inputs_; }
  const Alphabet<OutputId>& outputs() const noexcept { return outputs_; }

 private:
  void grow() {
    delta_.resize(states_.size());
    for (auto& row : delta_) row.resize(inputs_.size());
  }

  Alphabet<InputId> inputs_;
  Alphabet<OutputId> outputs_;
  Alphabet<StateId> states_;
  std::uint32_t initial_ = 0;
  std::vector<std::vector<std::optional<Response>>> delta_;
};

}  // namespace bbmc

#endif  // BBMC_MEALY_HPP
