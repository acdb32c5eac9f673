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

#ifndef BBMC_EXPERIMENT_HPP
#define BBMC_EXPERIMENT_HPP

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "bbmc/component.hpp"
#include "bbmc/errors.hpp"
#include "bbmc/host_system.hpp"
#include "bbmc/ids.hpp"

namespace bbmc {

/// Node of the experiment prefix tree. Node 0 is the empty sequence; every
/// other node stands for one accepted input sequence and the outputs X gave.
using Prefix = std::uint32_t;

/// One transmission to the backend: the full input sequence fed since the
/// last reset, the outputs observed, and the reset counter at that time.
struct LogEntry {
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::uint64_t resets = 0;
  std::chrono::system_clock::time_point at;
};

class ExperimentLog {
 public:
  const std::vector<LogEntry>& entries() const noexcept { return entries_; }
  std::uint64_t resets() const noexcept { return resets_; }

  void append(LogEntry e) { entries_.push_back(std::move(e)); }
  void count_reset() { ++resets_; }

  /// One JSON object per line: {"seq": [...], "out": [...], "resets": k}.
  void write_jsonl(std::ostream& os) const {
    for (const auto& e : entries_) {
      nlohmann::json j;
      j["seq"] = e.inputs;
      j["out"] = e.outputs;
      j["resets"] = e.resets;
      os << j.dump() << '\n';
    }
  }

 private:
  std::vector<LogEntry> entries_;
  std::uint64_t resets_ = 0;
};

struct SessionOptions {
  bool cache = true;
  std::ostream* trace = nullptr;
};

struct SessionStats {
  std::uint64_t experiments = 0;  // logical Experiment(X, reset pi) calls
  std::size_t max_length = 0;     // longest input sequence asked for
};

/// Exclusive handle on a component X = <Sigma, Nabla, m>.
///
/// Every query names the prefix it extends, so callers never depend on the
/// backend's live state: the session resets and replays as needed, checking
/// replayed outputs against what was observed before.
class ComponentSession {
 public:
  ComponentSession(std::unique_ptr<ComponentBackend> backend,
                   Alphabet<InputId> inputs, Alphabet<OutputId> outputs,
                   std::size_t state_bound, SessionOptions options = {})
      : backend_(std::move(backend)),
        inputs_(std::move(inputs)),
        outputs_(std::move(outputs)),
        state_bound_(state_bound),
        options_(options) {
    if (state_bound_ < 1) throw ValidationError("state bound must be >= 1");
    nodes_.push_back(Node{});
  }

  std::size_t state_bound() const noexcept { return state_bound_; }
  const Alphabet<InputId>& inputs() const noexcept { return inputs_; }
  const Alphabet<OutputId>& outputs() const noexcept { return outputs_; }
  const ExperimentLog& log() const noexcept { return log_; }
  const SessionStats& stats() const noexcept { return stats_; }
  std::ostream* trace() const noexcept { return options_.trace; }

  /// Longest input sequence any query may ask for; exceeding it throws
  /// BoundViolation.
  void set_length_limit(std::optional<std::size_t> limit) { limit_ = limit; }
  std::optional<std::size_t> length_limit() const noexcept { return limit_; }

  Prefix root() const noexcept { return 0; }

  /// Experiment(X, reset pi a): the node for pi.a, whose output is X's
  /// answer to a.
  Prefix probe(Prefix pi, InputId a) {
    check_input(a);
    std::size_t len = length(pi) + 1;
    note_query(len);
    Prefix p = advance(pi, a, /*continuing=*/false);
    current_ = p;
    live_ = true;
    return p;
  }

  /// Reset X and feed pi; returns the full output sequence.
  std::vector<OutputId> experiment(std::span<const InputId> pi) {
    for (InputId a : pi) check_input(a);
    note_query(pi.size());
    Prefix p = root();
    bool continuing = false;
    for (InputId a : pi) {
      p = advance(p, a, continuing);
      continuing = true;
    }
    current_ = p;
    live_ = true;
    return outputs_of(p);
  }

  /// Experiment(X, a) after an earlier experiment: the last output of
  /// Experiment(X, reset pi a).
  OutputId step(InputId a) {
    if (!live_) throw Error("step requested before any experiment");
    return output(probe(current_, a));
  }

  /// True iff X, started from reset, answers exactly the trace's outputs.
  bool is_run(std::span<const Communication> trace) {
    for (const auto& c : trace) {
      check_input(c.input);
      if (c.output.value >= outputs_.size()) {
        throw AlphabetViolation("output symbol outside the component alphabet");
      }
    }
    note_query(trace.size());
    Prefix p = root();
    bool continuing = false;
    for (const auto& c : trace) {
      p = advance(p, c.input, continuing);
      continuing = true;
      if (output(p) != c.output) {
        current_ = p;
        live_ = true;
        return false;
      }
    }
    current_ = p;
    live_ = true;
    return true;
  }

  Prefix current() const noexcept { return current_; }
  std::size_t length(Prefix p) const { return nodes_.at(p).depth; }
  OutputId output(Prefix p) const { return nodes_.at(p).output; }
  InputId input(Prefix p) const { return nodes_.at(p).input; }
  Prefix parent(Prefix p) const { return nodes_.at(p).parent; }

  std::vector<InputId> inputs_of(Prefix p) const {
    std::vector<InputId> out;
    for (; p != 0; p = nodes_[p].parent) out.push_back(nodes_[p].input);
    std::reverse(out.begin(), out.end());
    return out;
  }

  std::vector<OutputId> outputs_of(Prefix p) const {
    std::vector<OutputId> out;
    for (; p != 0; p = nodes_[p].parent) out.push_back(nodes_[p].output);
    std::reverse(out.begin(), out.end());
    return out;
  }

  std::vector<Communication> trace_of(Prefix p) const {
    std::vector<Communication> out;
    for (; p != 0; p = nodes_[p].parent) {
      out.push_back({nodes_[p].input, nodes_[p].output});
    }
    std::reverse(out.begin(), out.end());
    return out;
  }

  /// "a/b c/d ..." rendering of a prefix.
  std::string render(Prefix p) const {
    std::string out;
    for (const auto& c : trace_of(p)) {
      if (!out.empty()) out += ' ';
      out += inputs_.name(c.input) + "/" + outputs_.name(c.output);
    }
    return out;
  }

 private:
  struct Node {
    Prefix parent = 0;
    InputId input{};
    OutputId output{};
    std::size_t depth = 0;
    std::map<InputId, Prefix> children;
  };

  void check_input(InputId a) const {
    if (a.value >= inputs_.size()) {
      throw AlphabetViolation("input symbol outside the component alphabet");
    }
  }

  void note_query(std::size_t len) {
    if (limit_ && len > *limit_) {
      throw BoundViolation("experiment of length " + std::to_string(len) +
                           " exceeds the bound " + std::to_string(*limit_));
    }
    ++stats_.experiments;
    stats_.max_length = std::max(stats_.max_length, len);
  }

  // Node for p.a. Served from the prefix tree when caching; otherwise sent
  // to the backend. `continuing` marks the next symbol of one experiment
  // whose earlier symbols were just transmitted.
  Prefix advance(Prefix p, InputId a, bool continuing) {
    auto& kids = nodes_[p].children;
    auto it = kids.find(a);
    bool known = it != kids.end();
    if (known && options_.cache) return it->second;

    bool in_sync = physical_ && *physical_ == p && (options_.cache || continuing);
    if (!in_sync) {
      backend_->reset();
      log_.count_reset();
      for (Prefix q : path(p)) {
        OutputId got = to_output(backend_->step(inputs_.name(nodes_[q].input)));
        if (got != nodes_[q].output) diverged(q, got);
      }
    }
    OutputId got = to_output(backend_->step(inputs_.name(a)));
    Prefix child;
    if (known) {
      child = it->second;
      if (got != nodes_[child].output) diverged(child, got);
    } else {
      child = static_cast<Prefix>(nodes_.size());
      Node n;
      n.parent = p;
      n.input = a;
      n.output = got;
      n.depth = nodes_[p].depth + 1;
      nodes_.push_back(std::move(n));
      nodes_[p].children.emplace(a, child);
    }
    physical_ = child;
    record(child);
    return child;
  }

  std::vector<Prefix> path(Prefix p) const {
    std::vector<Prefix> out;
    for (; p != 0; p = nodes_[p].parent) out.push_back(p);
    std::reverse(out.begin(), out.end());
    return out;
  }

  OutputId to_output(const std::string& name) const {
    auto id = outputs_.find(name);
    if (!id) throw AdapterFailure("component answered unknown output '" + name + "'");
    return *id;
  }

  [[noreturn]] void diverged(Prefix q, OutputId got) const {
    throw DeterminismViolation("component is not deterministic: after '" +
                               render(nodes_[q].parent) + "', input '" +
                               inputs_.name(nodes_[q].input) + "' gave '" +
                               outputs_.name(got) + "', earlier '" +
                               outputs_.name(nodes_[q].output) + "'");
  }

  void record(Prefix p) {
    LogEntry e;
    for (InputId a : inputs_of(p)) e.inputs.push_back(inputs_.name(a));
    for (OutputId b : outputs_of(p)) e.outputs.push_back(outputs_.name(b));
    e.resets = log_.resets();
    e.at = std::chrono::system_clock::now();
    if (options_.trace) *options_.trace << "experiment " << render(p) << '\n';
    log_.append(std::move(e));
  }

  std::unique_ptr<ComponentBackend> backend_;
  Alphabet<InputId> inputs_;
  Alphabet<OutputId> outputs_;
  std::size_t state_bound_;
  SessionOptions options_;
  std::vector<Node> nodes_;
  std::optional<Prefix> physical_;
  Prefix current_ = 0;
  bool live_ = false;
  std::optional<std::size_t> limit_;
  ExperimentLog log_;
  SessionStats stats_;
};

}  // namespace bbmc

#endif  // BBMC_EXPERIMENT_HPP
