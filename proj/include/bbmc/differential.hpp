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

#ifndef BBMC_DIFFERENTIAL_HPP
#define BBMC_DIFFERENTIAL_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "bbmc/check.hpp"
#include "bbmc/component.hpp"
#include "bbmc/experiment.hpp"
#include "bbmc/oracle.hpp"

namespace bbmc {

/// A black-box engine under test. The defaults are check_ctl and
/// check_liveness; tests inject broken ones to exercise the harness.
struct Engines {
  std::function<bool(const HostSystem&, ComponentSession&, StateId, const FormulaPtr&,
                     const CheckOptions&)>
      ctl = [](const HostSystem& m, ComponentSession& x, StateId s0, const FormulaPtr& f,
               const CheckOptions& o) { return check_ctl(m, x, s0, f, o).holds; };
  std::function<bool(const HostSystem&, ComponentSession&, StateId, StateId, const CheckOptions&)>
      liveness = [](const HostSystem& m, ComponentSession& x, StateId s0, StateId sf,
                    const CheckOptions& o) { return check_liveness(m, x, s0, sf, o).holds; };
};

struct DifferentialOptions {
  InstanceLimits limits;
  std::optional<std::size_t> state_bound;  // default: X's true state count
  CheckOptions check;
  bool cache = true;
};

enum class CaseKind { ctl, liveness };

struct CaseResult {
  std::uint64_t seed = 0;
  CaseKind kind = CaseKind::ctl;
  std::string query;
  bool engine = false;
  bool oracle = false;
  std::string error;  // engine raised instead of answering
  bool understated = false;  // m below X's true state count
  std::size_t state_bound = 0;
  std::uint64_t experiments = 0;
  std::size_t max_length = 0;
  std::size_t length_bound = 0;

  bool agrees() const { return error.empty() && engine == oracle; }
  /// Disagreements explained by an understated m are not engine failures.
  bool bound_violation() const { return !agrees() && understated; }
  bool failure() const { return !agrees() && !understated; }
};

inline ComponentSession reference_session(const MealyMachine& x, const HostSystem& m,
                                          std::size_t state_bound, SessionOptions options = {}) {
  return ComponentSession(std::make_unique<ReferenceBackend>(x), m.inputs(), m.outputs(),
                          state_bound, options);
}

/// One CTL query and one liveness query on the instance generated from
/// `seed`, each answered by the engine and by the oracle.
inline std::vector<CaseResult> run_seed(std::uint64_t seed, const DifferentialOptions& options,
                                        const Engines& engines = {}) {
  RandomInstance inst = random_instance(seed, options.limits);
  const HostSystem& m = inst.system;
  const MealyMachine& x = inst.component;
  const std::size_t bound = options.state_bound.value_or(x.state_count());
  ComposedSystem composed = compose(m, x);
  std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + 1);
  std::vector<std::string> atoms = m.state_names().names();
  atoms.push_back("p");
  const StateId s0 = m.initial_states().front();

  std::vector<CaseResult> out;
  auto run = [&](CaseResult c, auto&& engine) {
    c.seed = seed;
    c.state_bound = bound;
    c.understated = bound < x.state_count();
    SessionOptions so;
    so.cache = options.cache;
    ComponentSession session = reference_session(x, m, bound, so);
    try {
      c.engine = engine(session);
    } catch (const Error& e) {
      c.error = e.what();
    }
    c.experiments = session.stats().experiments;
    c.max_length = session.stats().max_length;
    out.push_back(std::move(c));
  };

  {
    FormulaPtr f = random_formula(rng, atoms, options.limits.depth);
    CaseResult c;
    c.kind = CaseKind::ctl;
    c.query = to_string(*f);
    c.oracle = oracle_ctl(composed, m, s0, x, *f);
    run(std::move(c), [&](ComponentSession& s) {
      return engines.ctl(m, s, s0, f, options.check);
    });
    if (out.back().error.empty()) {
      NormalizedCtl h = normalize(f);
      // Recomputed here so a replaced engine is still held to the bound.
      WitnessRegistry reg;
      process_ctl(m, *h.root, reg);
      ComponentSession probe = reference_session(x, m, bound);
      TestRunner runner(m, reg, probe, options.check.bounds);
      out.back().length_bound = 2 * h.operator_count * runner.max_bound() * bound * bound;
    }
  }
  {
    StateId sf{static_cast<std::uint32_t>(detail::pick(rng, m.state_count()))};
    CaseResult c;
    c.kind = CaseKind::liveness;
    c.query = m.state_name(s0) + " ->> " + m.state_name(sf);
    c.oracle = oracle_infinite_often(composed, s0, sf, x);
    LivenessAnalysis a = check_io(m, s0, sf);
    if (a.graph) c.length_bound = 2 * comm_bounds(*a.graph, options.check.bounds).n * bound * bound;
    run(std::move(c), [&](ComponentSession& s) {
      return engines.liveness(m, s, s0, sf, options.check);
    });
  }
  return out;
}

/// Human-readable dump of a seed's instance for reproducing a failure.
inline std::string describe_case(const CaseResult& c) {
  std::string out = "seed " + std::to_string(c.seed) + " " +
                    (c.kind == CaseKind::ctl ? "ctl " : "liveness ") + c.query +
                    ": engine " + (c.error.empty() ? (c.engine ? "true" : "false") : "error") +
                    ", oracle " + (c.oracle ? "true" : "false");
  if (!c.error.empty()) out += " (" + c.error + ")";
  return out;
}

}  // namespace bbmc

#endif  // BBMC_DIFFERENTIAL_HPP
