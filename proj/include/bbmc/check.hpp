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

#ifndef BBMC_CHECK_HPP
#define BBMC_CHECK_HPP

#include <optional>
#include <string>
#include <vector>

#include "bbmc/ctl_engine.hpp"
#include "bbmc/experiment.hpp"
#include "bbmc/formula.hpp"
#include "bbmc/liveness.hpp"
#include "bbmc/tableau.hpp"
#include "bbmc/test_runner.hpp"
#include "bbmc/witness.hpp"

namespace bbmc {

struct CheckOptions {
  BoundPolicy bounds;
  // Makes the session reject any experiment longer than the proven horizon.
  bool enforce_length_bound = true;
};

struct CtlResult {
  bool holds = false;
  bool decided_by_labels = false;  // no black-box testing was needed
  NormalizedCtl normalized;
  WitnessRegistry registry;
  LabelingFunction labels;
  std::size_t max_bound = 0;     // n_max over the witness graphs
  std::size_t length_bound = 0;  // 2 k n_max m^2
};

/// End-to-end CTL check of <M, X> at s0.
inline CtlResult check_ctl(const HostSystem& m, ComponentSession& x, StateId s0,
                           const FormulaPtr& f, const CheckOptions& options = {}) {
  check_atoms(*f, m);
  CtlResult r;
  r.normalized = normalize(f);
  r.labels = process_ctl(m, *r.normalized.root, r.registry);
  TestRunner runner(m, r.registry, x, options.bounds);
  const std::size_t mm = x.state_bound();
  r.max_bound = runner.max_bound();
  r.length_bound = 2 * r.normalized.operator_count * r.max_bound * mm * mm;
  const IdExprPtr* label = r.labels.find(s0);
  if (!label) {
    r.decided_by_labels = true;
    return r;
  }
  if ((*label)->is_true()) {
    r.holds = true;
    r.decided_by_labels = true;
    return r;
  }
  auto previous = x.length_limit();
  if (options.enforce_length_bound) x.set_length_limit(r.length_bound);
  r.holds = runner.test_wg(x.root(), s0, **label);
  x.set_length_limit(previous);
  return r;
}

struct LivenessResult {
  bool holds = false;
  bool definite = false;  // answered by the closure analysis alone
  std::optional<CommunicationGraph> graph;
  std::optional<CommBounds> bounds;
  std::size_t length_bound = 0;  // 2 n m^2
  std::optional<Prefix> witness;
};

/// Can the system, started at s0, pass through sf infinitely often?
inline LivenessResult check_liveness(const HostSystem& m, const ClosureRelations& closures,
                                     ComponentSession& x, StateId s0, StateId sf,
                                     const CheckOptions& options = {}) {
  LivenessResult r;
  LivenessAnalysis a = check_io(m, closures, s0, sf);
  if (a.definite()) {
    r.definite = true;
    r.holds = a.kind == LivenessAnalysis::Kind::definitely_true;
    return r;
  }
  r.graph = std::move(a.graph);
  r.bounds = comm_bounds(*r.graph, options.bounds);
  const std::size_t mm = x.state_bound();
  r.length_bound = 2 * r.bounds->n * mm * mm;
  auto previous = x.length_limit();
  if (options.enforce_length_bound) x.set_length_limit(r.length_bound);
  LivenessOutcome o = test_liveness(x, m, *r.graph, *r.bounds);
  x.set_length_limit(previous);
  r.holds = o.holds;
  r.witness = o.witness;
  return r;
}

inline LivenessResult check_liveness(const HostSystem& m, ComponentSession& x, StateId s0,
                                     StateId sf, const CheckOptions& options = {}) {
  return check_liveness(m, compute_closures(m), x, s0, sf, options);
}

struct LtlResult {
  bool holds = false;
  bool definite = false;  // no experiment was needed
  std::size_t product_states = 0;
  std::size_t targets = 0;
  std::size_t tested = 0;  // liveness queries that needed testing
  std::optional<LivenessResult> accepting;
  std::optional<StateId> accepting_start;
  std::optional<StateId> accepting_target;
  Degeneralized reduced;
};

/// E f for the path formula f described by a tableau: a fair path of the
/// product from (s0, q), q in sat(f), reduced to infinitely-often queries.
inline LtlResult check_ltl(const HostSystem& m, ComponentSession& x, const Tableau& t,
                           const std::string& tag, StateId s0, const CheckOptions& options = {}) {
  LtlResult r;
  TableauProduct p = build_product(m, t, tag);
  r.product_states = p.system.state_count();
  std::vector<StateId> start;
  for (StateId s : p.start) {
    if (p.pairs[s.value].first == s0) start.push_back(s);
  }
  r.reduced = degeneralize(p.system, p.fairness, start);
  r.targets = r.reduced.targets.size();
  r.definite = true;
  if (r.reduced.start.empty() || r.reduced.targets.empty()) return r;
  ClosureRelations closures = compute_closures(r.reduced.system);
  // Closure answers first, so a definite witness never costs an experiment.
  for (int pass = 0; pass < 2; ++pass) {
    for (StateId s : r.reduced.start) {
      for (StateId target : r.reduced.targets) {
        LivenessAnalysis a = check_io(r.reduced.system, closures, s, target);
        if (pass == 0 && a.kind != LivenessAnalysis::Kind::definitely_true) continue;
        if (pass == 1 && a.kind != LivenessAnalysis::Kind::needs_testing) continue;
        if (pass == 1) {
          r.definite = false;
          ++r.tested;
        }
        LivenessResult lr = check_liveness(r.reduced.system, closures, x, s, target, options);
        if (lr.holds) {
          r.holds = true;
          r.accepting = std::move(lr);
          r.accepting_start = s;
          r.accepting_target = target;
          return r;
        }
      }
    }
  }
  return r;
}

}  // namespace bbmc

#endif  // BBMC_CHECK_HPP
