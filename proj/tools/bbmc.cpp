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

// bbmc: command-line front end.
//
//   bbmc check-ctl       --system M --component X --formula F [--state s0]
//   bbmc check-liveness  --system M --component X --from s0 --target sf
//   bbmc check-ltl       --system M --component X --tableau T [--tag f] [--state s0]
//   bbmc export-dot      --system M (--formula F | --from s0 --target sf) --out DIR
//   bbmc oracle-compare  --seeds A..B [--limits hosts=6,comp=3,...]
//   bbmc serve           --component X
//
// Exit status: 0 verdict printed, 1 differential disagreements, 2 bad input,
// 3 component or IO failure, 4 internal error.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bbmc/bbmc.hpp"

namespace {

using namespace bbmc;
namespace fs = std::filesystem;

constexpr int kOk = 0;
constexpr int kDisagree = 1;
constexpr int kBadInput = 2;
constexpr int kFailure = 3;
constexpr int kInternal = 4;

class OutputError : public Error {
 public:
  using Error::Error;
};

struct Common {
  std::string system;
  std::string component;
  std::optional<std::size_t> state_bound;
  std::string bound_mode = "auto";
  std::size_t exact_threshold = 12;
  bool no_cycles = false;
  bool no_cache = false;
  int timeout_ms = 5000;
  std::string trace;
  std::string log;
  std::string dot;
  bool timing = false;
};

void add_common(CLI::App* cmd, Common& c, bool component = true) {
  cmd->add_option("--system", c.system, "host system file")->required();
  if (component) {
    cmd->add_option("--component", c.component, "component file, or exec:<command>")->required();
    cmd->add_option("--state-bound", c.state_bound,
                    "upper bound m on the component's states (default: the file's count)");
    cmd->add_flag("--no-cache", c.no_cache, "send every experiment to the component");
    cmd->add_option("--timeout-ms", c.timeout_ms, "per-reply timeout for exec: components")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--trace", c.trace, "write the search trace to FILE");
    cmd->add_option("--log", c.log, "write the experiment log (JSON lines) to FILE");
    cmd->add_flag("--timing", c.timing, "report elapsed_ms");
    cmd->add_option("--dot", c.dot, "write graphs as DOT files into DIR");
  }
  cmd->add_option("--bound-mode", c.bound_mode, "communication bounds: auto, exact or over")
      ->check(CLI::IsMember({"auto", "exact", "over"}));
  cmd->add_option("--exact-threshold", c.exact_threshold,
                  "largest graph (nodes) bounded exactly in auto mode");
  cmd->add_flag("--no-cycle-bounds", c.no_cycles,
                "bound by simple paths and loops through the target only");
}

BoundPolicy policy(const Common& c) {
  BoundPolicy p;
  p.request = c.bound_mode == "exact"  ? BoundPolicy::Request::exact
              : c.bound_mode == "over" ? BoundPolicy::Request::overapprox
                                       : BoundPolicy::Request::automatic;
  p.exact_threshold = c.exact_threshold;
  p.count_cycles = !c.no_cycles;
  return p;
}

const char* mode_name(BoundMode m) { return m == BoundMode::exact ? "exact" : "over"; }

HostSystem load_system(const std::string& path) {
  HostSystem m = parse_system(read_file(path));
  return m;
}

/// An open component plus everything the report needs afterwards.
struct Run {
  std::unique_ptr<ComponentSession> session;
  std::ofstream trace;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
};

void open_session(Run& run, const Common& c, const HostSystem& m) {
  const std::string exec = "exec:";
  std::unique_ptr<ComponentBackend> backend;
  std::size_t bound = 0;
  if (c.component.rfind(exec, 0) == 0) {
    if (!c.state_bound) throw ValidationError("--state-bound is required with exec: components");
    backend = std::make_unique<ProcessBackend>(c.component.substr(exec.size()),
                                               std::chrono::milliseconds(c.timeout_ms));
    bound = *c.state_bound;
  } else {
    std::string text;
    try {
      text = read_file(c.component);
    } catch (const FileError& e) {
      throw ValidationError(e.what());
    }
    MealyMachine x = parse_component(text);
    require_matching_alphabets(m, x);
    bound = c.state_bound.value_or(x.state_count());
    backend = std::make_unique<ReferenceBackend>(std::move(x));
  }
  SessionOptions so;
  so.cache = !c.no_cache;
  if (!c.trace.empty()) {
    run.trace.open(c.trace);
    if (!run.trace) throw OutputError("cannot write '" + c.trace + "'");
    so.trace = &run.trace;
  }
  run.session = std::make_unique<ComponentSession>(std::move(backend), m.inputs(), m.outputs(),
                                                   bound, so);
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
  if (!out) throw OutputError("cannot write '" + path.string() + "'");
}

fs::path output_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw OutputError("cannot create '" + dir + "': " + ec.message());
  return fs::path(dir);
}

std::vector<std::string> write_witness_graphs(const HostSystem& m, const WitnessRegistry& reg,
                                              const std::string& dir) {
  std::vector<std::string> files;
  if (reg.empty()) return files;
  fs::path out = output_dir(dir);
  for (const auto& g : reg.graphs()) {
    fs::path p = out / ("witness-" + std::to_string(g.id) + ".dot");
    write_text(p, to_dot(m, g));
    files.push_back(p.string());
  }
  return files;
}

std::string write_communication_graph(const HostSystem& m, const CommunicationGraph& g,
                                      const std::string& dir) {
  fs::path p = output_dir(dir) / "communication.dot";
  write_text(p, to_dot(m, g));
  return p.string();
}

void report_session(const Run& run, const Common& c) {
  const ComponentSession& x = *run.session;
  std::cout << "state_bound: " << x.state_bound() << '\n'
            << "experiments: " << x.stats().experiments << '\n'
            << "backend_queries: " << x.log().entries().size() << '\n'
            << "resets: " << x.log().resets() << '\n'
            << "max_experiment_length: " << x.stats().max_length << '\n';
  if (!c.log.empty()) {
    std::ofstream out(c.log);
    x.log().write_jsonl(out);
    if (!out) throw OutputError("cannot write '" + c.log + "'");
  }
  if (c.timing) {
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::steady_clock::now() - run.start);
    std::cout << "elapsed_ms: " << ms.count() << '\n';
  }
}

void report_graphs(const std::vector<std::string>& files) {
  for (const auto& f : files) std::cout << "graph: " << f << '\n';
}

std::string formula_text(const std::string& arg) {
  if (!arg.empty() && arg.front() == '@') {
    try {
      return read_file(arg.substr(1));
    } catch (const FileError& e) {
      throw ValidationError(e.what());
    }
  }
  return arg;
}

StateId start_state(const HostSystem& m, const std::string& name) {
  return name.empty() ? m.initial_states().front() : m.state(name);
}

int check_ctl_cmd(const Common& c, const std::string& formula, const std::string& state) {
  HostSystem m = load_system(c.system);
  FormulaPtr f = parse_ctl(formula_text(formula));
  StateId s0 = start_state(m, state);
  Run run;
  open_session(run, c, m);
  CheckOptions opts;
  opts.bounds = policy(c);
  CtlResult r = check_ctl(m, *run.session, s0, f, opts);
  std::vector<std::string> files;
  if (!c.dot.empty()) files = write_witness_graphs(m, r.registry, c.dot);
  std::cout << "RESULT " << (r.holds ? "true" : "false") << '\n'
            << "SOURCE " << (r.decided_by_labels ? "labels" : "testing") << '\n'
            << "formula: " << to_string(*f) << '\n'
            << "normalized: " << to_string(*r.normalized.root) << '\n'
            << "operators: " << r.normalized.operator_count << '\n'
            << "witness_graphs: " << r.registry.size() << '\n'
            << "state: " << m.state_name(s0) << '\n';
  if (const IdExprPtr* e = r.labels.find(s0)) std::cout << "label: " << to_string(**e) << '\n';
  else std::cout << "label: none\n";
  std::cout << "n_max: " << r.max_bound << '\n' << "length_bound: " << r.length_bound << '\n';
  report_session(run, c);
  report_graphs(files);
  return kOk;
}

int check_liveness_cmd(const Common& c, const std::string& from, const std::string& target) {
  HostSystem m = load_system(c.system);
  StateId s0 = m.state(from);
  StateId sf = m.state(target);
  Run run;
  open_session(run, c, m);
  CheckOptions opts;
  opts.bounds = policy(c);
  LivenessResult r = check_liveness(m, *run.session, s0, sf, opts);
  std::vector<std::string> files;
  if (!c.dot.empty() && r.graph) files.push_back(write_communication_graph(m, *r.graph, c.dot));
  std::cout << "RESULT " << (r.holds ? "true" : "false") << '\n'
            << "SOURCE " << (r.definite ? "closure" : "testing") << '\n';
  if (r.graph) {
    std::cout << "graph_nodes: " << r.graph->graph.nodes().size() << '\n'
              << "graph_edges: " << r.graph->graph.edges().size() << '\n'
              << "n1: " << r.bounds->n1 << '\n'
              << "n2: " << r.bounds->n2 << '\n'
              << "n: " << r.bounds->n << '\n'
              << "bound_mode: " << mode_name(r.bounds->mode) << '\n'
              << "length_bound: " << r.length_bound << '\n';
  }
  if (r.witness) std::cout << "witness: " << run.session->render(*r.witness) << '\n';
  report_session(run, c);
  report_graphs(files);
  return kOk;
}

int check_ltl_cmd(const Common& c, const std::string& tableau, const std::string& tag,
                  const std::string& state) {
  HostSystem m = load_system(c.system);
  Tableau t;
  try {
    t = parse_tableau(read_file(tableau));
  } catch (const FileError& e) {
    throw ValidationError(e.what());
  }
  StateId s0 = start_state(m, state);
  Run run;
  open_session(run, c, m);
  CheckOptions opts;
  opts.bounds = policy(c);
  LtlResult r = check_ltl(m, *run.session, t, tag, s0, opts);
  std::cout << "RESULT " << (r.holds ? "true" : "false") << '\n'
            << "SOURCE " << (r.definite ? "closure" : "testing") << '\n'
            << "product_states: " << r.product_states << '\n'
            << "reduced_states: " << r.reduced.system.state_count() << '\n'
            << "targets: " << r.targets << '\n'
            << "tested_queries: " << r.tested << '\n';
  if (r.accepting_target) {
    std::cout << "accepting_target: " << r.reduced.system.state_name(*r.accepting_target) << '\n';
  }
  if (r.accepting && r.accepting->witness) {
    std::cout << "witness: " << run.session->render(*r.accepting->witness) << '\n';
  }
  report_session(run, c);
  return kOk;
}

int export_dot_cmd(const Common& c, const std::string& formula, const std::string& from,
                   const std::string& target, const std::string& out) {
  HostSystem m = load_system(c.system);
  std::vector<std::string> files;
  if (!formula.empty()) {
    FormulaPtr f = parse_ctl(formula_text(formula));
    check_atoms(*f, m);
    NormalizedCtl h = normalize(f);
    WitnessRegistry reg;
    process_ctl(m, *h.root, reg);
    files = write_witness_graphs(m, reg, out);
  } else {
    if (from.empty() || target.empty()) {
      throw ValidationError("export-dot needs --formula or both --from and --target");
    }
    LivenessAnalysis a = check_io(m, m.state(from), m.state(target));
    if (a.graph) {
      files.push_back(write_communication_graph(m, *a.graph, out));
    } else {
      std::cout << "note: definite answer ("
                << (a.kind == LivenessAnalysis::Kind::definitely_true ? "true" : "false")
                << "), no communication graph\n";
    }
  }
  std::cout << "files: " << files.size() << '\n';
  report_graphs(files);
  return kOk;
}

struct CompareArgs {
  std::string seeds = "1..100";
  std::string limits;
  bool quiet = false;
  bool mutate = false;
};

std::pair<std::uint64_t, std::uint64_t> parse_seeds(const std::string& s) {
  auto dots = s.find("..");
  try {
    if (dots == std::string::npos) {
      auto v = std::stoull(s);
      return {v, v};
    }
    return {std::stoull(s.substr(0, dots)), std::stoull(s.substr(dots + 2))};
  } catch (const std::exception&) {
    throw ValidationError("--seeds expects A..B, got '" + s + "'");
  }
}

void parse_limits(const std::string& text, DifferentialOptions& o) {
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos) throw ValidationError("--limits item '" + item + "' lacks '='");
    std::string key = item.substr(0, eq);
    std::size_t value = 0;
    try {
      value = std::stoul(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw ValidationError("--limits item '" + item + "' needs a number");
    }
    if (key == "hosts") o.limits.host_states = value;
    else if (key == "comp") o.limits.component_states = value;
    else if (key == "events") o.limits.events = value;
    else if (key == "inputs") o.limits.inputs = value;
    else if (key == "outputs") o.limits.outputs = value;
    else if (key == "depth") o.limits.depth = value;
    else if (key == "m") o.state_bound = value;
    else throw ValidationError("unknown --limits key '" + key + "'");
  }
  if (o.state_bound && *o.state_bound == 0) throw ValidationError("m must be >= 1");
  if (o.limits.host_states == 0 || o.limits.component_states == 0) {
    throw ValidationError("hosts and comp must be >= 1");
  }
}

int oracle_compare_cmd(const Common& c, const CompareArgs& a) {
  DifferentialOptions o;
  o.check.bounds = policy(c);
  o.cache = !c.no_cache;
  parse_limits(a.limits, o);
  auto [first, last] = parse_seeds(a.seeds);
  Engines engines;
  if (a.mutate) {
    // Deliberately wrong: misreports every verdict that needed testing.
    engines.ctl = [](const HostSystem& m, ComponentSession& x, StateId s0, const FormulaPtr& f,
                     const CheckOptions& opts) {
      CtlResult r = check_ctl(m, x, s0, f, opts);
      return r.decided_by_labels ? r.holds : !r.holds;
    };
    engines.liveness = [](const HostSystem& m, ComponentSession& x, StateId s0, StateId sf,
                          const CheckOptions& opts) {
      LivenessResult r = check_liveness(m, x, s0, sf, opts);
      return r.definite ? r.holds : !r.holds;
    };
  }
  std::size_t cases = 0, agree = 0, failures = 0, violations = 0, length = 0;
  bool dumped = false;
  for (std::uint64_t seed = first; seed <= last; ++seed) {
    auto results = run_seed(seed, o, engines);
    std::string line = "seed " + std::to_string(seed) + ":";
    for (const auto& r : results) {
      ++cases;
      const char* kind = r.kind == CaseKind::ctl ? "ctl" : "liveness";
      std::string status = r.agrees() ? "agree" : r.bound_violation() ? "BOUND-VIOLATION" : "DISAGREE";
      if (r.agrees()) ++agree;
      else if (r.bound_violation()) ++violations;
      else ++failures;
      if (r.experiments > 0 && r.max_length > r.length_bound) ++length;
      line += std::string(" ") + kind + "=" + status;
      if (r.failure() && !dumped) {
        dumped = true;
        RandomInstance inst = random_instance(seed, o.limits);
        std::cout << "first disagreement: " << describe_case(r) << '\n'
                  << "--- system\n" << print_system(inst.system)
                  << "--- component\n" << print_component(inst.component) << "--- log\n";
        ComponentSession s = reference_session(inst.component, inst.system, r.state_bound);
        try {
          if (r.kind == CaseKind::ctl) {
            engines.ctl(inst.system, s, inst.system.initial_states().front(), parse_ctl(r.query),
                        o.check);
          } else {
            auto arrow = r.query.find(" ->> ");
            engines.liveness(inst.system, s, inst.system.state(r.query.substr(0, arrow)),
                             inst.system.state(r.query.substr(arrow + 5)), o.check);
          }
        } catch (const Error&) {
        }
        s.log().write_jsonl(std::cout);
        std::cout << "---\n";
      }
    }
    if (!a.quiet) std::cout << line << '\n';
  }
  std::cout << "cases: " << cases << '\n'
            << "agree: " << agree << '\n'
            << "disagree: " << failures << '\n'
            << "bound_violations: " << violations << '\n'
            << "length_bound_exceeded: " << length << '\n';
  return failures == 0 && length == 0 ? kOk : kDisagree;
}

int serve_cmd(const std::string& path) {
  MealyMachine x = parse_component(read_file(path));
  ReferenceBackend backend(std::move(x));
  std::string line;
  while (std::getline(std::cin, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line == "RESET") {
      backend.reset();
      std::cout << "OK" << std::endl;
    } else if (line.rfind("IN ", 0) == 0) {
      try {
        std::cout << "OUT " << backend.step(line.substr(3)) << std::endl;
      } catch (const Error& e) {
        std::cout << "ERR " << e.what() << std::endl;
      }
    } else {
      std::cout << "ERR unknown request" << std::endl;
    }
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Model checking of host systems with one black-box component"};
  app.require_subcommand(1);

  Common common;
  std::string formula, state, from, target, tableau, tag, out, serve_path;
  CompareArgs compare;

  auto* ctl = app.add_subcommand("check-ctl", "check a CTL formula");
  add_common(ctl, common);
  ctl->add_option("--formula", formula, "formula text, or @FILE")->required();
  ctl->add_option("--state", state, "start state (default: first initial state)");

  auto* live = app.add_subcommand("check-liveness", "can the target be visited infinitely often");
  add_common(live, common);
  live->add_option("--from", from, "start state")->required();
  live->add_option("--target", target, "state to revisit")->required();

  auto* ltl = app.add_subcommand("check-ltl", "E f for a path formula given by a tableau");
  add_common(ltl, common);
  ltl->add_option("--tableau", tableau, "tableau file")->required();
  ltl->add_option("--tag", tag, "sat set to start from");
  ltl->add_option("--state", state, "start state (default: first initial state)");

  auto* dot = app.add_subcommand("export-dot", "write communication or witness graphs");
  add_common(dot, common, false);
  dot->add_option("--formula", formula, "CTL formula, or @FILE");
  dot->add_option("--from", from, "liveness start state");
  dot->add_option("--target", target, "liveness target state");
  dot->add_option("--out", out, "output directory")->required();

  auto* cmp = app.add_subcommand("oracle-compare", "differential test against the oracle");
  cmp->add_option("--seeds", compare.seeds, "seed range A..B");
  cmp->add_option("--limits", compare.limits,
                  "hosts=,comp=,events=,inputs=,outputs=,depth=,m= (comma separated)");
  cmp->add_option("--bound-mode", common.bound_mode, "auto, exact or over")
      ->check(CLI::IsMember({"auto", "exact", "over"}));
  cmp->add_flag("--no-cycle-bounds", common.no_cycles,
                "bound by simple paths and loops through the target only");
  cmp->add_flag("--no-cache", common.no_cache, "disable the experiment cache");
  cmp->add_flag("--quiet", compare.quiet, "summary only");
  cmp->add_flag("--mutate", compare.mutate, "run a deliberately broken engine");

  auto* serve = app.add_subcommand("serve", "answer the wire protocol with a reference component");
  serve->add_option("--component", serve_path, "component file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kBadInput;
  }

  try {
    if (*ctl) return check_ctl_cmd(common, formula, state);
    if (*live) return check_liveness_cmd(common, from, target);
    if (*ltl) return check_ltl_cmd(common, tableau, tag, state);
    if (*dot) return export_dot_cmd(common, formula, from, target, out);
    if (*cmp) return oracle_compare_cmd(common, compare);
    if (*serve) return serve_cmd(serve_path);
  } catch (const ParseError& e) {
    std::cerr << "bbmc: parse error: " << e.what() << '\n';
    return kBadInput;
  } catch (const ValidationError& e) {
    std::cerr << "bbmc: invalid input: " << e.what() << '\n';
    return kBadInput;
  } catch (const UnknownState& e) {
    std::cerr << "bbmc: invalid input: " << e.what() << '\n';
    return kBadInput;
  } catch (const AlphabetMismatch& e) {
    std::cerr << "bbmc: alphabet mismatch: " << e.what() << '\n';
    return kBadInput;
  } catch (const FileError& e) {
    std::cerr << "bbmc: " << e.what() << '\n';
    return kBadInput;
  } catch (const AdapterFailure& e) {
    std::cerr << "bbmc: component failure: " << e.what() << '\n';
    return kFailure;
  } catch (const DeterminismViolation& e) {
    std::cerr << "bbmc: component failure: " << e.what() << '\n';
    return kFailure;
  } catch (const OutputError& e) {
    std::cerr << "bbmc: output error: " << e.what() << '\n';
    return kFailure;
  } catch (const std::exception& e) {
    std::cerr << "bbmc: internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kInternal;
}
