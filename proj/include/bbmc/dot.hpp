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

#ifndef BBMC_DOT_HPP
#define BBMC_DOT_HPP

#include <sstream>
#include <string>

#include "bbmc/graph.hpp"
#include "bbmc/host_system.hpp"
#include "bbmc/liveness.hpp"
#include "bbmc/witness.hpp"

namespace bbmc {

namespace detail {

inline std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

inline void dot_edges(std::ostream& os, const HostSystem& m, const SubGraph& g) {
  for (const auto& t : g.edges()) {
    os << "  " << quote(m.state_name(t.from)) << " -> " << quote(m.state_name(t.to));
    if (t.communicates()) {
      os << " [label=" << quote(m.inputs().name(t.comm.input) + "/" + m.outputs().name(t.comm.output))
         << "]";
    } else {
      os << " [style=solid, label=" << quote(m.events().name(t.event) + "?") << "]";
    }
    os << ";\n";
  }
}

}  // namespace detail

/// Communication graph: environment edges solid with their event,
/// communication edges labeled alpha/beta; source and target marked.
inline std::string to_dot(const HostSystem& m, const CommunicationGraph& g) {
  std::ostringstream os;
  os << "// communication graph " << m.state_name(g.source) << " ->> "
     << m.state_name(g.target) << '\n';
  os << "digraph communication {\n";
  for (StateId s : g.graph.nodes()) {
    os << "  " << detail::quote(m.state_name(s));
    if (s == g.target) os << " [shape=doublecircle]";
    else if (s == g.source) os << " [shape=box]";
    os << ";\n";
  }
  detail::dot_edges(os, m, g.graph);
  os << "}\n";
  return os.str();
}

/// Witness graph; node labels carry the attached ID expressions.
inline std::string to_dot(const HostSystem& m, const WitnessGraph& g) {
  std::ostringstream os;
  os << "// witness graph " << g.id << " kind " << to_string(g.kind) << '\n';
  os << "digraph witness_" << g.id << " {\n";
  for (StateId s : g.graph.nodes()) {
    std::string label = m.state_name(s);
    auto attach = [&](const LabelingFunction& l, const char* tag) {
      if (const IdExprPtr* e = l.find(s)) label += std::string("\\n") + tag + to_string(**e);
    };
    if (g.kind == WitnessKind::eu) {
      attach(g.first, "L1: ");
      attach(g.second, "L2: ");
    } else {
      attach(g.first, "Lg: ");
    }
    os << "  " << detail::quote(m.state_name(s)) << " [label=" << detail::quote(label) << "];\n";
  }
  detail::dot_edges(os, m, g.graph);
  os << "}\n";
  return os.str();
}

}  // namespace bbmc

#endif  // BBMC_DOT_HPP
