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

#ifndef BBMC_PARSER_HPP
#define BBMC_PARSER_HPP

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "bbmc/errors.hpp"
#include "bbmc/host_system.hpp"
#include "bbmc/mealy.hpp"
#include "bbmc/tableau.hpp"

// Line-oriented formats. `#` starts a comment; tokens are separated by
// whitespace; every line names one directive.
//
//   system <name>             component <name>        tableau [<name>]
//   states a b ...            inputs a b ...          tstates q0 q1 ...
//   events e ...              outputs y n ...         tinit q0 ...
//   inputs a ...              states x0 x1 ...        guard q p & !r
//   outputs y ...             init x0                 tedge q0 q1
//   props p ...               delta x0 a y x1         sat <tag>: q0 q1
//   init a ...                                        fair: q1 ...
//   env <from> <event> <to>
//   comm <from> <input> <output> <to>
//   label <state> <prop> ...

namespace bbmc {

namespace detail {

struct Token {
  std::string text;
  std::size_t column = 1;
};

struct Line {
  std::size_t number = 0;
  std::vector<Token> tokens;

  const std::string& directive() const { return tokens.front().text; }
  std::size_t args() const { return tokens.size() - 1; }
  const std::string& arg(std::size_t i) const { return tokens.at(i + 1).text; }

  void need(std::size_t exact) const {
    if (args() != exact) {
      throw ParseError(number, tokens.front().column,
                       "'" + directive() + "' takes " + std::to_string(exact) +
                           " argument" + (exact == 1 ? "" : "s") + ", got " +
                           std::to_string(args()));
    }
  }
  void need_at_least(std::size_t n) const {
    if (args() < n) {
      throw ParseError(number, tokens.front().column,
                       "'" + directive() + "' needs at least " + std::to_string(n) +
                           " argument" + (n == 1 ? "" : "s"));
    }
  }
};

inline std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    ++number;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    Line line;
    line.number = number;
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
      if (i >= raw.size()) break;
      std::size_t start = i;
      while (i < raw.size() && !std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
      line.tokens.push_back({std::string(raw.substr(start, i - start)), start + 1});
    }
    if (!line.tokens.empty()) out.push_back(std::move(line));
    if (end == text.size()) break;
    pos = end + 1;
  }
  return out;
}

// Runs `f`, re-raising model errors with the line that caused them.
template <class F>
void at_line(const Line& line, F&& f) {
  try {
    f();
  } catch (const DeterminismError& e) {
    throw DeterminismError(line.number, e.what());
  } catch (const ValidationError& e) {
    if (e.line() != 0) throw;
    throw ValidationError(line.number, e.what());
  } catch (const UnknownState& e) {
    throw ValidationError(line.number, e.what());
  }
}

[[noreturn]] inline void unknown_directive(const Line& line) {
  throw ParseError(line.number, line.tokens.front().column,
                   "unknown directive '" + line.directive() + "'");
}

inline const Line& header(const std::vector<Line>& lines, std::string_view word) {
  if (lines.empty() || lines.front().directive() != word) {
    std::size_t n = lines.empty() ? 1 : lines.front().number;
    throw ParseError(n, 1, "expected '" + std::string(word) + "' header");
  }
  return lines.front();
}

inline std::size_t last_line(const std::vector<Line>& lines) {
  return lines.empty() ? 1 : lines.back().number;
}

template <class IdT>
IdT lookup(const Alphabet<IdT>& a, const std::string& name, const char* what) {
  auto id = a.find(name);
  if (!id) throw ValidationError(std::string("undeclared ") + what + " '" + name + "'");
  return *id;
}

inline std::uint32_t component_state(const MealyMachine& x, const std::string& name) {
  auto q = x.find_state(name);
  if (!q) throw ValidationError("undeclared component state '" + name + "'");
  return *q;
}

inline std::string join(const std::vector<std::string>& names) {
  std::string out;
  for (const auto& n : names) out += " " + n;
  return out;
}

}  // namespace detail

inline HostSystem parse_system(std::string_view text) {
  using namespace detail;
  auto lines = tokenize(text);
  const Line& head = header(lines, "system");
  head.need(1);
  HostSystem m;
  m.name = head.arg(0);
  // Events, inputs and outputs share one namespace; propositions may not
  // reuse state names.
  auto symbol_free = [&](const std::string& s) {
    if (m.events().contains(s) || m.inputs().contains(s) || m.outputs().contains(s)) {
      throw ValidationError("symbol '" + s + "' is declared twice across events, inputs and outputs");
    }
  };
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Line& l = lines[i];
    const std::string& d = l.directive();
    at_line(l, [&] {
      if (d == "states") {
        l.need_at_least(1);
        for (std::size_t k = 0; k < l.args(); ++k) {
          if (m.propositions().contains(l.arg(k))) {
            throw ValidationError("state '" + l.arg(k) + "' collides with a proposition");
          }
          m.add_state(l.arg(k));
        }
      } else if (d == "events" || d == "inputs" || d == "outputs") {
        l.need_at_least(1);
        for (std::size_t k = 0; k < l.args(); ++k) {
          symbol_free(l.arg(k));
          if (d == "events") m.add_event(l.arg(k));
          if (d == "inputs") m.add_input(l.arg(k));
          if (d == "outputs") m.add_output(l.arg(k));
        }
      } else if (d == "props") {
        l.need_at_least(1);
        for (std::size_t k = 0; k < l.args(); ++k) {
          if (m.find_state(l.arg(k))) {
            throw ValidationError("proposition '" + l.arg(k) + "' collides with a state name");
          }
          m.add_proposition(l.arg(k));
        }
      } else if (d == "init") {
        l.need_at_least(1);
        for (std::size_t k = 0; k < l.args(); ++k) m.add_initial(m.state(l.arg(k)));
      } else if (d == "env") {
        l.need(3);
        m.add_env(m.state(l.arg(0)), lookup(m.events(), l.arg(1), "event"), m.state(l.arg(2)));
      } else if (d == "comm") {
        l.need(4);
        m.add_comm(m.state(l.arg(0)), lookup(m.inputs(), l.arg(1), "input"),
                   lookup(m.outputs(), l.arg(2), "output"), m.state(l.arg(3)));
      } else if (d == "label") {
        l.need_at_least(2);
        StateId s = m.state(l.arg(0));
        for (std::size_t k = 1; k < l.args(); ++k) m.add_label(s, l.arg(k));
      } else {
        unknown_directive(l);
      }
    });
  }
  try {
    m.validate();
  } catch (const ValidationError& e) {
    throw ValidationError(last_line(lines), e.what());
  }
  return m;
}

inline std::string print_system(const HostSystem& m) {
  std::ostringstream os;
  os << "system " << (m.name.empty() ? "M" : m.name) << '\n';
  os << "states" << detail::join(m.state_names().names()) << '\n';
  if (!m.events().empty()) os << "events" << detail::join(m.events().names()) << '\n';
  if (!m.inputs().empty()) os << "inputs" << detail::join(m.inputs().names()) << '\n';
  if (!m.outputs().empty()) os << "outputs" << detail::join(m.outputs().names()) << '\n';
  if (!m.propositions().empty()) {
    os << "props"
       << detail::join({m.propositions().begin(), m.propositions().end()}) << '\n';
  }
  os << "init";
  for (StateId s : m.initial_states()) os << ' ' << m.state_name(s);
  os << '\n';
  for (const auto& t : m.transitions()) {
    if (t.communicates()) {
      os << "comm " << m.state_name(t.from) << ' ' << m.inputs().name(t.comm.input) << ' '
         << m.outputs().name(t.comm.output) << ' ' << m.state_name(t.to) << '\n';
    } else {
      os << "env " << m.state_name(t.from) << ' ' << m.events().name(t.event) << ' '
         << m.state_name(t.to) << '\n';
    }
  }
  for (StateId s : m.states()) {
    const auto& ls = m.labels(s);
    if (!ls.empty()) os << "label " << m.state_name(s) << detail::join({ls.begin(), ls.end()}) << '\n';
  }
  return os.str();
}

/// Reference component. Every (state, input) needs exactly one delta line.
inline MealyMachine parse_component(std::string_view text) {
  using namespace detail;
  auto lines = tokenize(text);
  const Line& head = header(lines, "component");
  head.need(1);
  MealyMachine x;
  x.name = head.arg(0);
  bool has_init = false;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Line& l = lines[i];
    const std::string& d = l.directive();
    at_line(l, [&] {
      if (d == "inputs") {
        l.need_at_least(1);
        for (std::size_t k = 0; k < l.args(); ++k) x.add_input(l.arg(k));
      } else if (d == "outputs") {
        l.need_at_least(1);
        for (std::size_t k = 0; k < l.args(); ++k) x.add_output(l.arg(k));
      } else if (d == "states") {
        l.need_at_least(1);
        for (std::size_t k = 0; k < l.args(); ++k) x.add_state(l.arg(k));
      } else if (d == "init") {
        l.need(1);
        if (has_init) throw ValidationError("second 'init' line");
        x.set_initial(component_state(x, l.arg(0)));
        has_init = true;
      } else if (d == "delta") {
        l.need(4);
        x.add_delta(component_state(x, l.arg(0)), lookup(x.inputs(), l.arg(1), "input"),
                    lookup(x.outputs(), l.arg(2), "output"), component_state(x, l.arg(3)));
      } else {
        unknown_directive(l);
      }
    });
  }
  try {
    if (!has_init) throw ValidationError("component has no 'init' line");
    x.validate();
  } catch (const ValidationError& e) {
    throw ValidationError(last_line(lines), e.what());
  }
  return x;
}

inline std::string print_component(const MealyMachine& x) {
  std::ostringstream os;
  os << "component " << (x.name.empty() ? "X" : x.name) << '\n';
  os << "inputs" << detail::join(x.inputs().names()) << '\n';
  os << "outputs" << detail::join(x.outputs().names()) << '\n';
  os << "states";
  for (std::uint32_t q = 0; q < x.state_count(); ++q) os << ' ' << x.state_name(q);
  os << '\n' << "init " << x.state_name(x.initial()) << '\n';
  for (std::uint32_t q = 0; q < x.state_count(); ++q) {
    for (InputId a : x.inputs().ids()) {
      const auto& r = x.step(q, a);
      os << "delta " << x.state_name(q) << ' ' << x.inputs().name(a) << ' '
         << x.outputs().name(r.output) << ' ' << x.state_name(r.next) << '\n';
    }
  }
  return os.str();
}

inline Tableau parse_tableau(std::string_view text) {
  using namespace detail;
  auto lines = tokenize(text);
  const Line& head = header(lines, "tableau");
  if (head.args() > 1) head.need(1);
  Tableau t;
  auto state = [&](const std::string& name) {
    auto q = t.states().find(name);
    if (!q) throw ValidationError("undeclared tableau state '" + name + "'");
    return *q;
  };
  // "sat tag: q..." and "fair: q..." accept the colon attached or spaced.
  auto after_colon = [&](const Line& l, std::size_t from, std::string* tag) {
    std::size_t k = from;
    std::string label;
    bool found = false;
    for (; k < l.tokens.size(); ++k) {
      std::string tok = l.tokens[k].text;
      if (tok.back() == ':') {
        tok.pop_back();
        if (!tok.empty()) label += tok;
        found = true;
        ++k;
        break;
      }
      label += tok;
    }
    if (!found) throw ParseError(l.number, l.tokens.front().column, "'" + l.directive() + "' needs a ':'");
    if (tag) *tag = label;
    else if (!label.empty()) throw ParseError(l.number, l.tokens[from].column, "unexpected '" + label + "'");
    std::vector<TableauStateId> qs;
    for (; k < l.tokens.size(); ++k) qs.push_back(state(l.tokens[k].text));
    return qs;
  };
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Line& l = lines[i];
    std::string d = l.directive();
    if (d.size() > 1 && d.back() == ':' && d.substr(0, d.size() - 1) == "fair") d = "fair";
    at_line(l, [&] {
      if (d == "tstates") {
        l.need_at_least(1);
        for (std::size_t k = 0; k < l.args(); ++k) t.add_state(l.arg(k));
      } else if (d == "tinit") {
        l.need_at_least(1);
        for (std::size_t k = 0; k < l.args(); ++k) t.add_initial(state(l.arg(k)));
      } else if (d == "tedge") {
        l.need(2);
        t.add_edge(state(l.arg(0)), state(l.arg(1)));
      } else if (d == "guard") {
        l.need_at_least(2);
        TableauStateId q = state(l.arg(0));
        std::string rest;
        for (std::size_t k = 1; k < l.args(); ++k) rest += l.arg(k);
        std::vector<Literal> g;
        if (rest != "true") {
          std::size_t p = 0;
          while (p <= rest.size()) {
            std::size_t amp = rest.find('&', p);
            if (amp == std::string::npos) amp = rest.size();
            std::string lit = rest.substr(p, amp - p);
            bool positive = true;
            if (!lit.empty() && lit.front() == '!') {
              positive = false;
              lit.erase(0, 1);
            }
            bool word = !lit.empty() && std::all_of(lit.begin(), lit.end(), [](unsigned char c) {
              return std::isalnum(c) || c == '_' || c == '.';
            });
            if (!word) throw ParseError(l.number, l.tokens[2].column, "malformed guard");
            g.push_back({lit, positive});
            p = amp + 1;
          }
        }
        t.set_guard(q, std::move(g));
      } else if (d == "sat") {
        std::string tag;
        auto qs = after_colon(l, 1, &tag);
        if (tag.empty()) throw ParseError(l.number, l.tokens.front().column, "'sat' needs a tag");
        t.add_sat(tag, std::move(qs));
      } else if (d == "fair") {
        std::size_t from = l.tokens.front().text == "fair" ? 1 : 0;
        std::vector<TableauStateId> qs;
        if (from == 0) {
          for (std::size_t k = 1; k < l.tokens.size(); ++k) qs.push_back(state(l.tokens[k].text));
        } else {
          qs = after_colon(l, 1, nullptr);
        }
        t.add_fairness(std::move(qs));
      } else {
        unknown_directive(l);
      }
    });
  }
  if (t.state_count() == 0) throw ValidationError(last_line(lines), "tableau declares no states");
  return t;
}

inline std::string print_tableau(const Tableau& t) {
  std::ostringstream os;
  os << "tableau\n";
  os << "tstates" << detail::join(t.states().names()) << '\n';
  if (!t.initial().empty()) {
    os << "tinit";
    for (auto q : t.initial()) os << ' ' << t.name(q);
    os << '\n';
  }
  for (auto q : t.states().ids()) {
    const auto& g = t.guard(q);
    if (g.empty()) continue;
    os << "guard " << t.name(q) << ' ';
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (i) os << " & ";
      os << (g[i].positive ? "" : "!") << g[i].atom;
    }
    os << '\n';
  }
  for (auto q : t.states().ids()) {
    for (auto q2 : t.successors(q)) os << "tedge " << t.name(q) << ' ' << t.name(q2) << '\n';
  }
  for (const auto& [tag, qs] : t.sat()) {
    os << "sat " << tag << ':';
    for (auto q : qs) os << ' ' << t.name(q);
    os << '\n';
  }
  for (const auto& f : t.fairness()) {
    os << "fair:";
    for (auto q : f) os << ' ' << t.name(q);
    os << '\n';
  }
  return os.str();
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError("cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace bbmc

#endif  // BBMC_PARSER_HPP
