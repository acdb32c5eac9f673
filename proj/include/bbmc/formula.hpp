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

#ifndef BBMC_FORMULA_HPP
#define BBMC_FORMULA_HPP

#include <cctype>
#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "bbmc/errors.hpp"
#include "bbmc/host_system.hpp"

namespace bbmc {

// CTL over the ASCII grammar
//
//   f ::= true | false | ident | !f | f & f | f | f | f -> f
//       | EX f | AX f | EF f | AF f | EG f | AG f
//       | E[ f U f ] | A[ f U f ] | ( f )
//
// Precedence: unary > & > | > ->, with -> right-associative.

enum class Op {
  True, False, Atom, Not, And, Or, Implies,
  EX, AX, EF, AF, EU, AU, EG, AG,
};

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  Op op = Op::True;
  std::string name;  // Atom only
  FormulaPtr lhs;    // operand of unary operators, left of binary ones
  FormulaPtr rhs;

  static FormulaPtr truth() { return make(Op::True); }
  static FormulaPtr falsity() { return make(Op::False); }
  static FormulaPtr atom(std::string name) {
    auto f = std::make_shared<Formula>();
    f->op = Op::Atom;
    f->name = std::move(name);
    return f;
  }
  static FormulaPtr unary(Op op, FormulaPtr f) { return make(op, std::move(f)); }
  static FormulaPtr binary(Op op, FormulaPtr l, FormulaPtr r) {
    return make(op, std::move(l), std::move(r));
  }

 private:
  static FormulaPtr make(Op op, FormulaPtr l = nullptr, FormulaPtr r = nullptr) {
    auto f = std::make_shared<Formula>();
    f->op = op;
    f->lhs = std::move(l);
    f->rhs = std::move(r);
    return f;
  }
};

inline bool is_binary(Op op) {
  return op == Op::And || op == Op::Or || op == Op::Implies || op == Op::EU ||
         op == Op::AU;
}

inline bool is_unary(Op op) {
  return op == Op::Not || op == Op::EX || op == Op::AX || op == Op::EF ||
         op == Op::AF || op == Op::EG || op == Op::AG;
}

inline bool is_temporal(Op op) {
  return op == Op::EX || op == Op::AX || op == Op::EF || op == Op::AF ||
         op == Op::EU || op == Op::AU || op == Op::EG || op == Op::AG;
}

inline bool structurally_equal(const Formula& a, const Formula& b) {
  if (a.op != b.op || a.name != b.name) return false;
  if (static_cast<bool>(a.lhs) != static_cast<bool>(b.lhs)) return false;
  if (static_cast<bool>(a.rhs) != static_cast<bool>(b.rhs)) return false;
  if (a.lhs && !structurally_equal(*a.lhs, *b.lhs)) return false;
  if (a.rhs && !structurally_equal(*a.rhs, *b.rhs)) return false;
  return true;
}

inline std::string to_string(const Formula& f) {
  switch (f.op) {
    case Op::True: return "true";
    case Op::False: return "false";
    case Op::Atom: return f.name;
    case Op::Not: return "!" + to_string(*f.lhs);
    case Op::And: return "(" + to_string(*f.lhs) + " & " + to_string(*f.rhs) + ")";
    case Op::Or: return "(" + to_string(*f.lhs) + " | " + to_string(*f.rhs) + ")";
    case Op::Implies:
      return "(" + to_string(*f.lhs) + " -> " + to_string(*f.rhs) + ")";
    case Op::EX: return "EX " + to_string(*f.lhs);
    case Op::AX: return "AX " + to_string(*f.lhs);
    case Op::EF: return "EF " + to_string(*f.lhs);
    case Op::AF: return "AF " + to_string(*f.lhs);
    case Op::EG: return "EG " + to_string(*f.lhs);
    case Op::AG: return "AG " + to_string(*f.lhs);
    case Op::EU: return "E[" + to_string(*f.lhs) + " U " + to_string(*f.rhs) + "]";
    case Op::AU: return "A[" + to_string(*f.lhs) + " U " + to_string(*f.rhs) + "]";
  }
  return "?";
}

inline std::size_t depth(const Formula& f) {
  std::size_t d = 0;
  if (f.lhs) d = depth(*f.lhs);
  if (f.rhs) d = std::max(d, depth(*f.rhs));
  return f.lhs ? d + 1 : 0;
}

/// Number of temporal operator nodes.
inline std::size_t temporal_count(const Formula& f) {
  std::size_t n = is_temporal(f.op) ? 1 : 0;
  if (f.lhs) n += temporal_count(*f.lhs);
  if (f.rhs) n += temporal_count(*f.rhs);
  return n;
}

inline void collect_atoms(const Formula& f, std::vector<std::string>& out) {
  if (f.op == Op::Atom) out.push_back(f.name);
  if (f.lhs) collect_atoms(*f.lhs, out);
  if (f.rhs) collect_atoms(*f.rhs, out);
}

/// Throws ValidationError for an atom that is neither a proposition nor a
/// state of `m`.
inline void check_atoms(const Formula& f, const HostSystem& m) {
  std::vector<std::string> atoms;
  collect_atoms(f, atoms);
  for (const auto& a : atoms) {
    if (!m.is_atom(a)) {
      throw ValidationError("formula atom '" + a +
                            "' is neither a proposition nor a state");
    }
  }
}

namespace detail {

class CtlParser {
 public:
  explicit CtlParser(std::string_view text) : text_(text) { next(); }

  FormulaPtr parse() {
    FormulaPtr f = implies();
    if (tok_.kind != Kind::End) fail("unexpected '" + tok_.text + "'");
    return f;
  }

 private:
  enum class Kind { End, Ident, Keyword, Punct };

  struct Token {
    Kind kind = Kind::End;
    std::string text;
    std::size_t line = 1;
    std::size_t column = 1;
  };

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(tok_.line, tok_.column, what);
  }

  static bool keyword(const std::string& w) {
    static const char* const kWords[] = {"true", "false", "EX", "AX", "EF", "AF",
                                         "EG",   "AG",    "E",  "A",  "U"};
    for (const char* k : kWords) {
      if (w == k) return true;
    }
    return false;
  }

  void next() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      advance_char();
    }
    tok_ = Token{};
    tok_.line = line_;
    tok_.column = column_;
    if (pos_ >= text_.size()) return;
    char c = text_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string w;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        w += text_[pos_];
        advance_char();
      }
      tok_.kind = keyword(w) ? Kind::Keyword : Kind::Ident;
      tok_.text = std::move(w);
      return;
    }
    tok_.kind = Kind::Punct;
    if (c == '-' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
      tok_.text = "->";
      advance_char();
      advance_char();
      return;
    }
    if (c == '!' || c == '&' || c == '|' || c == '(' || c == ')' || c == '[' || c == ']') {
      tok_.text = std::string(1, c);
      advance_char();
      return;
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  void advance_char() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  bool at(std::string_view t) const {
    return (tok_.kind == Kind::Punct || tok_.kind == Kind::Keyword) && tok_.text == t;
  }

  void expect(std::string_view t) {
    if (!at(t)) {
      fail("expected '" + std::string(t) + "'" +
           (tok_.kind == Kind::End ? " at end of input" : ", found '" + tok_.text + "'"));
    }
    next();
  }

  FormulaPtr implies() {
    FormulaPtr l = disjunction();
    if (at("->")) {
      next();
      return Formula::binary(Op::Implies, l, implies());
    }
    return l;
  }

  FormulaPtr disjunction() {
    FormulaPtr l = conjunction();
    while (at("|")) {
      next();
      l = Formula::binary(Op::Or, l, conjunction());
    }
    return l;
  }

  FormulaPtr conjunction() {
    FormulaPtr l = unary();
    while (at("&")) {
      next();
      l = Formula::binary(Op::And, l, unary());
    }
    return l;
  }

  FormulaPtr unary() {
    static const std::pair<const char*, Op> kPrefix[] = {
        {"!", Op::Not}, {"EX", Op::EX}, {"AX", Op::AX}, {"EF", Op::EF},
        {"AF", Op::AF}, {"EG", Op::EG}, {"AG", Op::AG}};
    for (const auto& [text, op] : kPrefix) {
      if (at(text)) {
        next();
        return Formula::unary(op, unary());
      }
    }
    return primary();
  }

  FormulaPtr primary() {
    if (tok_.kind == Kind::Ident) {
      auto f = Formula::atom(tok_.text);
      next();
      return f;
    }
    if (at("true")) {
      next();
      return Formula::truth();
    }
    if (at("false")) {
      next();
      return Formula::falsity();
    }
    if (at("(")) {
      next();
      FormulaPtr f = implies();
      expect(")");
      return f;
    }
    if (at("E") || at("A")) {
      Op op = at("E") ? Op::EU : Op::AU;
      next();
      expect("[");
      FormulaPtr l = implies();
      expect("U");
      FormulaPtr r = implies();
      expect("]");
      return Formula::binary(op, l, r);
    }
    if (tok_.kind == Kind::End) fail("unexpected end of formula");
    fail("unexpected '" + tok_.text + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
  Token tok_;
};

inline FormulaPtr negate(FormulaPtr f) {
  if (f->op == Op::Not) return f->lhs;
  return Formula::unary(Op::Not, std::move(f));
}

inline FormulaPtr lower(const FormulaPtr& f) {
  auto l = [&] { return lower(f->lhs); };
  auto r = [&] { return lower(f->rhs); };
  switch (f->op) {
    case Op::True:
    case Op::Atom: return f;
    case Op::False: return negate(Formula::truth());
    case Op::Not: return negate(l());
    case Op::Or: return Formula::binary(Op::Or, l(), r());
    case Op::And:
      return negate(Formula::binary(Op::Or, negate(l()), negate(r())));
    case Op::Implies: return Formula::binary(Op::Or, negate(l()), r());
    case Op::EX: return Formula::unary(Op::EX, l());
    case Op::EU: return Formula::binary(Op::EU, l(), r());
    case Op::EG: return Formula::unary(Op::EG, l());
    case Op::AX: return negate(Formula::unary(Op::EX, negate(l())));
    case Op::EF: return Formula::binary(Op::EU, Formula::truth(), l());
    case Op::AF: return negate(Formula::unary(Op::EG, negate(l())));
    case Op::AG:
      return negate(Formula::binary(Op::EU, Formula::truth(), negate(l())));
    case Op::AU: {
      // A[f U g] == !(E[!g U (!f & !g)] | EG !g)
      FormulaPtr nf = negate(l());
      FormulaPtr ng = negate(r());
      FormulaPtr both = negate(Formula::binary(Op::Or, negate(nf), negate(ng)));
      return negate(Formula::binary(
          Op::Or, Formula::binary(Op::EU, ng, both), Formula::unary(Op::EG, ng)));
    }
  }
  return f;
}

}  // namespace detail

inline FormulaPtr parse_ctl(std::string_view text) {
  return detail::CtlParser(text).parse();
}

/// A formula over {true, atom, !, |, EX, EU, EG} only.
struct NormalizedCtl {
  FormulaPtr root;
  std::size_t operator_count = 0;  // k: EX/EU/EG nodes, one witness graph each
};

inline bool is_normalized(const Formula& f) {
  switch (f.op) {
    case Op::True:
    case Op::Atom: return true;
    case Op::Not:
    case Op::EX:
    case Op::EG: return is_normalized(*f.lhs);
    case Op::Or:
    case Op::EU: return is_normalized(*f.lhs) && is_normalized(*f.rhs);
    default: return false;
  }
}

/// Rewrites into existential normal form, dropping double negations.
inline NormalizedCtl normalize(const FormulaPtr& f) {
  NormalizedCtl out;
  out.root = detail::lower(f);
  out.operator_count = temporal_count(*out.root);
  return out;
}

}  // namespace bbmc

#endif  // BBMC_FORMULA_HPP
