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

#ifndef BBMC_WITNESS_HPP
#define BBMC_WITNESS_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "bbmc/errors.hpp"
#include "bbmc/graph.hpp"
#include "bbmc/ids.hpp"

namespace bbmc {

struct IdExpr;
using IdExprPtr = std::shared_ptr<const IdExpr>;

/// psi ::= ID | !psi | psi | psi. Id(1) is the constant true.
struct IdExpr {
  enum class Kind { id, negation, disjunction };

  Kind kind = Kind::id;
  std::uint32_t id = 1;
  IdExprPtr lhs;
  IdExprPtr rhs;

  static IdExprPtr truth() {
    static const IdExprPtr one = leaf(1);
    return one;
  }
  static IdExprPtr leaf(std::uint32_t id) {
    auto e = std::make_shared<IdExpr>();
    e->id = id;
    return e;
  }
  static IdExprPtr negation(IdExprPtr e) {
    auto n = std::make_shared<IdExpr>();
    n->kind = Kind::negation;
    n->lhs = std::move(e);
    return n;
  }
  static IdExprPtr disjunction(IdExprPtr a, IdExprPtr b) {
    auto n = std::make_shared<IdExpr>();
    n->kind = Kind::disjunction;
    n->lhs = std::move(a);
    n->rhs = std::move(b);
    return n;
  }

  bool is_true() const noexcept { return kind == Kind::id && id == 1; }
};

inline bool operator==(const IdExpr& a, const IdExpr& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case IdExpr::Kind::id: return a.id == b.id;
    case IdExpr::Kind::negation: return *a.lhs == *b.lhs;
    case IdExpr::Kind::disjunction: return *a.lhs == *b.lhs && *a.rhs == *b.rhs;
  }
  return false;
}

inline std::string to_string(const IdExpr& e) {
  switch (e.kind) {
    case IdExpr::Kind::id: return std::to_string(e.id);
    case IdExpr::Kind::negation: return "!" + to_string(*e.lhs);
    case IdExpr::Kind::disjunction:
      return "(" + to_string(*e.lhs) + " | " + to_string(*e.rhs) + ")";
  }
  return "?";
}

/// Ids mentioned by an expression, in order of first occurrence.
inline void collect_ids(const IdExpr& e, std::vector<std::uint32_t>& out) {
  if (e.kind == IdExpr::Kind::id) {
    out.push_back(e.id);
    return;
  }
  collect_ids(*e.lhs, out);
  if (e.rhs) collect_ids(*e.rhs, out);
}

/// Partial map L_h : S -> Psi.
class LabelingFunction {
 public:
  using Map = std::map<StateId, IdExprPtr>;

  /// Defines L(s); redefining a state is a construction bug.
  void define(StateId s, IdExprPtr e) {
    if (!map_.emplace(s, std::move(e)).second) {
      throw Error("labeling already defines state #" + std::to_string(s.value));
    }
  }
  /// Overwrites L(s), used by the fixpoint handlers while upgrading labels.
  void assign(StateId s, IdExprPtr e) { map_[s] = std::move(e); }

  bool contains(StateId s) const { return map_.contains(s); }
  const IdExprPtr* find(StateId s) const {
    auto it = map_.find(s);
    return it == map_.end() ? nullptr : &it->second;
  }
  const IdExpr& at(StateId s) const {
    auto it = map_.find(s);
    if (it == map_.end()) throw Error("state #" + std::to_string(s.value) + " is unlabeled");
    return *it->second;
  }
  bool is_true(StateId s) const {
    auto it = map_.find(s);
    return it != map_.end() && it->second->is_true();
  }

  std::vector<StateId> domain() const {
    std::vector<StateId> out;
    for (const auto& [s, e] : map_) out.push_back(s);
    return out;
  }
  std::size_t size() const noexcept { return map_.size(); }
  bool empty() const noexcept { return map_.empty(); }
  Map::const_iterator begin() const { return map_.begin(); }
  Map::const_iterator end() const { return map_.end(); }

 private:
  Map map_;
};

enum class WitnessKind { ex, eu, eg };

inline const char* to_string(WitnessKind k) {
  switch (k) {
    case WitnessKind::ex: return "EX";
    case WitnessKind::eu: return "EU";
    case WitnessKind::eg: return "EG";
  }
  return "?";
}

/// Residual condition of one temporal operator. `first` is L_g for EX and
/// EG, L_g1 for EU; `second` is L_g2 for EU and empty otherwise.
struct WitnessGraph {
  WitnessKind kind = WitnessKind::ex;
  std::uint32_t id = 0;
  SubGraph graph;
  LabelingFunction first;
  LabelingFunction second;
};

/// The mapping from ids 2, 3, ... to witness graphs.
class WitnessRegistry {
 public:
  std::uint32_t next_id() const noexcept {
    return static_cast<std::uint32_t>(graphs_.size()) + 2;
  }

  std::uint32_t add(WitnessGraph g) {
    g.id = next_id();
    graphs_.push_back(std::move(g));
    return graphs_.back().id;
  }

  const WitnessGraph& at(std::uint32_t id) const {
    if (id < 2 || id >= next_id()) {
      throw Error("no witness graph with id " + std::to_string(id));
    }
    return graphs_[id - 2];
  }

  std::size_t size() const noexcept { return graphs_.size(); }
  bool empty() const noexcept { return graphs_.empty(); }
  const std::vector<WitnessGraph>& graphs() const noexcept { return graphs_; }

 private:
  std::vector<WitnessGraph> graphs_;
};

}  // namespace bbmc

#endif  // BBMC_WITNESS_HPP
