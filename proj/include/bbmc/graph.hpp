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

#ifndef BBMC_GRAPH_HPP
#define BBMC_GRAPH_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "bbmc/host_system.hpp"

namespace bbmc {

/// A subgraph of M: a node set plus M-transitions between member nodes.
/// Communication edges keep their alpha/beta annotation.
class SubGraph {
 public:
  SubGraph() = default;
  explicit SubGraph(std::size_t universe) : member_(universe, false), out_(universe) {}

  void add_node(StateId s) {
    if (!member_.at(s.value)) {
      member_[s.value] = true;
      nodes_.insert(std::upper_bound(nodes_.begin(), nodes_.end(), s), s);
    }
  }

  void add_edge(const Transition& t) {
    add_node(t.from);
    add_node(t.to);
    out_[t.from.value].push_back(edges_.size());
    edges_.push_back(t);
  }

  bool contains(StateId s) const {
    return s.value < member_.size() && member_[s.value];
  }
  const std::vector<StateId>& nodes() const noexcept { return nodes_; }
  const std::vector<Transition>& edges() const noexcept { return edges_; }
  std::size_t universe() const noexcept { return member_.size(); }

  std::vector<const Transition*> out(StateId s) const {
    std::vector<const Transition*> r;
    if (s.value < out_.size()) {
      for (std::size_t i : out_[s.value]) r.push_back(&edges_[i]);
    }
    return r;
  }

  std::size_t communication_edges() const {
    return static_cast<std::size_t>(std::count_if(
        edges_.begin(), edges_.end(), [](const Transition& t) { return t.communicates(); }));
  }

  bool empty() const noexcept { return nodes_.empty(); }

 private:
  std::vector<bool> member_;
  std::vector<StateId> nodes_;
  std::vector<Transition> edges_;
  std::vector<std::vector<std::size_t>> out_;
};

/// Nodes plus every M-transition whose endpoints are both in `nodes`.
inline SubGraph induced_subgraph(const HostSystem& m, const std::vector<StateId>& nodes) {
  SubGraph g(m.state_count());
  for (StateId s : nodes) g.add_node(s);
  for (const auto& t : m.transitions()) {
    if (g.contains(t.from) && g.contains(t.to)) g.add_edge(t);
  }
  return g;
}

/// Tarjan's algorithm on an adjacency list. Returns the component index of
/// each vertex.
inline std::vector<std::uint32_t> scc_index(const std::vector<std::vector<std::uint32_t>>& adj) {
  const std::uint32_t n = static_cast<std::uint32_t>(adj.size());
  constexpr std::uint32_t kNone = UINT32_MAX;
  std::vector<std::uint32_t> index(n, kNone), low(n, 0), comp(n, kNone);
  std::vector<bool> on_stack(n, false);
  std::vector<std::uint32_t> stack;
  std::uint32_t counter = 0;
  std::uint32_t comps = 0;

  // Iterative to keep deep chains off the call stack.
  struct Frame {
    std::uint32_t v;
    std::size_t next;
  };
  for (std::uint32_t root = 0; root < n; ++root) {
    if (index[root] != kNone) continue;
    std::vector<Frame> frames{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.next < adj[f.v].size()) {
        std::uint32_t w = adj[f.v][f.next++];
        if (index[w] == kNone) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
        continue;
      }
      std::uint32_t v = f.v;
      frames.pop_back();
      if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
      if (low[v] == index[v]) {
        std::uint32_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = comps;
        } while (w != v);
        ++comps;
      }
    }
  }
  return comp;
}

/// Members of strongly connected components that contain at least one edge
/// (a lone state qualifies only with a self-loop), grouped per component and
/// sorted.
inline std::vector<std::vector<StateId>> nontrivial_sccs(const SubGraph& g) {
  std::vector<std::vector<std::uint32_t>> adj(g.universe());
  for (const auto& t : g.edges()) adj[t.from.value].push_back(t.to.value);
  auto comp = scc_index(adj);
  std::uint32_t count = 0;
  for (StateId s : g.nodes()) count = std::max(count, comp[s.value] + 1);
  std::vector<std::vector<StateId>> members(count);
  std::vector<bool> has_edge(count, false);
  for (StateId s : g.nodes()) members[comp[s.value]].push_back(s);
  for (const auto& t : g.edges()) {
    if (comp[t.from.value] == comp[t.to.value]) has_edge[comp[t.from.value]] = true;
  }
  std::vector<std::vector<StateId>> out;
  for (std::uint32_t c = 0; c < count; ++c) {
    if (has_edge[c] && !members[c].empty()) {
      std::sort(members[c].begin(), members[c].end());
      out.push_back(std::move(members[c]));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace detail {

// Longest (by communication count) simple paths via a subset DP over the
// graph's nodes. Exponential in node count; callers cap the size.
class SimplePathDp {
 public:
  explicit SimplePathDp(const SubGraph& g) : nodes_(g.nodes()) {
    const std::size_t n = nodes_.size();
    local_.assign(g.universe(), -1);
    for (std::size_t i = 0; i < n; ++i) local_[nodes_[i].value] = static_cast<int>(i);
    adj_.resize(n);
    for (const auto& t : g.edges()) {
      adj_[local_[t.from.value]].push_back(
          {local_[t.to.value], t.communicates() ? 1 : 0});
    }
  }

  // Max weight of a simple path from `src` ending anywhere; filled per end.
  std::vector<int> from(StateId src, std::vector<int>* closing = nullptr,
                        int closing_target = -1) const {
    const std::size_t n = nodes_.size();
    const std::size_t full = std::size_t{1} << n;
    std::vector<int> dp(full * n, -1);
    int s = local_[src.value];
    dp[(std::size_t{1} << s) * n + s] = 0;
    std::vector<int> best(n, -1);
    for (std::size_t mask = 1; mask < full; ++mask) {
      for (std::size_t v = 0; v < n; ++v) {
        int cur = dp[mask * n + v];
        if (cur < 0) continue;
        best[v] = std::max(best[v], cur);
        for (auto [w, c] : adj_[v]) {
          if (closing && w == closing_target) {
            (*closing)[0] = std::max((*closing)[0], cur + c);
          }
          if (mask & (std::size_t{1} << w)) continue;
          auto next = (mask | (std::size_t{1} << w)) * n + w;
          dp[next] = std::max(dp[next], cur + c);
        }
      }
    }
    return best;
  }

  int local(StateId s) const { return local_[s.value]; }
  std::size_t size() const { return nodes_.size(); }

 private:
  struct Arc {
    int to;
    int comm;
  };
  std::vector<StateId> nodes_;
  std::vector<int> local_;
  std::vector<std::vector<Arc>> adj_;
};

}  // namespace detail

/// Max communications over simple paths from `from` to `to`; nullopt when no
/// path exists. A path from a node to itself is the empty path.
inline std::optional<std::size_t> max_comm_simple_path(const SubGraph& g, StateId from,
                                                       StateId to) {
  if (!g.contains(from) || !g.contains(to)) return std::nullopt;
  if (from == to) return 0;
  detail::SimplePathDp dp(g);
  auto best = dp.from(from);
  int v = best[dp.local(to)];
  if (v < 0) return std::nullopt;
  return static_cast<std::size_t>(v);
}

/// Max communications over simple loops through `through`.
inline std::optional<std::size_t> max_comm_simple_loop(const SubGraph& g, StateId through) {
  if (!g.contains(through)) return std::nullopt;
  detail::SimplePathDp dp(g);
  std::vector<int> closing{-1};
  dp.from(through, &closing, dp.local(through));
  if (closing[0] < 0) return std::nullopt;
  return static_cast<std::size_t>(closing[0]);
}

/// Max communications over all simple cycles; 0 when the graph is acyclic.
inline std::size_t max_comm_simple_cycle(const SubGraph& g) {
  detail::SimplePathDp dp(g);
  int best = 0;
  for (StateId s : g.nodes()) {
    std::vector<int> closing{-1};
    dp.from(s, &closing, dp.local(s));
    best = std::max(best, closing[0]);
  }
  return static_cast<std::size_t>(best);
}

/// Max communications over all simple paths of the graph, and optionally
/// over all simple cycles as well.
inline std::size_t max_comm_anywhere(const SubGraph& g, bool include_cycles) {
  detail::SimplePathDp dp(g);
  int best = 0;
  for (StateId s : g.nodes()) {
    std::vector<int> closing{-1};
    auto row = include_cycles ? dp.from(s, &closing, dp.local(s)) : dp.from(s);
    for (int v : row) best = std::max(best, v);
    best = std::max(best, closing[0]);
  }
  return static_cast<std::size_t>(best);
}

}  // namespace bbmc

#endif  // BBMC_GRAPH_HPP
