// Copyright 2026 The Shazoo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "shazoo/spanning.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <string>

#include "shazoo/error.hpp"
#include "shazoo/rng.hpp"

namespace shazoo {
namespace {

void require_connected(const WeightedGraph& g) {
  if (!is_connected(g)) {
    throw Error(ErrorCode::kDisconnected,
                "cannot span a disconnected graph with " +
                    std::to_string(g.node_count()) + " nodes");
  }
}

WeightedTree tree_from_edges(const WeightedGraph& g,
                             std::vector<EdgeId> chosen) {
  std::sort(chosen.begin(), chosen.end());
  std::vector<Edge> edges;
  edges.reserve(chosen.size());
  for (EdgeId e : chosen) edges.push_back(g.edge(e));
  return WeightedTree(WeightedGraph(g.node_count(), std::move(edges),
                                    g.signed_mode()));
}

}  // namespace

std::string_view to_string(TreeKind kind) {
  switch (kind) {
    case TreeKind::kRst: return "rst";
    case TreeKind::kNwrst: return "nwrst";
    case TreeKind::kMst: return "mst";
  }
  return "unknown";
}

TreeKind parse_tree_kind(std::string_view text) {
  std::string lower(text);
  for (char& c : lower) c = static_cast<char>(std::tolower(c));
  if (lower == "rst") return TreeKind::kRst;
  if (lower == "nwrst") return TreeKind::kNwrst;
  if (lower == "mst") return TreeKind::kMst;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown tree kind '" + std::string(text) + "'");
}

TreeSample wilson_rst(const WeightedGraph& g, std::uint64_t seed,
                      bool use_weights) {
  require_connected(g);
  const std::size_t n = g.node_count();
  Rng rng(seed);

  // Cumulative |W| per adjacency slot for weighted neighbor selection.
  std::vector<double> cumulative;
  if (use_weights) {
    cumulative.resize(2 * g.edge_count());
    std::size_t slot = 0;
    for (NodeId v = 0; v < n; ++v) {
      double acc = 0.0;
      for (const Incidence& inc : g.neighbors(v)) {
        acc += std::abs(g.weight(inc.edge));
        cumulative[slot++] = acc;
      }
    }
  }
  std::vector<std::size_t> first_slot(n + 1, 0);
  for (NodeId v = 0; v < n; ++v) first_slot[v + 1] = first_slot[v] + g.degree(v);

  auto step = [&](NodeId v) -> const Incidence& {
    auto adj = g.neighbors(v);
    std::size_t i;
    if (use_weights) {
      const double* begin = cumulative.data() + first_slot[v];
      const double* end = cumulative.data() + first_slot[v + 1];
      const double target = rng.uniform() * end[-1];
      i = static_cast<std::size_t>(std::upper_bound(begin, end, target) - begin);
      if (i >= adj.size()) i = adj.size() - 1;
    } else {
      i = static_cast<std::size_t>(rng.below(adj.size()));
    }
    return adj[i];
  };

  std::vector<std::uint8_t> in_tree(n, 0);
  std::vector<EdgeId> next_edge(n, 0);
  std::vector<NodeId> next_node(n, kNoNode);
  std::vector<EdgeId> chosen;
  chosen.reserve(n - 1);
  std::uint64_t steps = 0;
  in_tree[0] = 1;
  for (NodeId start = 0; start < n; ++start) {
    // Walk until the tree is hit; overwriting next_* erases loops.
    for (NodeId v = start; !in_tree[v];) {
      const Incidence& inc = step(v);
      ++steps;
      next_node[v] = inc.node;
      next_edge[v] = inc.edge;
      v = inc.node;
    }
    for (NodeId v = start; !in_tree[v]; v = next_node[v]) {
      in_tree[v] = 1;
      chosen.push_back(next_edge[v]);
    }
  }
  return {tree_from_edges(g, std::move(chosen)),
          use_weights ? TreeKind::kRst : TreeKind::kNwrst, seed, steps};
}

TreeSample mst(const WeightedGraph& g) {
  require_connected(g);
  std::vector<EdgeId> by_resistance(g.edge_count());
  std::iota(by_resistance.begin(), by_resistance.end(), EdgeId{0});
  std::stable_sort(by_resistance.begin(), by_resistance.end(),
                   [&](EdgeId a, EdgeId b) {
                     return g.resistance(a) < g.resistance(b);
                   });
  DisjointSets sets(g.node_count());
  std::vector<EdgeId> chosen;
  chosen.reserve(g.node_count() - 1);
  for (EdgeId e : by_resistance) {
    if (sets.unite(g.edge(e).u, g.edge(e).v)) chosen.push_back(e);
  }
  return {tree_from_edges(g, std::move(chosen)), TreeKind::kMst, 0, 0};
}

TreeSample sample_tree(const WeightedGraph& g, TreeKind kind,
                       std::uint64_t seed) {
  switch (kind) {
    case TreeKind::kRst: return wilson_rst(g, seed, true);
    case TreeKind::kNwrst: return wilson_rst(g, seed, false);
    case TreeKind::kMst: return mst(g);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown tree kind");
}

WeightedLine dfs_linearize(const WeightedTree& t, NodeId root) {
  const std::size_t n = t.node_count();
  if (root >= n) throw Error(ErrorCode::kInvalidNode, "root " + std::to_string(root));
  WeightedLine line;
  line.nodes.reserve(n);
  line.weights.reserve(n > 0 ? n - 1 : 0);

  struct Frame {
    NodeId node;
    EdgeId via;
    std::size_t next;  // next adjacency slot to try
  };
  std::vector<Frame> stack = {{root, 0, 0}};
  std::vector<std::uint8_t> visited(n, 0);
  visited[root] = 1;
  line.nodes.push_back(root);
  // Smallest |W| crossed since the last emitted node.
  double pending = std::numeric_limits<double>::infinity();
  while (!stack.empty()) {
    Frame& top = stack.back();
    auto adj = t.neighbors(top.node);
    if (top.next < adj.size()) {
      const Incidence& inc = adj[top.next++];
      if (visited[inc.node]) continue;
      visited[inc.node] = 1;
      pending = std::min(pending, std::abs(t.weight(inc.edge)));
      line.nodes.push_back(inc.node);
      line.weights.push_back(pending);
      pending = std::numeric_limits<double>::infinity();
      stack.push_back({inc.node, inc.edge, 0});
      continue;
    }
    if (stack.size() > 1) pending = std::min(pending, std::abs(t.weight(top.via)));
    stack.pop_back();
  }
  return line;
}

}  // namespace shazoo
