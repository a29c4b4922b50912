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

#include "shazoo/graph.hpp"

#include <algorithm>
#include <string>
#include <unordered_set>

#include "shazoo/error.hpp"

namespace shazoo {
namespace {

std::uint64_t pair_key(NodeId a, NodeId b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

void check_node(const WeightedGraph& g, NodeId v) {
  if (!g.contains(v)) {
    throw Error(ErrorCode::kInvalidNode, "node " + std::to_string(v) +
                                             " out of range for graph with " +
                                             std::to_string(g.node_count()) +
                                             " nodes");
  }
}

// Parent pointers of a traversal rooted at `root`, with the edge used to
// reach each node.
struct RootedTree {
  std::vector<NodeId> parent;
  std::vector<EdgeId> parent_edge;
};

RootedTree root_at(const WeightedTree& t, NodeId root) {
  const std::size_t n = t.node_count();
  RootedTree r{std::vector<NodeId>(n, kNoNode), std::vector<EdgeId>(n, 0)};
  std::vector<NodeId> stack = {root};
  r.parent[root] = root;
  while (!stack.empty()) {
    NodeId x = stack.back();
    stack.pop_back();
    for (const Incidence& inc : t.neighbors(x)) {
      if (r.parent[inc.node] != kNoNode) continue;
      r.parent[inc.node] = x;
      r.parent_edge[inc.node] = inc.edge;
      stack.push_back(inc.node);
    }
  }
  return r;
}

// Resistance distances from `source`, plus the farthest node.
std::pair<NodeId, double> farthest_from(const WeightedTree& t, NodeId source) {
  std::vector<double> dist(t.node_count(), -1.0);
  std::vector<NodeId> stack = {source};
  dist[source] = 0.0;
  NodeId best = source;
  while (!stack.empty()) {
    NodeId x = stack.back();
    stack.pop_back();
    if (dist[x] > dist[best]) best = x;
    for (const Incidence& inc : t.neighbors(x)) {
      if (dist[inc.node] >= 0.0) continue;
      dist[inc.node] = dist[x] + t.resistance(inc.edge);
      stack.push_back(inc.node);
    }
  }
  return {best, dist[best]};
}

}  // namespace

WeightedGraph::WeightedGraph(std::size_t node_count, std::vector<Edge> edges,
                             bool signed_mode)
    : node_count_(node_count), signed_mode_(signed_mode),
      edges_(std::move(edges)) {
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(edges_.size() * 2);
  std::vector<std::size_t> degree(node_count_ + 1, 0);
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const Edge& edge = edges_[e];
    const std::string where = "edge " + std::to_string(e) + " (" +
                              std::to_string(edge.u) + "," +
                              std::to_string(edge.v) + ")";
    if (edge.u >= node_count_ || edge.v >= node_count_) {
      throw Error(ErrorCode::kInvalidNode, where + " references a node >= " +
                                               std::to_string(node_count_));
    }
    if (edge.u == edge.v) throw Error(ErrorCode::kSelfLoop, where);
    if (!std::isfinite(edge.weight)) {
      throw Error(ErrorCode::kNonFiniteWeight, where);
    }
    if (edge.weight == 0.0) throw Error(ErrorCode::kZeroWeight, where);
    if (edge.weight < 0.0 && !signed_mode_) {
      throw Error(ErrorCode::kNegativeWeight,
                  where + " has a negative weight outside signed mode");
    }
    if (!seen.insert(pair_key(edge.u, edge.v)).second) {
      throw Error(ErrorCode::kDuplicateEdge, where);
    }
    ++degree[edge.u];
    ++degree[edge.v];
  }

  offsets_.assign(node_count_ + 1, 0);
  for (std::size_t v = 0; v < node_count_; ++v) {
    offsets_[v + 1] = offsets_[v] + degree[v];
  }
  incidences_.resize(offsets_[node_count_]);
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const Edge& edge = edges_[e];
    incidences_[cursor[edge.u]++] = {edge.v, static_cast<EdgeId>(e)};
    incidences_[cursor[edge.v]++] = {edge.u, static_cast<EdgeId>(e)};
  }
  for (std::size_t v = 0; v < node_count_; ++v) {
    std::sort(incidences_.begin() + offsets_[v],
              incidences_.begin() + offsets_[v + 1],
              [](const Incidence& a, const Incidence& b) {
                return a.node < b.node;
              });
  }
}

std::size_t WeightedGraph::max_degree() const {
  std::size_t best = 0;
  for (std::size_t v = 0; v < node_count_; ++v) {
    best = std::max(best, degree(static_cast<NodeId>(v)));
  }
  return best;
}

std::optional<EdgeId> WeightedGraph::find_edge(NodeId u, NodeId v) const {
  if (!contains(u) || !contains(v)) return std::nullopt;
  auto adj = neighbors(u);
  auto it = std::lower_bound(
      adj.begin(), adj.end(), v,
      [](const Incidence& inc, NodeId id) { return inc.node < id; });
  if (it == adj.end() || it->node != v) return std::nullopt;
  return it->edge;
}

Components connected_components(const WeightedGraph& g) {
  Components c{std::vector<NodeId>(g.node_count(), kNoNode), 0};
  std::vector<NodeId> stack;
  for (NodeId s = 0; s < g.node_count(); ++s) {
    if (c.component_of[s] != kNoNode) continue;
    const auto id = static_cast<NodeId>(c.count++);
    c.component_of[s] = id;
    stack.push_back(s);
    while (!stack.empty()) {
      NodeId x = stack.back();
      stack.pop_back();
      for (const Incidence& inc : g.neighbors(x)) {
        if (c.component_of[inc.node] != kNoNode) continue;
        c.component_of[inc.node] = id;
        stack.push_back(inc.node);
      }
    }
  }
  return c;
}

bool is_connected(const WeightedGraph& g) {
  return g.node_count() > 0 && connected_components(g).count == 1;
}

WeightedTree::WeightedTree(WeightedGraph graph) : graph_(std::move(graph)) {
  const std::size_t n = graph_.node_count();
  if (n == 0 || !is_connected(graph_)) {
    throw Error(ErrorCode::kDisconnected, "graph with " + std::to_string(n) +
                                              " nodes is not connected");
  }
  if (graph_.edge_count() != n - 1) {
    throw Error(ErrorCode::kCycleDetected,
                "connected graph has " + std::to_string(graph_.edge_count()) +
                    " edges, a tree on " + std::to_string(n) + " nodes has " +
                    std::to_string(n - 1));
  }
}

WeightedTree as_tree(WeightedGraph g) { return WeightedTree(std::move(g)); }

std::vector<NodeId> tree_path(const WeightedTree& t, NodeId i, NodeId j) {
  check_node(t.graph(), i);
  check_node(t.graph(), j);
  RootedTree r = root_at(t, j);
  std::vector<NodeId> path = {i};
  for (NodeId x = i; x != j;) {
    x = r.parent[x];
    path.push_back(x);
  }
  return path;
}

double resistance_distance(const WeightedTree& t, NodeId i, NodeId j) {
  check_node(t.graph(), i);
  check_node(t.graph(), j);
  RootedTree r = root_at(t, j);
  double d = 0.0;
  for (NodeId x = i; x != j; x = r.parent[x]) {
    d += t.resistance(r.parent_edge[x]);
  }
  return d;
}

double resistance_diameter(const WeightedTree& t) {
  auto [far, unused] = farthest_from(t, 0);
  return farthest_from(t, far).second;
}

RevealedState RevealedState::from_labeling(std::size_t node_count,
                                           std::span<const NodeId> nodes,
                                           const Labeling& truth) {
  RevealedState s(node_count);
  for (NodeId v : nodes) s.reveal(v, truth.at(v));
  return s;
}

void RevealedState::reveal(NodeId v, Label y) {
  if (v >= labels_.size()) {
    throw Error(ErrorCode::kInvalidNode,
                "cannot reveal node " + std::to_string(v));
  }
  if (labels_[v] != 0) {
    throw Error(ErrorCode::kAlreadyRevealed,
                "node " + std::to_string(v) + " is already revealed");
  }
  labels_[v] = static_cast<std::int8_t>(y);
  order_.push_back(v);
}

std::optional<Label> RevealedState::find(NodeId v) const {
  if (v >= labels_.size() || labels_[v] == 0) return std::nullopt;
  return static_cast<Label>(labels_[v]);
}

std::uint64_t RevealedState::fingerprint() const {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](std::uint64_t x) {
    h ^= x;
    h *= 1099511628211ULL;
  };
  mix(labels_.size());
  for (NodeId v : order_) {
    mix(v);
    mix(static_cast<std::uint64_t>(labels_[v] + 2));
  }
  return h;
}

}  // namespace shazoo
