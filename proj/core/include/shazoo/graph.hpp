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

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "shazoo/types.hpp"

namespace shazoo {

struct Edge {
  NodeId u = 0;
  NodeId v = 0;
  double weight = 1.0;
};

// One entry of a node's adjacency list.
struct Incidence {
  NodeId node;
  EdgeId edge;
};

// Undirected simple graph on nodes 0..n-1 with nonzero real edge weights.
//
// Without signed mode every weight must be strictly positive. Adjacency
// lists are sorted by neighbor id, which fixes the visiting order of every
// traversal in the library. Immutable after construction.
class WeightedGraph {
 public:
  WeightedGraph() = default;
  WeightedGraph(std::size_t node_count, std::vector<Edge> edges,
                bool signed_mode = false);

  std::size_t node_count() const { return node_count_; }
  std::size_t edge_count() const { return edges_.size(); }
  bool signed_mode() const { return signed_mode_; }

  std::span<const Edge> edges() const { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_[e]; }
  double weight(EdgeId e) const { return edges_[e].weight; }
  // Resistance of an edge, 1/|W|.
  double resistance(EdgeId e) const { return 1.0 / std::abs(edges_[e].weight); }

  std::span<const Incidence> neighbors(NodeId v) const {
    return {incidences_.data() + offsets_[v],
            incidences_.data() + offsets_[v + 1]};
  }
  std::size_t degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }
  std::size_t max_degree() const;

  std::optional<EdgeId> find_edge(NodeId u, NodeId v) const;
  bool contains(NodeId v) const { return v < node_count_; }

 private:
  std::size_t node_count_ = 0;
  bool signed_mode_ = false;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_ = {0};
  std::vector<Incidence> incidences_;
};

// Component id per node plus the number of components.
struct Components {
  std::vector<NodeId> component_of;
  std::size_t count = 0;
};
Components connected_components(const WeightedGraph& g);
bool is_connected(const WeightedGraph& g);

// A connected acyclic WeightedGraph. Construction validates both properties.
class WeightedTree {
 public:
  explicit WeightedTree(WeightedGraph graph);

  const WeightedGraph& graph() const { return graph_; }
  std::size_t node_count() const { return graph_.node_count(); }
  bool signed_mode() const { return graph_.signed_mode(); }
  std::span<const Incidence> neighbors(NodeId v) const {
    return graph_.neighbors(v);
  }
  const Edge& edge(EdgeId e) const { return graph_.edge(e); }
  double weight(EdgeId e) const { return graph_.weight(e); }
  double resistance(EdgeId e) const { return graph_.resistance(e); }

 private:
  WeightedGraph graph_;
};

// Throws Error(kCycleDetected) or Error(kDisconnected). The empty graph is
// rejected as disconnected.
WeightedTree as_tree(WeightedGraph g);

// Nodes of the unique path from i to j, both ends included.
std::vector<NodeId> tree_path(const WeightedTree& t, NodeId i, NodeId j);

// Sum of 1/|W| along the path, accumulated starting from i.
double resistance_distance(const WeightedTree& t, NodeId i, NodeId j);

// Largest resistance distance between any two nodes.
double resistance_diameter(const WeightedTree& t);

// Labels observed so far, in the order they were observed.
class RevealedState {
 public:
  explicit RevealedState(std::size_t node_count = 0)
      : labels_(node_count, 0) {}

  // Builds a state revealing `nodes` with their labels taken from `truth`.
  static RevealedState from_labeling(std::size_t node_count,
                                     std::span<const NodeId> nodes,
                                     const Labeling& truth);

  void reveal(NodeId v, Label y);

  std::size_t node_count() const { return labels_.size(); }
  bool is_revealed(NodeId v) const { return labels_[v] != 0; }
  Label label(NodeId v) const { return static_cast<Label>(labels_[v]); }
  std::optional<Label> find(NodeId v) const;
  std::span<const NodeId> order() const { return order_; }
  std::size_t revealed_count() const { return order_.size(); }

  // Hash of the revealed (node, label) sequence.
  std::uint64_t fingerprint() const;

 private:
  std::vector<std::int8_t> labels_;
  std::vector<NodeId> order_;
};

}  // namespace shazoo
