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

#include <cstdint>
#include <numeric>
#include <string_view>
#include <vector>

#include "shazoo/graph.hpp"

namespace shazoo {

enum class TreeKind { kRst, kNwrst, kMst };

std::string_view to_string(TreeKind kind);
// Accepts "rst", "nwrst", "mst" (any case). Throws Error(kInvalidArgument).
TreeKind parse_tree_kind(std::string_view text);

struct TreeSample {
  WeightedTree tree;
  TreeKind kind;
  std::uint64_t seed = 0;
  // Random-walk steps taken by Wilson's algorithm; 0 for MST.
  std::uint64_t walk_steps = 0;
};

// Wilson's loop-erased random walk rooted at node 0. With use_weights the
// walk moves to a neighbor with probability proportional to |W|, giving a
// tree with probability proportional to the product of its weights;
// otherwise neighbors are chosen uniformly. Output edges keep their source
// weights and are listed in source edge-id order.
// Throws Error(kDisconnected).
TreeSample wilson_rst(const WeightedGraph& g, std::uint64_t seed,
                      bool use_weights);

// Spanning tree minimizing the sum of 1/|W|; ties resolved by edge id.
// Throws Error(kDisconnected).
TreeSample mst(const WeightedGraph& g);

TreeSample sample_tree(const WeightedGraph& g, TreeKind kind,
                       std::uint64_t seed);

// A path over tree nodes with one positive weight per consecutive pair.
struct WeightedLine {
  std::vector<NodeId> nodes;
  std::vector<double> weights;
};

// Depth-first visit from `root`, children in ascending id. Consecutive nodes
// that are not adjacent in the tree get the smallest |W| on the tree path
// between them.
WeightedLine dfs_linearize(const WeightedTree& t, NodeId root);

// Union-find with union by size and path halving.
class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  // Returns false when a and b were already joined.
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
};

}  // namespace shazoo
