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
#include <limits>
#include <vector>

#include "shazoo/cut.hpp"
#include "shazoo/graph.hpp"

namespace shazoo::internal {

inline constexpr std::uint32_t kNoLocal =
    std::numeric_limits<std::uint32_t>::max();

// The unrevealed component containing a root, in breadth-first order.
// Revealed neighbors of region nodes are the leaves of T^root and are not
// listed; they are read off the adjacency lists.
struct Region {
  std::vector<NodeId> nodes;
  std::vector<std::uint32_t> parent;  // local index, kNoLocal for the root
  std::vector<EdgeId> parent_edge;
};

// Maps node ids to positions in a Region. Entries are cleared on release so
// a single instance can be reused across queries on the same thread.
class LocalIds {
 public:
  std::uint32_t operator[](NodeId v) const { return local_[v]; }
  void assign(NodeId v, std::uint32_t i) { local_[v] = i; }
  void prepare(std::size_t n) {
    if (local_.size() < n) local_.resize(n, kNoLocal);
  }
  void release(const std::vector<NodeId>& nodes) {
    for (NodeId v : nodes) local_[v] = kNoLocal;
  }

 private:
  std::vector<std::uint32_t> local_;
};

// Per-thread scratch map sized for `n` nodes, all entries kNoLocal. Distinct
// slots can be held at the same time.
enum class Scratch { kCut, kHinge };
LocalIds& scratch_ids(std::size_t n, Scratch slot = Scratch::kCut);

// Fills `ids` for every node of the region; the caller releases them.
Region explore_region(const WeightedTree& t, const RevealedState& s,
                      NodeId root, LocalIds& ids);

// Upward pass: value of each region node over its own subtree.
std::vector<CutPair> subtree_cuts(const WeightedTree& t, const RevealedState& s,
                                  const Region& region, const LocalIds& ids,
                                  CutKind kind);

// min over y' of (child(y') + cost of the edge when the parent has label y).
inline double child_message(const CutPair& child, double w, Label y,
                            CutKind kind) {
  const double as_minus =
      child.minus + edge_cost(kind, w, y == Label::kNegative);
  const double as_plus = child.plus + edge_cost(kind, w, y == Label::kPositive);
  return as_minus <= as_plus ? as_minus : as_plus;
}

}  // namespace shazoo::internal
