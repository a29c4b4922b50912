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

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "shazoo/graph.hpp"
#include "shazoo/types.hpp"

namespace shazoo {

// Maps external node names to compact ids 0..n-1 in first-appearance order.
class NodeIndex {
 public:
  NodeId intern(std::string_view name);
  std::optional<NodeId> find(std::string_view name) const;
  const std::string& name(NodeId id) const { return names_[id]; }
  std::size_t size() const { return names_.size(); }

  // Identity index "0", "1", ... for graphs built in memory.
  static NodeIndex identity(std::size_t n);

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, NodeId> ids_;
};

struct EdgeListFile {
  WeightedGraph graph;
  NodeIndex index;
};

// Reads "u<TAB>v<TAB>w" lines (any whitespace separates fields). Blank lines
// and lines starting with '#' are skipped. Errors carry the line number.
EdgeListFile load_edge_list(std::istream& in, bool signed_mode = false);

// Writes one "u<TAB>v<TAB>w" line per edge in edge-id order, using the
// names from `index` when given. Weights use round-trip precision.
void write_edge_list(std::ostream& out, const WeightedGraph& g,
                     const NodeIndex* index = nullptr);

// One row of a label file; `value` is either a ±1 label or a class id.
struct LabelRow {
  NodeId node;
  long long value;
};

// Reads "node<TAB>value" lines. Every node must already exist in `index`
// and appear at most once.
std::vector<LabelRow> load_label_file(std::istream& in, const NodeIndex& index);

// Converts rows to a full ±1 labeling; every node must be present.
Labeling to_binary_labeling(std::span<const LabelRow> rows,
                            std::size_t node_count);

}  // namespace shazoo
