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

#include "shazoo/io.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "shazoo/error.hpp"

namespace shazoo {
namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' ||
                               line[i] == '\r' || line[i] == ',')) {
      ++i;
    }
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' &&
           line[i] != '\r' && line[i] != ',') {
      ++i;
    }
    if (i > start) fields.push_back(line.substr(start, i - start));
  }
  return fields;
}

bool skip_line(std::string_view line) {
  std::size_t i = line.find_first_not_of(" \t\r");
  return i == std::string_view::npos || line[i] == '#';
}

std::string at_line(std::size_t line_no) {
  return "line " + std::to_string(line_no);
}

double parse_double(std::string_view text, std::size_t line_no) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error(ErrorCode::kParse,
                at_line(line_no) + ": bad number '" + std::string(text) + "'");
  }
  return value;
}

long long parse_integer(std::string_view text, std::size_t line_no) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  long long value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error(ErrorCode::kParse,
                at_line(line_no) + ": bad label '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

NodeId NodeIndex::intern(std::string_view name) {
  std::string key(name);
  auto it = ids_.find(key);
  if (it != ids_.end()) return it->second;
  const auto id = static_cast<NodeId>(names_.size());
  ids_.emplace(key, id);
  names_.push_back(std::move(key));
  return id;
}

std::optional<NodeId> NodeIndex::find(std::string_view name) const {
  auto it = ids_.find(std::string(name));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

NodeIndex NodeIndex::identity(std::size_t n) {
  NodeIndex index;
  for (std::size_t i = 0; i < n; ++i) index.intern(std::to_string(i));
  return index;
}

EdgeListFile load_edge_list(std::istream& in, bool signed_mode) {
  NodeIndex index;
  std::vector<Edge> edges;
  std::unordered_map<std::uint64_t, std::size_t> first_line;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (skip_line(line)) continue;
    auto fields = split_fields(line);
    if (fields.size() != 3) {
      throw Error(ErrorCode::kParse, at_line(line_no) +
                                         ": expected 'u v w', got " +
                                         std::to_string(fields.size()) +
                                         " fields");
    }
    const NodeId u = index.intern(fields[0]);
    const NodeId v = index.intern(fields[1]);
    const double w = parse_double(fields[2], line_no);
    if (u == v) throw Error(ErrorCode::kSelfLoop, at_line(line_no));
    if (!std::isfinite(w)) throw Error(ErrorCode::kNonFiniteWeight, at_line(line_no));
    if (w == 0.0) throw Error(ErrorCode::kZeroWeight, at_line(line_no));
    if (w < 0.0 && !signed_mode) {
      throw Error(ErrorCode::kNegativeWeight,
                  at_line(line_no) + ": negative weight requires signed mode");
    }
    const std::uint64_t key = (static_cast<std::uint64_t>(std::min(u, v)) << 32) |
                              std::max(u, v);
    auto [it, inserted] = first_line.emplace(key, line_no);
    if (!inserted) {
      throw Error(ErrorCode::kDuplicateEdge,
                  "duplicate edge at " + at_line(line_no) + " (first seen at " +
                      at_line(it->second) + ")");
    }
    edges.push_back({u, v, w});
  }
  WeightedGraph graph(index.size(), std::move(edges), signed_mode);
  return {std::move(graph), std::move(index)};
}

void write_edge_list(std::ostream& out, const WeightedGraph& g,
                     const NodeIndex* index) {
  auto name = [&](NodeId v) {
    return index ? index->name(v) : std::to_string(v);
  };
  std::ostringstream buf;
  buf.precision(17);
  for (const Edge& e : g.edges()) {
    buf << name(e.u) << '\t' << name(e.v) << '\t' << e.weight << '\n';
  }
  out << buf.str();
}

std::vector<LabelRow> load_label_file(std::istream& in, const NodeIndex& index) {
  std::vector<LabelRow> rows;
  std::vector<bool> seen(index.size(), false);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (skip_line(line)) continue;
    auto fields = split_fields(line);
    if (fields.size() != 2) {
      throw Error(ErrorCode::kParse,
                  at_line(line_no) + ": expected 'node label'");
    }
    auto id = index.find(fields[0]);
    if (!id) {
      throw Error(ErrorCode::kInvalidNode, at_line(line_no) + ": unknown node '" +
                                               std::string(fields[0]) + "'");
    }
    if (seen[*id]) {
      throw Error(ErrorCode::kParse, at_line(line_no) + ": node '" +
                                         std::string(fields[0]) +
                                         "' labeled twice");
    }
    seen[*id] = true;
    rows.push_back({*id, parse_integer(fields[1], line_no)});
  }
  return rows;
}

Labeling to_binary_labeling(std::span<const LabelRow> rows,
                            std::size_t node_count) {
  std::vector<std::int8_t> values(node_count, 0);
  for (const LabelRow& row : rows) {
    if (row.value != 1 && row.value != -1) {
      throw Error(ErrorCode::kParse, "label of node " + std::to_string(row.node) +
                                         " is not +1 or -1");
    }
    values[row.node] = static_cast<std::int8_t>(row.value);
  }
  Labeling labels(node_count);
  for (std::size_t v = 0; v < node_count; ++v) {
    if (values[v] == 0) {
      throw Error(ErrorCode::kPartialLabeling,
                  "node " + std::to_string(v) + " has no label");
    }
    labels[v] = static_cast<Label>(values[v]);
  }
  return labels;
}

}  // namespace shazoo
