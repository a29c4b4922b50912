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
#include <vector>

#include "shazoo/graph.hpp"
#include "shazoo/types.hpp"

namespace shazoo {

// Which edges count towards a cut.
//   kDisagreement: edge (i,j) costs |W| when y_i != y_j.
//   kFrustration:  edge (i,j) costs |W| when y_i * y_j != sgn(W).
enum class CutKind { kDisagreement, kFrustration };

// Minimum cut values of a node under both labels.
struct CutPair {
  double minus = 0.0;  // value with the node labeled -1
  double plus = 0.0;   // value with the node labeled +1

  double at(Label y) const { return y == Label::kPositive ? plus : minus; }
  // cut(-1) - cut(+1)
  double delta() const { return minus - plus; }

  friend bool operator==(const CutPair&, const CutPair&) = default;
};

// Cost of edge weight `w` when its endpoints carry equal (`same`) labels.
inline double edge_cost(CutKind kind, double w, bool same) {
  const bool counted = kind == CutKind::kDisagreement ? !same
                                                      : (same != (w > 0.0));
  return counted ? std::abs(w) : 0.0;
}

// Minimum weighted cutsize of T^v consistent with the revealed labels, for
// both labels of v. T^v is the maximal subtree rooted at v with no revealed
// internal node; revealed nodes met on the way are its leaves.
// Throws Error(kRevealedQuery) when v is revealed.
CutPair cut_pair(const WeightedTree& t, const RevealedState& s, NodeId v,
                 CutKind kind = CutKind::kDisagreement);

double cut_value(const WeightedTree& t, const RevealedState& s, NodeId v,
                 Label y);

// Frustration variant; the tree must be in signed mode.
double fcut_value(const WeightedTree& t, const RevealedState& s, NodeId v,
                  Label y);

// cut(v,-1) - cut(v,+1) for unrevealed v, y_v for revealed v. With
// kFrustration the tree must be in signed mode.
double delta(const WeightedTree& t, const RevealedState& s, NodeId v,
             CutKind kind = CutKind::kDisagreement);

// Cut values of every unrevealed node, stamped with the state they were
// computed from.
class CutTable {
 public:
  CutTable() = default;
  CutTable(std::vector<CutPair> values, std::vector<std::uint8_t> present,
           std::uint64_t stamp)
      : values_(std::move(values)), present_(std::move(present)),
        stamp_(stamp) {}

  bool contains(NodeId v) const { return v < present_.size() && present_[v]; }
  const CutPair& at(NodeId v) const { return values_[v]; }
  std::size_t node_count() const { return values_.size(); }
  std::uint64_t stamp() const { return stamp_; }
  bool matches(const RevealedState& s) const {
    return s.fingerprint() == stamp_;
  }

 private:
  std::vector<CutPair> values_;
  std::vector<std::uint8_t> present_;
  std::uint64_t stamp_ = 0;
};

// All-nodes cut values in time linear in |V|: one upward pass per
// unrevealed region, then a top-down rerooting pass in breadth-first order.
CutTable batch_cut_all(const WeightedTree& t, const RevealedState& s,
                       CutKind kind = CutKind::kDisagreement);

}  // namespace shazoo
