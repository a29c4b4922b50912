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

#include "shazoo/cut.hpp"

#include <string>

#include "shazoo/error.hpp"
#include "traversal.hpp"

namespace shazoo {
namespace internal {

LocalIds& scratch_ids(std::size_t n, Scratch slot) {
  thread_local LocalIds cut_ids;
  thread_local LocalIds hinge_ids;
  LocalIds& ids = slot == Scratch::kCut ? cut_ids : hinge_ids;
  ids.prepare(n);
  return ids;
}

Region explore_region(const WeightedTree& t, const RevealedState& s,
                      NodeId root, LocalIds& ids) {
  Region r;
  r.nodes.push_back(root);
  r.parent.push_back(kNoLocal);
  r.parent_edge.push_back(0);
  ids.assign(root, 0);
  for (std::size_t head = 0; head < r.nodes.size(); ++head) {
    const NodeId x = r.nodes[head];
    for (const Incidence& inc : t.neighbors(x)) {
      if (s.is_revealed(inc.node) || ids[inc.node] != kNoLocal) continue;
      ids.assign(inc.node, static_cast<std::uint32_t>(r.nodes.size()));
      r.nodes.push_back(inc.node);
      r.parent.push_back(static_cast<std::uint32_t>(head));
      r.parent_edge.push_back(inc.edge);
    }
  }
  return r;
}

std::vector<CutPair> subtree_cuts(const WeightedTree& t, const RevealedState& s,
                                  const Region& region, const LocalIds& ids,
                                  CutKind kind) {
  const std::size_t m = region.nodes.size();
  std::vector<CutPair> down(m);
  for (std::size_t k = m; k-- > 0;) {
    const NodeId x = region.nodes[k];
    const std::uint32_t parent = region.parent[k];
    CutPair acc;
    for (const Incidence& inc : t.neighbors(x)) {
      const double w = t.weight(inc.edge);
      if (auto y = s.find(inc.node)) {
        acc.minus += edge_cost(kind, w, *y == Label::kNegative);
        acc.plus += edge_cost(kind, w, *y == Label::kPositive);
        continue;
      }
      const std::uint32_t child = ids[inc.node];
      if (child == parent) continue;
      acc.minus += child_message(down[child], w, Label::kNegative, kind);
      acc.plus += child_message(down[child], w, Label::kPositive, kind);
    }
    down[k] = acc;
  }
  return down;
}

}  // namespace internal

namespace {

void require_signed(const WeightedTree& t) {
  if (!t.signed_mode()) {
    throw Error(ErrorCode::kSignedModeRequired,
                "frustration cuts need a tree in signed mode");
  }
}

}  // namespace

CutPair cut_pair(const WeightedTree& t, const RevealedState& s, NodeId v,
                 CutKind kind) {
  if (v >= t.node_count()) {
    throw Error(ErrorCode::kInvalidNode, "node " + std::to_string(v));
  }
  if (s.is_revealed(v)) {
    throw Error(ErrorCode::kRevealedQuery,
                "node " + std::to_string(v) + " is already revealed");
  }
  internal::LocalIds& ids = internal::scratch_ids(t.node_count());
  internal::Region region = internal::explore_region(t, s, v, ids);
  CutPair root = internal::subtree_cuts(t, s, region, ids, kind).front();
  ids.release(region.nodes);
  return root;
}

double cut_value(const WeightedTree& t, const RevealedState& s, NodeId v,
                 Label y) {
  return cut_pair(t, s, v, CutKind::kDisagreement).at(y);
}

double fcut_value(const WeightedTree& t, const RevealedState& s, NodeId v,
                  Label y) {
  require_signed(t);
  return cut_pair(t, s, v, CutKind::kFrustration).at(y);
}

double delta(const WeightedTree& t, const RevealedState& s, NodeId v,
             CutKind kind) {
  if (kind == CutKind::kFrustration) require_signed(t);
  if (auto y = s.find(v)) return to_int(*y);
  return cut_pair(t, s, v, kind).delta();
}

CutTable batch_cut_all(const WeightedTree& t, const RevealedState& s,
                       CutKind kind) {
  if (kind == CutKind::kFrustration) require_signed(t);
  const std::size_t n = t.node_count();
  std::vector<CutPair> full(n);
  std::vector<std::uint8_t> present(n, 0);
  internal::LocalIds ids;
  ids.prepare(n);
  for (NodeId root = 0; root < n; ++root) {
    if (s.is_revealed(root) || present[root]) continue;
    internal::Region region = internal::explore_region(t, s, root, ids);
    std::vector<CutPair> down = internal::subtree_cuts(t, s, region, ids, kind);

    // Rerooting: Phi^x_p(y) = Phi^p_p(y) - min_y'(Phi^p_x(y') + cost), so
    // each node's full value follows from its parent's in constant time.
    full[region.nodes[0]] = down[0];
    present[region.nodes[0]] = 1;
    for (std::size_t k = 1; k < region.nodes.size(); ++k) {
      const NodeId x = region.nodes[k];
      const NodeId p = region.nodes[region.parent[k]];
      const double w = t.weight(region.parent_edge[k]);
      const CutPair& parent_full = full[p];
      const CutPair up{
          parent_full.minus -
              internal::child_message(down[k], w, Label::kNegative, kind),
          parent_full.plus -
              internal::child_message(down[k], w, Label::kPositive, kind)};
      full[x] = {down[k].minus +
                     internal::child_message(up, w, Label::kNegative, kind),
                 down[k].plus +
                     internal::child_message(up, w, Label::kPositive, kind)};
      present[x] = 1;
    }
  }
  return CutTable(std::move(full), std::move(present), s.fingerprint());
}

}  // namespace shazoo
