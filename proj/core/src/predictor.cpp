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

#include "shazoo/predictor.hpp"

#include <algorithm>
#include <string>

#include "shazoo/error.hpp"
#include "traversal.hpp"

namespace shazoo {
namespace {

using internal::kNoLocal;
using internal::LocalIds;
using internal::Region;

void check_query(const WeightedTree& t, const RevealedState& s, NodeId q,
                 PredictionMode mode) {
  if (q >= t.node_count()) {
    throw Error(ErrorCode::kInvalidNode, "query node " + std::to_string(q));
  }
  if (s.node_count() != t.node_count()) {
    throw Error(ErrorCode::kInvalidArgument,
                "revealed state and tree disagree on the node count");
  }
  if (mode == PredictionMode::kSigned && !t.signed_mode()) {
    throw Error(ErrorCode::kSignedModeRequired,
                "signed prediction needs a tree in signed mode");
  }
  if (s.is_revealed(q)) {
    throw Error(ErrorCode::kRevealedQuery,
                "node " + std::to_string(q) + " is already revealed");
  }
}

// Fork flag per region node. A node's branches are its incident edges; a
// branch counts when the part of the tree behind it holds a revealed node.
// Within a region that is the case for a revealed neighbor, for a child
// whose subtree reaches the boundary, and for the parent side whenever some
// boundary edge lies outside the node's own subtree.
std::vector<std::uint8_t> fork_flags(const WeightedTree& t,
                                     const RevealedState& s,
                                     const Region& region, const LocalIds& ids) {
  const std::size_t m = region.nodes.size();
  std::vector<std::uint32_t> below(m, 0);
  std::vector<std::uint32_t> branches(m, 0);
  for (std::size_t k = m; k-- > 0;) {
    for (const Incidence& inc : t.neighbors(region.nodes[k])) {
      if (s.is_revealed(inc.node)) {
        ++below[k];
        ++branches[k];
        continue;
      }
      const std::uint32_t child = ids[inc.node];
      if (child == region.parent[k]) continue;
      below[k] += below[child];
      if (below[child] > 0) ++branches[k];
    }
  }
  const std::uint32_t total = below[0];
  std::vector<std::uint8_t> is_fork(m, 0);
  for (std::size_t k = 0; k < m; ++k) {
    const std::uint32_t up = (k > 0 && total > below[k]) ? 1 : 0;
    is_fork[k] = branches[k] + up >= 3;
  }
  return is_fork;
}

Prediction choose(NodeId q, const std::vector<ConnectionNode>& connections,
                  PredictionMode mode) {
  const ConnectionNode* best = nullptr;
  for (const ConnectionNode& c : connections) {
    if (c.delta_sign == 0) continue;
    if (best == nullptr || c.distance < best->distance ||
        (c.distance == best->distance && c.node < best->node)) {
      best = &c;
    }
  }
  if (best == nullptr) return {q, Label::kNegative, true};
  int sign = best->delta_sign;
  if (mode == PredictionMode::kSigned && best->flip) sign = -sign;
  return {q, sign > 0 ? Label::kPositive : Label::kNegative, false};
}

// Best source seen so far while propagating connection-node labels through
// a hinge tree.
struct Source {
  double distance = 0.0;
  NodeId node = kNoNode;
  int sign = 0;
  bool flip = false;

  bool valid() const { return node != kNoNode; }
  bool better_than(const Source& other) const {
    if (!other.valid()) return valid();
    if (!valid()) return false;
    return distance < other.distance ||
           (distance == other.distance && node < other.node);
  }
  Source extended(double resistance, bool negative_edge) const {
    if (!valid()) return *this;
    return {distance + resistance, node, sign, flip != negative_edge};
  }
};

}  // namespace

std::vector<NodeId> find_forks(const WeightedTree& t, const RevealedState& s) {
  const std::size_t n = t.node_count();
  std::vector<NodeId> forks;
  LocalIds ids;
  ids.prepare(n);
  std::vector<std::uint8_t> seen(n, 0);
  for (NodeId root = 0; root < n; ++root) {
    if (s.is_revealed(root) || seen[root]) continue;
    Region region = internal::explore_region(t, s, root, ids);
    std::vector<std::uint8_t> flags = fork_flags(t, s, region, ids);
    for (std::size_t k = 0; k < region.nodes.size(); ++k) {
      seen[region.nodes[k]] = 1;
      if (flags[k]) forks.push_back(region.nodes[k]);
    }
  }
  std::sort(forks.begin(), forks.end());
  return forks;
}

HingeView hinge_structure(const WeightedTree& t, const RevealedState& s,
                          NodeId q, PredictionMode mode) {
  check_query(t, s, q, mode);
  const CutKind kind = cut_kind(mode);
  LocalIds& ids = internal::scratch_ids(t.node_count(),
                                        internal::Scratch::kHinge);
  Region region = internal::explore_region(t, s, q, ids);
  std::vector<std::uint8_t> is_fork = fork_flags(t, s, region, ids);

  HingeView view;
  view.query = q;
  view.query_is_fork = is_fork[0] != 0;
  for (std::size_t k = 0; k < region.nodes.size(); ++k) {
    const NodeId x = region.nodes[k];
    if (is_fork[k]) {
      view.forks.push_back(x);
      view.hinge_nodes.push_back(x);
    }
    for (const Incidence& inc : t.neighbors(x)) {
      if (s.is_revealed(inc.node)) view.hinge_nodes.push_back(inc.node);
    }
  }
  std::sort(view.forks.begin(), view.forks.end());
  std::sort(view.hinge_nodes.begin(), view.hinge_nodes.end());
  view.hinge_nodes.erase(
      std::unique(view.hinge_nodes.begin(), view.hinge_nodes.end()),
      view.hinge_nodes.end());

  if (view.query_is_fork) {
    view.hinge_tree = {q};
    const double d = cut_pair(t, s, q, kind).delta();
    view.connections.push_back({q, sign_of(d), 0.0, false});
    ids.release(region.nodes);
    return view;
  }

  // H(q): breadth-first from q over non-hinge nodes. `toward_q` holds the
  // local index of the next node on the way back to q.
  std::vector<std::uint32_t> tree_nodes = {0};
  std::vector<std::uint32_t> toward_q(region.nodes.size(), kNoLocal);
  std::vector<EdgeId> toward_q_edge(region.nodes.size(), 0);
  std::vector<std::uint8_t> in_tree(region.nodes.size(), 0);
  in_tree[0] = 1;
  for (std::size_t head = 0; head < tree_nodes.size(); ++head) {
    const std::uint32_t k = tree_nodes[head];
    for (const Incidence& inc : t.neighbors(region.nodes[k])) {
      if (s.is_revealed(inc.node)) continue;
      const std::uint32_t j = ids[inc.node];
      if (is_fork[j] || in_tree[j]) continue;
      in_tree[j] = 1;
      toward_q[j] = k;
      toward_q_edge[j] = inc.edge;
      tree_nodes.push_back(j);
    }
  }

  for (std::uint32_t k : tree_nodes) {
    const NodeId x = region.nodes[k];
    view.hinge_tree.push_back(x);
    for (const Incidence& inc : t.neighbors(x)) {
      int delta_sign = 0;
      if (auto y = s.find(inc.node)) {
        delta_sign = to_int(*y);
      } else if (is_fork[ids[inc.node]]) {
        delta_sign = sign_of(cut_pair(t, s, inc.node, kind).delta());
      } else {
        continue;
      }
      // Accumulate from the connection node towards q.
      double distance = t.resistance(inc.edge);
      bool flip = t.weight(inc.edge) < 0.0;
      for (std::uint32_t j = k; j != 0; j = toward_q[j]) {
        distance += t.resistance(toward_q_edge[j]);
        flip = flip != (t.weight(toward_q_edge[j]) < 0.0);
      }
      view.connections.push_back({inc.node, delta_sign, distance, flip});
    }
  }
  ids.release(region.nodes);
  std::sort(view.hinge_tree.begin(), view.hinge_tree.end());
  std::sort(view.connections.begin(), view.connections.end(),
            [](const ConnectionNode& a, const ConnectionNode& b) {
              return a.node < b.node;
            });
  return view;
}

Prediction shazoo_predict(const WeightedTree& t, const RevealedState& s,
                          NodeId q, PredictionMode mode) {
  HingeView view = hinge_structure(t, s, q, mode);
  return choose(q, view.connections, mode);
}

Label predict_online(const WeightedTree& t, const RevealedState& s, NodeId q) {
  return shazoo_predict(t, s, q, PredictionMode::kStandard).label;
}

Label predict_signed(const WeightedTree& t, const RevealedState& s, NodeId q) {
  return shazoo_predict(t, s, q, PredictionMode::kSigned).label;
}

void MistakeTrace::record(NodeId node, Label predicted, Label truth,
                          bool defaulted) {
  const bool mistake = predicted != truth;
  steps_.push_back({node, predicted, truth, mistake, defaulted});
  mistakes_ += mistake ? 1 : 0;
  defaults_ += defaulted ? 1 : 0;
}

void check_permutation(std::span<const NodeId> order, std::size_t n) {
  if (order.size() != n) {
    throw Error(ErrorCode::kNotPermutation,
                "order has " + std::to_string(order.size()) +
                    " entries for " + std::to_string(n) + " nodes");
  }
  std::vector<std::uint8_t> seen(n, 0);
  for (NodeId v : order) {
    if (v >= n || seen[v]) {
      throw Error(ErrorCode::kNotPermutation,
                  "node " + std::to_string(v) + " is out of range or repeated");
    }
    seen[v] = 1;
  }
}

MistakeTrace run_online(const WeightedTree& t, const Labeling& truth,
                        std::span<const NodeId> order, PredictionMode mode) {
  const std::size_t n = t.node_count();
  if (truth.size() != n) {
    throw Error(ErrorCode::kPartialLabeling,
                "labeling has " + std::to_string(truth.size()) +
                    " entries for " + std::to_string(n) + " nodes");
  }
  check_permutation(order, n);
  RevealedState state(n);
  MistakeTrace trace;
  for (NodeId v : order) {
    Prediction p = shazoo_predict(t, state, v, mode);
    trace.record(v, p.label, truth[v], p.defaulted);
    state.reveal(v, truth[v]);
  }
  return trace;
}

std::vector<Prediction> predict_batch(const WeightedTree& t,
                                      const RevealedState& train,
                                      std::span<const NodeId> test,
                                      PredictionMode mode) {
  const std::size_t n = t.node_count();
  if (train.node_count() != n) {
    throw Error(ErrorCode::kInvalidArgument,
                "training state and tree disagree on the node count");
  }
  if (mode == PredictionMode::kSigned && !t.signed_mode()) {
    throw Error(ErrorCode::kSignedModeRequired,
                "signed prediction needs a tree in signed mode");
  }
  for (NodeId v : test) {
    if (v >= n) throw Error(ErrorCode::kInvalidNode, "test node " + std::to_string(v));
    if (train.is_revealed(v)) {
      throw Error(ErrorCode::kTrainTestOverlap,
                  "test node " + std::to_string(v) + " is in the training set");
    }
  }

  const CutTable cuts = batch_cut_all(t, train, cut_kind(mode));

  // Hinge nodes and the sign of Delta on each of them.
  std::vector<std::uint8_t> hinge(n, 0);
  std::vector<std::int8_t> delta_sign(n, 0);
  {
    LocalIds ids;
    ids.prepare(n);
    std::vector<std::uint8_t> seen(n, 0);
    for (NodeId v = 0; v < n; ++v) {
      if (auto y = train.find(v)) {
        hinge[v] = 1;
        delta_sign[v] = static_cast<std::int8_t>(to_int(*y));
        continue;
      }
      if (seen[v]) continue;
      Region region = internal::explore_region(t, train, v, ids);
      std::vector<std::uint8_t> flags = fork_flags(t, train, region, ids);
      for (std::size_t k = 0; k < region.nodes.size(); ++k) {
        const NodeId x = region.nodes[k];
        seen[x] = 1;
        if (!flags[k]) continue;
        hinge[x] = 1;
        delta_sign[x] = static_cast<std::int8_t>(sign_of(cuts.at(x).delta()));
      }
    }
  }

  // Nearest nonzero-Delta connection node for every non-hinge node: an
  // upward then a downward pass over each hinge tree.
  std::vector<Source> best(n);
  std::vector<std::uint8_t> visited(n, 0);
  std::vector<NodeId> order;
  std::vector<NodeId> parent;
  std::vector<EdgeId> parent_edge;
  for (NodeId root = 0; root < n; ++root) {
    if (hinge[root] || visited[root]) continue;
    order.assign(1, root);
    parent.assign(1, kNoNode);
    parent_edge.assign(1, 0);
    visited[root] = 1;
    for (std::size_t head = 0; head < order.size(); ++head) {
      const NodeId x = order[head];
      for (const Incidence& inc : t.neighbors(x)) {
        if (hinge[inc.node]) {
          if (delta_sign[inc.node] == 0) continue;
          Source own{t.resistance(inc.edge), inc.node, delta_sign[inc.node],
                     t.weight(inc.edge) < 0.0};
          if (own.better_than(best[x])) best[x] = own;
          continue;
        }
        if (visited[inc.node]) continue;
        visited[inc.node] = 1;
        order.push_back(inc.node);
        parent.push_back(x);
        parent_edge.push_back(inc.edge);
      }
    }
    for (std::size_t k = order.size(); k-- > 1;) {
      Source up = best[order[k]].extended(t.resistance(parent_edge[k]),
                                          t.weight(parent_edge[k]) < 0.0);
      if (up.better_than(best[parent[k]])) best[parent[k]] = up;
    }
    for (std::size_t k = 1; k < order.size(); ++k) {
      Source down = best[parent[k]].extended(t.resistance(parent_edge[k]),
                                             t.weight(parent_edge[k]) < 0.0);
      if (down.better_than(best[order[k]])) best[order[k]] = down;
    }
  }

  std::vector<Prediction> out;
  out.reserve(test.size());
  for (NodeId v : test) {
    if (hinge[v]) {
      const int sign = delta_sign[v];
      out.push_back({v, sign > 0 ? Label::kPositive : Label::kNegative,
                     sign == 0});
      continue;
    }
    const Source& src = best[v];
    if (!src.valid()) {
      out.push_back({v, Label::kNegative, true});
      continue;
    }
    int sign = src.sign;
    if (mode == PredictionMode::kSigned && src.flip) sign = -sign;
    out.push_back({v, sign > 0 ? Label::kPositive : Label::kNegative, false});
  }
  return out;
}

}  // namespace shazoo
