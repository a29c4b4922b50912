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

#include <span>
#include <vector>

#include "shazoo/cut.hpp"
#include "shazoo/graph.hpp"
#include "shazoo/types.hpp"

namespace shazoo {

// kSigned computes Delta from frustration cuts and flips the chosen label
// once per negative edge on the path to the query.
enum class PredictionMode { kStandard, kSigned };

inline CutKind cut_kind(PredictionMode mode) {
  return mode == PredictionMode::kSigned ? CutKind::kFrustration
                                         : CutKind::kDisagreement;
}

struct ConnectionNode {
  NodeId node = kNoNode;
  int delta_sign = 0;     // sgn(Delta(node)) in {-1, 0, +1}
  double distance = 0.0;  // resistance distance to the query
  bool flip = false;      // odd number of negative edges on the path (signed)

  friend bool operator==(const ConnectionNode&, const ConnectionNode&) = default;
};

// Hinge structure seen from an unrevealed query q. Forks and hinge nodes are
// those of T^q, the region SHAZOO inspects: the unrevealed component of q
// together with its revealed boundary. All node lists are sorted by id.
struct HingeView {
  NodeId query = kNoNode;
  bool query_is_fork = false;
  std::vector<NodeId> forks;
  std::vector<NodeId> hinge_nodes;   // forks and revealed nodes of T^q
  std::vector<NodeId> hinge_tree;    // H(q)
  std::vector<ConnectionNode> connections;
};

HingeView hinge_structure(const WeightedTree& t, const RevealedState& s,
                          NodeId q,
                          PredictionMode mode = PredictionMode::kStandard);

// Every fork of the tree: unrevealed nodes with at least three incident
// branches that contain a revealed node. Sorted by id.
std::vector<NodeId> find_forks(const WeightedTree& t, const RevealedState& s);

// The SHAZOO rule: among connection nodes of H(q) with nonzero Delta, take
// the one closest to q in resistance distance (ties to the lower id) and
// predict the sign of its Delta; predict -1 when there is none.
Prediction shazoo_predict(const WeightedTree& t, const RevealedState& s,
                          NodeId q,
                          PredictionMode mode = PredictionMode::kStandard);

Label predict_online(const WeightedTree& t, const RevealedState& s, NodeId q);
Label predict_signed(const WeightedTree& t, const RevealedState& s, NodeId q);

struct TraceStep {
  NodeId node = kNoNode;
  Label predicted = Label::kNegative;
  Label truth = Label::kNegative;
  bool mistake = false;
  bool defaulted = false;
};

class MistakeTrace {
 public:
  void record(NodeId node, Label predicted, Label truth, bool defaulted);

  std::span<const TraceStep> steps() const { return steps_; }
  std::size_t size() const { return steps_.size(); }
  std::size_t mistakes() const { return mistakes_; }
  std::size_t defaults() const { return defaults_; }

 private:
  std::vector<TraceStep> steps_;
  std::size_t mistakes_ = 0;
  std::size_t defaults_ = 0;
};

// Throws Error(kNotPermutation) unless `order` is a permutation of the nodes.
void check_permutation(std::span<const NodeId> order, std::size_t n);

// Online protocol: predict each node of `order` in turn, then reveal it.
MistakeTrace run_online(const WeightedTree& t, const Labeling& truth,
                        std::span<const NodeId> order,
                        PredictionMode mode = PredictionMode::kStandard);

// Train/test prediction in time linear in |V|. Agrees node by node with
// shazoo_predict at the state where exactly the training labels are known.
// Throws Error(kTrainTestOverlap) if a test node is revealed in `train`.
std::vector<Prediction> predict_batch(
    const WeightedTree& t, const RevealedState& train,
    std::span<const NodeId> test,
    PredictionMode mode = PredictionMode::kStandard);

}  // namespace shazoo
