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
#include <span>
#include <vector>

#include "shazoo/graph.hpp"
#include "shazoo/predictor.hpp"
#include "shazoo/spanning.hpp"
#include "shazoo/types.hpp"

namespace shazoo {

// Online Majority Vote: predict sgn(sum of y_s * W over revealed neighbors),
// -1 on a zero sum.
MistakeTrace omv_run(const WeightedGraph& g, const Labeling& truth,
                     std::span<const NodeId> order);

// Train/test form of OMV: each test node votes over its training neighbors.
std::vector<Prediction> omv_predict(const WeightedGraph& g,
                                    const RevealedState& train,
                                    std::span<const NodeId> test);

struct LabPropOptions {
  double tol = 1e-8;
  // 0 selects 10 * n * max_degree.
  std::size_t max_iter = 0;
};

struct LabPropResult {
  std::vector<double> values;
  std::size_t iterations = 0;
  double max_residual = 0.0;
  bool converged = false;
  // No training labels at all: the harmonic problem is underdetermined and
  // every value is 0.
  bool no_training_labels = false;
  // Nodes whose component has no training label; their value is 0.
  std::size_t unanchored_nodes = 0;
};

// Harmonic solution by preconditioned conjugate gradients: training nodes clamped to their
// labels, every other node equal to the W-weighted mean of its neighbors.
// Stops when the largest residual is <= tol. Requires positive weights.
LabPropResult labprop(const WeightedGraph& g, const RevealedState& train,
                      const LabPropOptions& options = {});

std::vector<Prediction> labprop_predict(const LabPropResult& result,
                                        std::span<const NodeId> test);

// Nearest revealed node along the line in resistance distance; ties go to
// the earlier line position, no revealed node gives -1.
std::vector<Prediction> wta_predict(const WeightedLine& line,
                                    const RevealedState& train,
                                    std::span<const NodeId> test);

struct CommitteeConfig {
  int k = 1;  // odd
  TreeKind tree_kind = TreeKind::kRst;
  std::uint64_t base_seed = 0;
};

enum class TreeAlgorithm { kShazoo, kWta };

// Samples k trees with seeds base_seed .. base_seed + k - 1, predicts on
// each, and returns the per-node majority. A node counts as defaulted when
// most members defaulted on it. Throws Error(kInvalidArgument) for even k.
std::vector<Prediction> committee_predict(
    const WeightedGraph& g, const RevealedState& train,
    std::span<const NodeId> test, const CommitteeConfig& config,
    TreeAlgorithm algorithm,
    PredictionMode mode = PredictionMode::kStandard);

// Majority over an odd number of votes.
Label majority(std::span<const Label> votes);

}  // namespace shazoo
