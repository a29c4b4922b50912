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
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "shazoo/bound_audit.hpp"
#include "shazoo/graph.hpp"
#include "shazoo/rng.hpp"
#include "shazoo/spanning.hpp"
#include "shazoo/types.hpp"

namespace shazoo {

// Dense row-major feature vectors, one row per node.
class FeatureMatrix {
 public:
  FeatureMatrix() = default;
  // Throws Error(kInvalidArgument) on ragged rows or non-finite entries.
  explicit FeatureMatrix(const std::vector<std::vector<double>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t dim() const { return dim_; }
  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * dim_, dim_};
  }

 private:
  std::size_t rows_ = 0;
  std::size_t dim_ = 0;
  std::vector<double> data_;
};

// Comma-separated reals, one row per node; '#' lines are skipped.
FeatureMatrix load_feature_csv(std::istream& in);

// Symmetrized k-nearest-neighbor graph (edge when either endpoint is among
// the other's k nearest, ties to the lower index) with Gaussian weights
// exp(-|x_i - x_j|^2 / s_ij), s_ij = (s_i + s_j) / 2, where s_i is the mean
// squared distance from i to its k nearest neighbors. Weights that would
// underflow are clamped to the smallest normal double.
// Throws Error(kDegenerateSigma) when some s_ij is 0.
WeightedGraph knn_graph(const FeatureMatrix& x, std::size_t k);

struct Split {
  std::vector<NodeId> train;  // sorted
  std::vector<NodeId> test;   // sorted
};

// Uniform subset of round(fraction * n) training nodes; the rest are test.
// Throws Error(kEmptySplit) when either side would be empty.
Split make_split(std::size_t n, double train_fraction, Rng& rng);

struct BinaryTask {
  long long class_id = 0;
  Labeling labels;  // +1 on the class, -1 elsewhere
};

// One task per distinct class id, ascending. Throws Error(kSingleClass).
std::vector<BinaryTask> one_vs_all(std::span<const long long> classes);

enum class MetricKind { kErrorRate, kFMeasure };
std::string_view to_string(MetricKind kind);
MetricKind parse_metric(std::string_view text);

// Error rate or F-measure (+1 positive) of predictions against truth.
// Precision with no predicted positives is 0, recall with no actual
// positives is 0, and F is 0 when both are 0. Throws Error(kEmptyTestSet).
double metric(std::span<const Prediction> predictions, const Labeling& truth,
              MetricKind kind);

struct PlantedTree {
  WeightedTree tree;
  Labeling labels;
  std::vector<std::uint32_t> cluster_of;
  CutsizeReport report;
};

// Random tree made of `clusters` connected regions of near-equal size.
// In-cluster edges weigh U[1, 2]; the clusters - 1 edges joining regions
// share `phi_w_budget` equally and always separate opposite labels, so
// Phi = clusters - 1 and Phi^W <= phi_w_budget. Node ids are shuffled.
// Throws Error(kInfeasibleBudget) when the budget cannot fund the joining
// edges.
PlantedTree synth_planted_tree(std::size_t n, std::size_t clusters,
                               double phi_w_budget, Rng& rng);

struct PlantedGraph {
  WeightedGraph graph;
  Labeling labels;
  std::vector<std::uint32_t> cluster_of;
};

struct PlantedGraphOptions {
  std::size_t extra_intra_edges = 0;   // weights U[1, 2]
  std::size_t extra_cross_edges = 0;   // weights U[cross_lo, cross_hi]
  double cross_lo = 0.05;
  double cross_hi = 0.3;
};

// A planted tree plus random extra edges, for experiments that sample
// spanning trees.
PlantedGraph synth_planted_graph(std::size_t n, std::size_t clusters,
                                 double phi_w_budget,
                                 const PlantedGraphOptions& options, Rng& rng);

enum class Algorithm { kShazoo, kWta, kOmv, kLabProp };
std::string_view to_string(Algorithm algorithm);
Algorithm parse_algorithm(std::string_view text);

struct ExperimentConfig {
  Algorithm algorithm = Algorithm::kShazoo;
  int committee = 1;  // odd; > 1 only for SHAZOO and WTA
  TreeKind tree_kind = TreeKind::kRst;
  double train_fraction = 0.1;
  // Fixed training nodes instead of random splits.
  std::optional<std::vector<NodeId>> train_nodes;
  int repetitions = 1;
  std::uint64_t seed = 0;
  bool signed_mode = false;
  MetricKind metric = MetricKind::kErrorRate;

  // Throws Error(kInvalidArgument).
  void validate() const;
};

// A graph with one class id per node. Ids in {-1, +1} form a single binary
// task; anything else is reduced one-vs-all.
struct Dataset {
  WeightedGraph graph;
  std::vector<long long> classes;
};

struct TaskRow {
  int repetition = 0;
  long long task = 0;
  std::uint64_t split_seed = 0;
  std::uint64_t tree_seed = 0;
  std::size_t n_train = 0;
  std::size_t n_test = 0;
  double value = 0.0;
  double default_rate = 0.0;
  bool degenerate = false;  // class absent from the training nodes
};

struct RepetitionRow {
  int repetition = 0;
  std::uint64_t split_seed = 0;
  std::uint64_t tree_seed = 0;
  std::size_t n_train = 0;
  std::size_t n_test = 0;
  double value = 0.0;         // macro average over tasks
  double default_rate = 0.0;  // mean over tasks
};

struct ExperimentReport {
  ExperimentConfig config;
  std::size_t components = 0;
  std::vector<TaskRow> tasks;
  std::vector<RepetitionRow> repetitions;
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation over repetitions
};

// Per repetition r: split with derive_seed(seed, 2r), sample trees with
// derive_seed(seed, 2r + 1) (component c of the graph uses
// derive_seed(tree_seed, c) as its committee base seed), predict, score.
// Disconnected graphs are processed one component at a time.
ExperimentReport run_experiment(const ExperimentConfig& config,
                                const Dataset& data);

inline constexpr int kExperimentSchemaVersion = 1;

// Commented metadata lines, a header row, one row per task, one per
// repetition, then mean and std rows. Reals use six significant digits.
void write_experiment_csv(std::ostream& out, const ExperimentReport& report,
                          char delimiter = ',');

// Search over small trees with weights in {light_weight, 1} and a single
// light cut edge for the instance where predicting with the unweighted
// mincut sign at the query errs most often relative to SHAZOO.
struct MincutFailure {
  WeightedGraph tree;
  Labeling labels;
  std::vector<NodeId> order;
  std::size_t mincut_mistakes = 0;
  std::size_t shazoo_mistakes = 0;
  CutsizeReport report;
};

std::optional<MincutFailure> search_mincut_failures(std::size_t max_nodes,
                                                    double light_weight,
                                                    std::size_t trials,
                                                    Rng& rng);

}  // namespace shazoo
