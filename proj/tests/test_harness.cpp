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

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "shazoo/error.hpp"
#include "shazoo/harness.hpp"
#include "test_util.hpp"

namespace shazoo {
namespace {

constexpr Label kPos = Label::kPositive;
constexpr Label kNeg = Label::kNegative;

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kParse;
}

FeatureMatrix points(std::vector<std::vector<double>> rows) {
  return FeatureMatrix(rows);
}

TEST(Knn, CollinearExample) {
  WeightedGraph g = knn_graph(points({{0.0}, {1.0}, {3.0}}), 1);
  ASSERT_EQ(g.edge_count(), 2u);
  EXPECT_DOUBLE_EQ(g.weight(*g.find_edge(0, 1)), std::exp(-1.0));
  EXPECT_DOUBLE_EQ(g.weight(*g.find_edge(1, 2)), std::exp(-1.6));
  EXPECT_FALSE(g.find_edge(0, 2).has_value());
}

TEST(Knn, DuplicatePointsWithHealthyWidth) {
  WeightedGraph g = knn_graph(points({{0.0}, {0.0}, {1.0}}), 2);
  EXPECT_EQ(g.weight(*g.find_edge(0, 1)), 1.0);
}

TEST(Knn, DegenerateWidth) {
  try {
    knn_graph(points({{0.0}, {0.0}, {5.0}}), 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDegenerateSigma);
    EXPECT_NE(std::string(e.what()).find("node 0"), std::string::npos);
  }
}

TEST(Knn, SymmetricAndBounded) {
  Rng rng(1);
  std::vector<std::vector<double>> rows(120, std::vector<double>(4));
  for (auto& r : rows)
    for (auto& x : r) x = rng.uniform(-1.0, 1.0);
  FeatureMatrix x(rows);
  WeightedGraph g = knn_graph(x, 10);
  for (const Edge& e : g.edges()) {
    EXPECT_GT(e.weight, 0.0);
    EXPECT_LE(e.weight, 1.0);
  }
  // Every node keeps at least its own k nearest.
  for (NodeId v = 0; v < 120; ++v) EXPECT_GE(g.degree(v), 10u);
  EXPECT_THROW(knn_graph(x, 120), Error);
  EXPECT_THROW(knn_graph(x, 0), Error);
}

TEST(Features, CsvParsing) {
  std::istringstream in("# header\n1, 2.5\n-3,4e-1\n");
  FeatureMatrix x = load_feature_csv(in);
  EXPECT_EQ(x.rows(), 2u);
  EXPECT_EQ(x.dim(), 2u);
  EXPECT_EQ(x.row(1)[1], 0.4);
  std::istringstream ragged("1,2\n3\n");
  EXPECT_THROW(load_feature_csv(ragged), Error);
  std::istringstream bad("1,x\n");
  EXPECT_THROW(load_feature_csv(bad), Error);
  EXPECT_THROW(FeatureMatrix({{1.0}, {NAN}}), Error);
}

TEST(Split, Examples) {
  Rng rng(2);
  Split s = make_split(100, 0.25, rng);
  EXPECT_EQ(s.train.size(), 25u);
  EXPECT_EQ(s.test.size(), 75u);
  std::vector<char> seen(100, 0);
  for (NodeId v : s.train) seen[v]++;
  for (NodeId v : s.test) seen[v]++;
  for (char c : seen) EXPECT_EQ(c, 1);

  Rng a(9), b(9);
  EXPECT_EQ(make_split(50, 0.1, a).train, make_split(50, 0.1, b).train);

  Rng c(3);
  EXPECT_EQ(code_of([&] { make_split(4, 0.05, c); }), ErrorCode::kEmptySplit);
  EXPECT_EQ(code_of([&] { make_split(4, 1.0, c); }),
            ErrorCode::kInvalidArgument);
}

TEST(OneVsAll, Examples) {
  std::vector<long long> three{0, 1, 2};
  auto tasks = one_vs_all(three);
  ASSERT_EQ(tasks.size(), 3u);
  EXPECT_EQ(tasks[1].labels, (Labeling{kNeg, kPos, kNeg}));

  std::vector<long long> binary{-1, 1, 1, -1};
  auto pair = one_vs_all(binary);
  ASSERT_EQ(pair.size(), 2u);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(pair[0].labels[i], flip(pair[1].labels[i]));
  }
  std::vector<long long> single{4, 4};
  EXPECT_EQ(code_of([&] { one_vs_all(single); }), ErrorCode::kSingleClass);
}

TEST(Metrics, Examples) {
  Labeling truth{kPos, kPos, kPos, kNeg, kNeg};
  std::vector<Prediction> perfect;
  for (NodeId v = 0; v < 5; ++v) perfect.push_back({v, truth[v], false});
  EXPECT_EQ(metric(perfect, truth, MetricKind::kErrorRate), 0.0);
  EXPECT_EQ(metric(perfect, truth, MetricKind::kFMeasure), 1.0);

  std::vector<Prediction> all_neg;
  for (NodeId v = 0; v < 5; ++v) all_neg.push_back({v, kNeg, false});
  EXPECT_EQ(metric(all_neg, truth, MetricKind::kFMeasure), 0.0);
  EXPECT_EQ(metric(all_neg, truth, MetricKind::kErrorRate), 0.6);

  // 2 TP, 1 FP, 1 FN.
  std::vector<Prediction> mixed{{0, kPos, false}, {1, kPos, false},
                                {2, kNeg, false}, {3, kPos, false},
                                {4, kNeg, false}};
  EXPECT_NEAR(metric(mixed, truth, MetricKind::kFMeasure), 2.0 / 3.0, 1e-15);

  EXPECT_EQ(code_of([&] {
              metric(std::vector<Prediction>{}, truth, MetricKind::kErrorRate);
            }),
            ErrorCode::kEmptyTestSet);
}

TEST(Planted, Examples) {
  Rng rng(4);
  PlantedTree one = synth_planted_tree(50, 1, 0.0, rng);
  EXPECT_EQ(one.report.phi, 0u);
  EXPECT_EQ(one.report.phi_w, 0.0);
  for (Label y : one.labels) EXPECT_EQ(y, one.labels[0]);

  PlantedTree two = synth_planted_tree(100, 2, 0.1, rng);
  EXPECT_EQ(two.report.phi, 1u);
  EXPECT_LE(two.report.phi_w, 0.1);
  EXPECT_EQ(two.tree.node_count(), 100u);
}

TEST(Planted, BudgetAlwaysRespected) {
  Rng rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t clusters = 1 + rng.below(12);
    std::size_t n = clusters + rng.below(60);
    double budget = trial % 3 == 0 ? rng.uniform(0.0, 1.0)
                                   : std::ldexp(rng.uniform(), -static_cast<int>(rng.below(60)));
    PlantedTree p = synth_planted_tree(n, clusters, budget, rng);
    CutsizeReport again = cutsize_report(p.tree, p.labels);
    EXPECT_EQ(again.phi_w, p.report.phi_w);
    EXPECT_LE(p.report.phi_w, budget);
    EXPECT_EQ(p.report.phi, clusters - 1);
    for (const Edge& e : p.tree.graph().edges()) {
      if (p.cluster_of[e.u] == p.cluster_of[e.v]) {
        EXPECT_EQ(p.labels[e.u], p.labels[e.v]);
      }
    }
  }
}

TEST(Planted, Errors) {
  Rng rng(6);
  EXPECT_EQ(code_of([&] { synth_planted_tree(10, 2, 0.0, rng); }),
            ErrorCode::kInfeasibleBudget);
  EXPECT_EQ(code_of([&] {
              synth_planted_tree(10, 3,
                                 std::numeric_limits<double>::denorm_min(), rng);
            }),
            ErrorCode::kInfeasibleBudget);
  EXPECT_EQ(code_of([&] { synth_planted_tree(3, 4, 1.0, rng); }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([&] { synth_planted_tree(3, 0, 1.0, rng); }),
            ErrorCode::kInvalidArgument);
}

TEST(Planted, GraphAddsEdges) {
  Rng rng(7);
  PlantedGraphOptions opt;
  opt.extra_intra_edges = 100;
  opt.extra_cross_edges = 10;
  PlantedGraph g = synth_planted_graph(100, 4, 0.3, opt, rng);
  EXPECT_EQ(g.graph.edge_count(), 99u + 110u);
  EXPECT_TRUE(is_connected(g.graph));
  std::size_t cross = 0;
  for (const Edge& e : g.graph.edges()) {
    if (g.cluster_of[e.u] != g.cluster_of[e.v]) {
      ++cross;
    }
  }
  EXPECT_EQ(cross, 3u + 10u);
}

Dataset planted_dataset(std::size_t n, std::size_t clusters,
                        std::size_t intra, std::uint64_t seed) {
  Rng rng(seed);
  PlantedGraphOptions opt;
  opt.extra_intra_edges = intra;
  opt.extra_cross_edges = n / 20;
  PlantedGraph g = synth_planted_graph(n, clusters, 0.5, opt, rng);
  Dataset d{g.graph, {}};
  for (Label y : g.labels) d.classes.push_back(to_int(y));
  return d;
}

TEST(Experiment, ReproducibleCsv) {
  Dataset d = planted_dataset(150, 3, 150, 1);
  for (Algorithm a : {Algorithm::kShazoo, Algorithm::kWta, Algorithm::kOmv,
                      Algorithm::kLabProp}) {
    ExperimentConfig cfg;
    cfg.algorithm = a;
    cfg.committee = a == Algorithm::kShazoo ? 3 : 1;
    cfg.repetitions = 3;
    cfg.seed = 12;
    std::ostringstream x, y;
    write_experiment_csv(x, run_experiment(cfg, d));
    write_experiment_csv(y, run_experiment(cfg, d));
    EXPECT_EQ(x.str(), y.str());
    EXPECT_NE(x.str().find("# shazoo-experiment schema=1"), std::string::npos);
  }
}

TEST(Experiment, RowsReproduceFromRecordedSeeds) {
  Dataset d = planted_dataset(120, 2, 120, 2);
  ExperimentConfig cfg;
  cfg.repetitions = 4;
  cfg.seed = 99;
  ExperimentReport all = run_experiment(cfg, d);
  // A single-repetition run with the same seed reproduces row 0.
  cfg.repetitions = 1;
  ExperimentReport first = run_experiment(cfg, d);
  EXPECT_EQ(first.tasks[0].value, all.tasks[0].value);
  EXPECT_EQ(first.tasks[0].split_seed, all.tasks[0].split_seed);
  EXPECT_EQ(all.tasks[1].split_seed, derive_seed(99, 2));
  EXPECT_EQ(all.tasks[1].tree_seed, derive_seed(99, 3));
}

TEST(Experiment, MacroAverageAndDegenerateTasks) {
  Rng rng(3);
  PlantedGraphOptions opt;
  opt.extra_intra_edges = 200;
  PlantedGraph g = synth_planted_graph(200, 4, 0.5, opt, rng);
  Dataset d{g.graph, {}};
  for (std::uint32_t c : g.cluster_of) d.classes.push_back(c);
  d.classes[17] = 9;  // a one-node class, usually absent from training
  ExperimentConfig cfg;
  cfg.repetitions = 3;
  cfg.train_fraction = 0.05;
  cfg.metric = MetricKind::kFMeasure;
  ExperimentReport r = run_experiment(cfg, d);
  ASSERT_EQ(r.tasks.size(), 3u * 5u);
  bool degenerate = false;
  for (int rep = 0; rep < 3; ++rep) {
    double sum = 0.0;
    for (std::size_t k = 0; k < 5; ++k) {
      const TaskRow& t = r.tasks[rep * 5 + k];
      EXPECT_EQ(t.repetition, rep);
      sum += t.value;
      degenerate |= t.degenerate;
    }
    EXPECT_DOUBLE_EQ(r.repetitions[rep].value, sum / 5.0);
  }
  EXPECT_TRUE(degenerate);
}

TEST(Experiment, DisconnectedGraphRunsPerComponent) {
  std::vector<Edge> edges;
  for (NodeId v = 1; v < 20; ++v) edges.push_back({v - 1, v, 1.0});
  for (NodeId v = 21; v < 40; ++v) edges.push_back({v - 1, v, 1.0});
  Dataset d{WeightedGraph(40, edges), std::vector<long long>(40, 1)};
  for (NodeId v = 10; v < 30; ++v) d.classes[v] = -1;
  ExperimentConfig cfg;
  cfg.train_fraction = 0.25;
  cfg.repetitions = 2;
  cfg.committee = 3;
  ExperimentReport r = run_experiment(cfg, d);
  EXPECT_EQ(r.components, 2u);
  std::ostringstream out;
  write_experiment_csv(out, r);
  EXPECT_NE(out.str().find("components=2"), std::string::npos);
}

TEST(Experiment, ExplicitSplit) {
  Dataset d = planted_dataset(60, 2, 60, 4);
  ExperimentConfig cfg;
  cfg.train_nodes = std::vector<NodeId>{0, 5, 10, 15, 20, 25};
  ExperimentReport r = run_experiment(cfg, d);
  EXPECT_EQ(r.tasks[0].n_train, 6u);
  EXPECT_EQ(r.tasks[0].n_test, 54u);
}

TEST(Experiment, ConfigErrors) {
  Dataset d = planted_dataset(40, 2, 40, 5);
  ExperimentConfig cfg;
  cfg.repetitions = 0;
  EXPECT_EQ(code_of([&] { run_experiment(cfg, d); }),
            ErrorCode::kInvalidArgument);
  cfg.repetitions = 1;
  cfg.committee = 4;
  EXPECT_EQ(code_of([&] { run_experiment(cfg, d); }),
            ErrorCode::kInvalidArgument);
  cfg.committee = 3;
  cfg.algorithm = Algorithm::kOmv;
  EXPECT_EQ(code_of([&] { run_experiment(cfg, d); }),
            ErrorCode::kInvalidArgument);
  cfg.committee = 1;
  cfg.signed_mode = true;
  EXPECT_EQ(code_of([&] { run_experiment(cfg, d); }),
            ErrorCode::kSignedModeRequired);
  EXPECT_EQ(parse_algorithm("labprop"), Algorithm::kLabProp);
  EXPECT_THROW(parse_algorithm("gpa"), Error);
  EXPECT_THROW(parse_metric("auc"), Error);
}

TEST(Experiment, OmvTrailsLabPropOnDenseClustersWithFewLabels) {
  double omv = 0.0, lp = 0.0;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Dataset d = planted_dataset(400, 4, 1200, 100 + seed);
    ExperimentConfig cfg;
    cfg.train_fraction = 0.05;
    cfg.repetitions = 3;
    cfg.seed = seed;
    cfg.algorithm = Algorithm::kOmv;
    omv += run_experiment(cfg, d).mean;
    cfg.algorithm = Algorithm::kLabProp;
    lp += run_experiment(cfg, d).mean;
  }
  EXPECT_GT(omv, lp);
}

TEST(MincutSearch, FindsInstancesWhereCountsMislead) {
  Rng rng(8);
  auto found = search_mincut_failures(9, 1.0 / 64.0, 3000, rng);
  ASSERT_TRUE(found.has_value());
  EXPECT_GT(found->mincut_mistakes, found->shazoo_mistakes);
  EXPECT_EQ(found->report.phi, 1u);
  EXPECT_EQ(found->order.size(), found->tree.node_count());
}

}  // namespace
}  // namespace shazoo
