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

#include <benchmark/benchmark.h>

#include <set>
#include <utility>
#include <vector>

#include "shazoo/baselines.hpp"
#include "shazoo/graph.hpp"
#include "shazoo/predictor.hpp"
#include "shazoo/rng.hpp"
#include "shazoo/spanning.hpp"

namespace {

using namespace shazoo;

// Random recursive tree, weights in [0.5, 2].
WeightedTree recursive_tree(std::size_t n, Rng& rng) {
  std::vector<Edge> edges;
  edges.reserve(n);
  for (NodeId v = 1; v < n; ++v) {
    edges.push_back({static_cast<NodeId>(rng.below(v)), v, rng.uniform(0.5, 2.0)});
  }
  return as_tree(WeightedGraph(n, std::move(edges), false));
}

WeightedTree line_tree(std::size_t n, Rng& rng) {
  std::vector<Edge> edges;
  for (NodeId v = 1; v < n; ++v) edges.push_back({v - 1, v, rng.uniform(0.5, 2.0)});
  return as_tree(WeightedGraph(n, std::move(edges), false));
}

// Recursive tree plus up to `extra` random non-duplicate edges.
WeightedGraph noisy_graph(std::size_t n, std::size_t extra, Rng& rng) {
  std::vector<Edge> edges;
  std::set<std::pair<NodeId, NodeId>> seen;
  for (NodeId v = 1; v < n; ++v) {
    NodeId u = static_cast<NodeId>(rng.below(v));
    seen.emplace(u, v);
    edges.push_back({u, v, rng.uniform(0.5, 2.0)});
  }
  for (std::size_t i = 0; i < extra; ++i) {
    NodeId a = static_cast<NodeId>(rng.below(n));
    NodeId b = static_cast<NodeId>(rng.below(n));
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    if (!seen.emplace(a, b).second) continue;
    edges.push_back({a, b, rng.uniform(0.5, 2.0)});
  }
  return WeightedGraph(n, std::move(edges), false);
}

Labeling block_labels(std::size_t n, std::size_t blocks) {
  Labeling y(n);
  for (std::size_t v = 0; v < n; ++v) {
    y[v] = (v * blocks / n) % 2 ? Label::kPositive : Label::kNegative;
  }
  return y;
}

void BM_Batch(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(7);
  WeightedTree t = recursive_tree(n, rng);
  Labeling y = block_labels(n, 8);
  std::vector<NodeId> perm = random_permutation(n, rng);
  std::vector<NodeId> train(perm.begin(), perm.begin() + n / 10);
  std::vector<NodeId> test(perm.begin() + n / 10, perm.end());
  RevealedState s = RevealedState::from_labeling(n, train, y);
  for (auto _ : state) {
    benchmark::DoNotOptimize(predict_batch(t, s, test));
  }
  state.SetComplexityN(static_cast<benchmark::IterationCount>(n));
}
BENCHMARK(BM_Batch)->RangeMultiplier(4)->Range(1 << 10, 1 << 20)->Complexity();

void BM_OnlineLine(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(11);
  WeightedTree t = line_tree(n, rng);
  Labeling y = block_labels(n, 4);
  std::vector<NodeId> order = random_permutation(n, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_online(t, y, order).mistakes());
  }
  state.SetComplexityN(static_cast<benchmark::IterationCount>(n));
}
BENCHMARK(BM_OnlineLine)->RangeMultiplier(2)->Range(1 << 8, 1 << 11)->Complexity();

void BM_Wilson(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(13);
  WeightedGraph g = noisy_graph(n, n, rng);
  std::uint64_t seed = 0;
  double steps = 0.0;
  for (auto _ : state) {
    TreeSample sample = wilson_rst(g, ++seed, state.range(1) != 0);
    steps += static_cast<double>(sample.walk_steps);
  }
  state.counters["walk_steps"] =
      benchmark::Counter(steps, benchmark::Counter::kAvgIterations);
}
BENCHMARK(BM_Wilson)->ArgsProduct({{1 << 10, 1 << 14, 1 << 17}, {0, 1}});

void BM_Mst(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(17);
  WeightedGraph g = noisy_graph(n, 4 * n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(mst(g).tree.node_count());
}
BENCHMARK(BM_Mst)->Arg(1 << 12)->Arg(1 << 16);

}  // namespace

BENCHMARK_MAIN();
