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

#include "shazoo/baselines.hpp"

#include <algorithm>
#include <numeric>
#include <cmath>
#include <string>

#include "shazoo/error.hpp"

namespace shazoo {
namespace {

void check_test_nodes(std::size_t n, const RevealedState& train,
                      std::span<const NodeId> test) {
  for (NodeId v : test) {
    if (v >= n) throw Error(ErrorCode::kInvalidNode, "test node " + std::to_string(v));
    if (train.is_revealed(v)) {
      throw Error(ErrorCode::kTrainTestOverlap,
                  "test node " + std::to_string(v) + " is in the training set");
    }
  }
}

Prediction vote(const WeightedGraph& g, const RevealedState& known, NodeId v) {
  double sum = 0.0;
  for (const Incidence& inc : g.neighbors(v)) {
    if (auto y = known.find(inc.node)) sum += to_int(*y) * g.weight(inc.edge);
  }
  return {v, label_or_default(sum), sum == 0.0};
}

}  // namespace

MistakeTrace omv_run(const WeightedGraph& g, const Labeling& truth,
                     std::span<const NodeId> order) {
  const std::size_t n = g.node_count();
  if (truth.size() != n) {
    throw Error(ErrorCode::kPartialLabeling, "labeling size mismatch");
  }
  check_permutation(order, n);
  RevealedState state(n);
  MistakeTrace trace;
  for (NodeId v : order) {
    Prediction p = vote(g, state, v);
    trace.record(v, p.label, truth[v], p.defaulted);
    state.reveal(v, truth[v]);
  }
  return trace;
}

std::vector<Prediction> omv_predict(const WeightedGraph& g,
                                    const RevealedState& train,
                                    std::span<const NodeId> test) {
  check_test_nodes(g.node_count(), train, test);
  std::vector<Prediction> out;
  out.reserve(test.size());
  for (NodeId v : test) out.push_back(vote(g, train, v));
  return out;
}

LabPropResult labprop(const WeightedGraph& g, const RevealedState& train,
                      const LabPropOptions& options) {
  const std::size_t n = g.node_count();
  for (const Edge& e : g.edges()) {
    if (e.weight <= 0.0) {
      throw Error(ErrorCode::kNegativeWeight,
                  "label propagation needs positive weights");
    }
  }
  LabPropResult result;
  result.values.assign(n, 0.0);
  if (train.revealed_count() == 0) {
    result.no_training_labels = true;
    result.unanchored_nodes = n;
    result.converged = true;
    return result;
  }

  // Free nodes reachable from some training node; the rest stay at 0.
  std::vector<std::uint8_t> anchored(n, 0);
  std::vector<NodeId> stack(train.order().begin(), train.order().end());
  for (NodeId v : stack) anchored[v] = 1;
  while (!stack.empty()) {
    NodeId x = stack.back();
    stack.pop_back();
    for (const Incidence& inc : g.neighbors(x)) {
      if (anchored[inc.node]) continue;
      anchored[inc.node] = 1;
      stack.push_back(inc.node);
    }
  }
  std::vector<NodeId> free_nodes;
  for (NodeId v = 0; v < n; ++v) {
    if (auto y = train.find(v)) {
      result.values[v] = to_int(*y);
    } else if (anchored[v]) {
      free_nodes.push_back(v);
    } else {
      ++result.unanchored_nodes;
    }
  }

  // Jacobi-preconditioned conjugate gradients on the free block of the
  // Laplacian; training values move to the right-hand side.
  const std::size_t m = free_nodes.size();
  std::vector<std::size_t> slot(n, m);
  for (std::size_t i = 0; i < m; ++i) slot[free_nodes[i]] = i;
  std::vector<double> diag(m, 0.0), b(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    for (const Incidence& inc : g.neighbors(free_nodes[i])) {
      const double w = g.weight(inc.edge);
      diag[i] += w;
      if (slot[inc.node] == m) b[i] += w * result.values[inc.node];
    }
  }
  auto apply = [&](const std::vector<double>& p, std::vector<double>& out) {
    for (std::size_t i = 0; i < m; ++i) {
      double acc = diag[i] * p[i];
      for (const Incidence& inc : g.neighbors(free_nodes[i])) {
        if (slot[inc.node] != m) acc -= g.weight(inc.edge) * p[slot[inc.node]];
      }
      out[i] = acc;
    }
  };
  // Max over free nodes of |x_v - weighted mean of neighbors|.
  auto harmonic_residual = [&] {
    double worst = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const NodeId v = free_nodes[i];
      double acc = 0.0;
      for (const Incidence& inc : g.neighbors(v)) {
        acc += g.weight(inc.edge) * result.values[inc.node];
      }
      worst = std::max(worst, std::abs(result.values[v] - acc / diag[i]));
    }
    return worst;
  };

  const std::size_t max_iter =
      options.max_iter > 0 ? options.max_iter
                           : std::max<std::size_t>(1, 10 * n * g.max_degree());
  std::vector<double> x(m, 0.0), r = b, z(m), p(m), ap(m);
  for (std::size_t i = 0; i < m; ++i) z[i] = r[i] / diag[i];
  p = z;
  double rz = std::inner_product(r.begin(), r.end(), z.begin(), 0.0);
  while (m > 0 && result.iterations < max_iter) {
    apply(p, ap);
    const double pap = std::inner_product(p.begin(), p.end(), ap.begin(), 0.0);
    if (pap > 0.0) {
      const double alpha = rz / pap;
      for (std::size_t i = 0; i < m; ++i) {
        x[i] += alpha * p[i];
        r[i] -= alpha * ap[i];
      }
    }
    ++result.iterations;
    for (std::size_t i = 0; i < m; ++i) result.values[free_nodes[i]] = x[i];
    result.max_residual = harmonic_residual();
    if (result.max_residual <= options.tol || !(pap > 0.0)) {
      result.converged = result.max_residual <= options.tol;
      break;
    }
    for (std::size_t i = 0; i < m; ++i) z[i] = r[i] / diag[i];
    const double rz_next = std::inner_product(r.begin(), r.end(), z.begin(), 0.0);
    const double beta = rz_next / rz;
    rz = rz_next;
    for (std::size_t i = 0; i < m; ++i) p[i] = z[i] + beta * p[i];
  }
  // Harmonic values lie in [-1, 1]; clip rounding overshoot.
  for (NodeId v : free_nodes) {
    result.values[v] = std::clamp(result.values[v], -1.0, 1.0);
  }
  if (free_nodes.empty()) result.converged = true;
  return result;
}

std::vector<Prediction> labprop_predict(const LabPropResult& result,
                                        std::span<const NodeId> test) {
  std::vector<Prediction> out;
  out.reserve(test.size());
  for (NodeId v : test) {
    const double value = result.values.at(v);
    out.push_back({v, label_or_default(value), value == 0.0});
  }
  return out;
}

std::vector<Prediction> wta_predict(const WeightedLine& line,
                                    const RevealedState& train,
                                    std::span<const NodeId> test) {
  const std::size_t m = line.nodes.size();
  std::vector<std::size_t> position(train.node_count(), m);
  for (std::size_t i = 0; i < m; ++i) position.at(line.nodes[i]) = i;

  // Nearest revealed node on each side, distance accumulated outward from it.
  struct Side {
    double distance = 0.0;
    std::size_t source = 0;
    bool valid = false;
  };
  std::vector<Side> left(m), right(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (train.is_revealed(line.nodes[i])) {
      left[i] = {0.0, i, true};
    } else if (i > 0 && left[i - 1].valid) {
      left[i] = {left[i - 1].distance + 1.0 / line.weights[i - 1],
                 left[i - 1].source, true};
    }
  }
  for (std::size_t i = m; i-- > 0;) {
    if (train.is_revealed(line.nodes[i])) {
      right[i] = {0.0, i, true};
    } else if (i + 1 < m && right[i + 1].valid) {
      right[i] = {right[i + 1].distance + 1.0 / line.weights[i],
                  right[i + 1].source, true};
    }
  }

  std::vector<Prediction> out;
  out.reserve(test.size());
  for (NodeId v : test) {
    const std::size_t i = v < position.size() ? position[v] : m;
    if (i == m) {
      throw Error(ErrorCode::kInvalidNode,
                  "test node " + std::to_string(v) + " is not on the line");
    }
    if (train.is_revealed(v)) {
      throw Error(ErrorCode::kTrainTestOverlap,
                  "test node " + std::to_string(v) + " is in the training set");
    }
    const Side* pick = nullptr;
    if (left[i].valid) pick = &left[i];
    if (right[i].valid && (pick == nullptr || right[i].distance < pick->distance)) {
      pick = &right[i];
    }
    if (pick == nullptr) {
      out.push_back({v, Label::kNegative, true});
    } else {
      out.push_back({v, train.label(line.nodes[pick->source]), false});
    }
  }
  return out;
}

Label majority(std::span<const Label> votes) {
  int sum = 0;
  for (Label y : votes) sum += to_int(y);
  return sum > 0 ? Label::kPositive : Label::kNegative;
}

std::vector<Prediction> committee_predict(const WeightedGraph& g,
                                          const RevealedState& train,
                                          std::span<const NodeId> test,
                                          const CommitteeConfig& config,
                                          TreeAlgorithm algorithm,
                                          PredictionMode mode) {
  if (config.k < 1 || config.k % 2 == 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "committee size must be odd, got " + std::to_string(config.k));
  }
  check_test_nodes(g.node_count(), train, test);
  std::vector<int> votes(test.size(), 0);
  std::vector<int> defaults(test.size(), 0);
  for (int member = 0; member < config.k; ++member) {
    TreeSample sample = sample_tree(
        g, config.tree_kind, config.base_seed + static_cast<std::uint64_t>(member));
    std::vector<Prediction> predictions;
    if (algorithm == TreeAlgorithm::kShazoo) {
      predictions = predict_batch(sample.tree, train, test, mode);
    } else {
      predictions = wta_predict(dfs_linearize(sample.tree, 0), train, test);
    }
    for (std::size_t i = 0; i < test.size(); ++i) {
      votes[i] += to_int(predictions[i].label);
      defaults[i] += predictions[i].defaulted ? 1 : 0;
    }
  }
  std::vector<Prediction> out;
  out.reserve(test.size());
  for (std::size_t i = 0; i < test.size(); ++i) {
    out.push_back({test[i], votes[i] > 0 ? Label::kPositive : Label::kNegative,
                   2 * defaults[i] > config.k});
  }
  return out;
}

}  // namespace shazoo
