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

#include <Eigen/Dense>

#include <vector>

#include "shazoo/graph.hpp"

namespace shazoo::testing {

// Harmonic extension of the training labels by a dense LU solve. Nodes in
// components without training labels get 0.
inline std::vector<double> harmonic_direct(const WeightedGraph& g,
                                           const RevealedState& train) {
  const std::size_t n = g.node_count();
  Components comp = connected_components(g);
  std::vector<char> anchored(comp.count, 0);
  for (NodeId v = 0; v < n; ++v) {
    if (train.is_revealed(v)) anchored[comp.component_of[v]] = 1;
  }
  std::vector<long> index(n, -1);
  std::vector<NodeId> free;
  for (NodeId v = 0; v < n; ++v) {
    if (!train.is_revealed(v) && anchored[comp.component_of[v]]) {
      index[v] = static_cast<long>(free.size());
      free.push_back(v);
    }
  }
  std::vector<double> out(n, 0.0);
  for (NodeId v = 0; v < n; ++v) {
    if (train.is_revealed(v)) out[v] = to_int(train.label(v));
  }
  if (free.empty()) return out;
  const long m = static_cast<long>(free.size());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, m);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(m);
  for (const Edge& e : g.edges()) {
    for (auto [i, j] : {std::pair{e.u, e.v}, std::pair{e.v, e.u}}) {
      if (index[i] < 0) continue;
      a(index[i], index[i]) += e.weight;
      if (index[j] >= 0) {
        a(index[i], index[j]) -= e.weight;
      } else if (train.is_revealed(j)) {
        b(index[i]) += e.weight * to_int(train.label(j));
      }
    }
  }
  Eigen::VectorXd x = a.partialPivLu().solve(b);
  for (long k = 0; k < m; ++k) out[free[static_cast<std::size_t>(k)]] = x(k);
  return out;
}

}  // namespace shazoo::testing
