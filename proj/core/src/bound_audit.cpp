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

#include "shazoo/bound_audit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>

#include "shazoo/error.hpp"
#include "shazoo/spanning.hpp"
#include "format.hpp"

namespace shazoo {

std::vector<EdgeId> lightest_edges(const WeightedTree& t, double budget) {
  if (!(budget >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "budget must be non-negative");
  }
  const std::size_t m = t.graph().edge_count();
  std::vector<EdgeId> ids(m);
  std::iota(ids.begin(), ids.end(), EdgeId{0});
  std::stable_sort(ids.begin(), ids.end(), [&](EdgeId a, EdgeId b) {
    return std::abs(t.weight(a)) < std::abs(t.weight(b));
  });
  std::vector<EdgeId> chosen;
  double spent = 0.0;
  for (EdgeId e : ids) {
    const double next = spent + std::abs(t.weight(e));
    if (next > budget) break;
    spent = next;
    chosen.push_back(e);
  }
  return chosen;
}

std::size_t xi(const WeightedTree& t, double budget) {
  return lightest_edges(t, budget).size();
}

std::size_t xi(std::span<const double> weights, double budget) {
  if (!(budget >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "budget must be non-negative");
  }
  std::vector<double> sorted;
  sorted.reserve(weights.size());
  for (double w : weights) sorted.push_back(std::abs(w));
  std::sort(sorted.begin(), sorted.end());
  std::size_t count = 0;
  double spent = 0.0;
  for (double w : sorted) {
    if (spent + w > budget) break;
    spent += w;
    ++count;
  }
  return count;
}

CutsizeReport cutsize_report(const WeightedTree& t, const Labeling& labeling) {
  if (labeling.size() != t.node_count()) {
    throw Error(ErrorCode::kPartialLabeling,
                "labeling covers " + std::to_string(labeling.size()) + " of " +
                    std::to_string(t.node_count()) + " nodes");
  }
  CutsizeReport r;
  for (const Edge& e : t.graph().edges()) {
    const bool same = labeling[e.u] == labeling[e.v];
    const bool counted = t.signed_mode() ? (same != (e.weight > 0.0)) : !same;
    if (!counted) continue;
    ++r.phi;
    r.phi_w += std::abs(e.weight);
  }
  r.xi_of_phi_w = xi(t, r.phi_w);
  r.resistance_diameter = resistance_diameter(t);
  return r;
}

AdversarialInstance adversarial_instance(const WeightedTree& t, double budget,
                                         Rng& rng) {
  AdversarialInstance inst;
  inst.budget = budget;
  inst.removed_edges = lightest_edges(t, budget);
  std::vector<std::uint8_t> removed(t.graph().edge_count(), 0);
  for (EdgeId e : inst.removed_edges) removed[e] = 1;

  const std::size_t n = t.node_count();
  DisjointSets sets(n);
  for (EdgeId e = 0; e < t.graph().edge_count(); ++e) {
    if (!removed[e]) sets.unite(t.edge(e).u, t.edge(e).v);
  }
  // One coin per component, drawn in order of each component's smallest node.
  std::vector<std::int8_t> component_label(n, 0);
  inst.labeling.resize(n);
  for (NodeId v = 0; v < n; ++v) {
    const std::size_t root = sets.find(v);
    if (component_label[root] == 0) {
      component_label[root] = static_cast<std::int8_t>(to_int(rng.label()));
      ++inst.components;
    }
    inst.labeling[v] = static_cast<Label>(component_label[root]);
  }
  return inst;
}

BoundGap bound_gap_report(const MistakeTrace& trace,
                          const CutsizeReport& report, std::size_t edge_count) {
  BoundGap gap;
  gap.mistakes = trace.mistakes();
  gap.defaults = 0;
  for (const TraceStep& step : trace.steps()) {
    if (step.defaulted && step.mistake) ++gap.defaults;
  }
  const double xi_value = static_cast<double>(report.xi_of_phi_w);
  gap.lower_proxy = xi_value / 2.0;
  gap.upper_proxy =
      xi_value * (1.0 + std::log(1.0 + report.phi_w * report.resistance_diameter));
  const double inf = std::numeric_limits<double>::infinity();
  const double m = static_cast<double>(gap.mistakes);
  gap.lower_ratio = gap.lower_proxy > 0.0 ? m / gap.lower_proxy : (m > 0 ? inf : 0.0);
  gap.upper_ratio = gap.upper_proxy > 0.0 ? m / gap.upper_proxy : (m > 0 ? inf : 0.0);
  gap.saturated = edge_count > 0 && report.xi_of_phi_w == edge_count;
  return gap;
}

void write_bound_csv(std::ostream& out, std::span<const BoundRow> rows,
                     char delimiter) {
  const char d = delimiter;
  out << "tree_id" << d << "n" << d << "phi" << d << "phi_w" << d << "xi_phi_w"
      << d << "mistakes" << d << "lower_proxy" << d << "upper_proxy" << '\n';
  for (const BoundRow& row : rows) {
    out << row.tree_id << d << row.n << d << row.report.phi << d
        << internal::format_real(row.report.phi_w) << d
        << row.report.xi_of_phi_w << d << row.gap.mistakes << d
        << internal::format_real(row.gap.lower_proxy) << d
        << internal::format_real(row.gap.upper_proxy) << '\n';
  }
}

}  // namespace shazoo
