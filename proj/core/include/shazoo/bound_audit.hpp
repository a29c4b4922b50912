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

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "shazoo/graph.hpp"
#include "shazoo/predictor.hpp"
#include "shazoo/rng.hpp"
#include "shazoo/types.hpp"

namespace shazoo {

// Largest number of edges whose |W| sum to at most `budget`: the lightest
// edges, taken greedily.
std::size_t xi(const WeightedTree& t, double budget);
std::size_t xi(std::span<const double> weights, double budget);

// Edge ids chosen by the greedy behind xi, lightest first, ties by edge id.
std::vector<EdgeId> lightest_edges(const WeightedTree& t, double budget);

struct CutsizeReport {
  std::size_t phi = 0;         // number of cut (or frustrated) edges
  double phi_w = 0.0;          // their total |W|
  std::size_t xi_of_phi_w = 0;
  double resistance_diameter = 0.0;
};

// In signed mode an edge counts when it is frustrated, otherwise when its
// endpoints disagree. Throws Error(kPartialLabeling).
CutsizeReport cutsize_report(const WeightedTree& t, const Labeling& labeling);

struct AdversarialInstance {
  Labeling labeling;
  std::vector<EdgeId> removed_edges;
  double budget = 0.0;
  std::size_t components = 0;
};

// Removes the xi(budget) lightest edges and gives every remaining component
// an independent fair coin as its label. Any online learner errs with
// probability 1/2 on the first node it sees in each component.
AdversarialInstance adversarial_instance(const WeightedTree& t, double budget,
                                         Rng& rng);

// Mistakes against the lower proxy xi(Phi^W)/2 and the PROXY upper term
// xi(Phi^W) * (1 + ln(1 + Phi^W * D)), D the resistance diameter. The upper
// term is a stand-in for the per-line bound and is labeled as such.
struct BoundGap {
  std::size_t mistakes = 0;
  double lower_proxy = 0.0;
  double upper_proxy = 0.0;
  double lower_ratio = 0.0;  // mistakes / lower_proxy, inf when lower is 0
  double upper_ratio = 0.0;  // mistakes / upper_proxy, inf when upper is 0
  // Every edge fits in the budget: the adversary already controls the
  // whole tree and upper and lower proxies only differ by the log factor.
  bool saturated = false;
  std::size_t defaults = 0;  // mistakes spent on the -1 default branch
};

BoundGap bound_gap_report(const MistakeTrace& trace,
                          const CutsizeReport& report, std::size_t edge_count);

struct BoundRow {
  std::string tree_id;
  std::size_t n = 0;
  CutsizeReport report;
  BoundGap gap;
};

// CSV with header tree_id,n,phi,phi_w,xi_phi_w,mistakes,lower_proxy,upper_proxy.
void write_bound_csv(std::ostream& out, std::span<const BoundRow> rows,
                     char delimiter = ',');

}  // namespace shazoo
