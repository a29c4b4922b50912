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

#include "shazoo/harness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <map>
#include <numeric>
#include <ostream>
#include <string>

#include "format.hpp"
#include "shazoo/baselines.hpp"
#include "shazoo/error.hpp"
#include "shazoo/predictor.hpp"

namespace shazoo {

namespace {

void require(bool ok, ErrorCode code, const std::string& message) {
  if (!ok) throw Error(code, message);
}

}  // namespace

FeatureMatrix::FeatureMatrix(const std::vector<std::vector<double>>& rows)
    : rows_(rows.size()), dim_(rows.empty() ? 0 : rows.front().size()) {
  data_.reserve(rows_ * dim_);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    require(rows[i].size() == dim_, ErrorCode::kInvalidArgument,
            "feature row " + std::to_string(i) + " has " +
                std::to_string(rows[i].size()) + " entries, expected " +
                std::to_string(dim_));
    for (double x : rows[i]) {
      require(std::isfinite(x), ErrorCode::kInvalidArgument,
              "non-finite feature in row " + std::to_string(i));
      data_.push_back(x);
    }
  }
}

FeatureMatrix load_feature_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    std::vector<double> row;
    std::size_t pos = 0;
    while (pos <= line.size()) {
      std::size_t end = line.find(',', pos);
      if (end == std::string::npos) end = line.size();
      std::size_t b = pos, e = end;
      while (b < e && (line[b] == ' ' || line[b] == '\t')) ++b;
      while (e > b && (line[e - 1] == ' ' || line[e - 1] == '\t')) --e;
      double x = 0.0;
      auto [ptr, ec] = std::from_chars(line.data() + b, line.data() + e, x);
      if (b == e || ec != std::errc() || ptr != line.data() + e) {
        throw Error(ErrorCode::kParse,
                    "bad feature value at line " + std::to_string(line_no));
      }
      if (!std::isfinite(x)) {
        throw Error(ErrorCode::kParse,
                    "non-finite feature at line " + std::to_string(line_no));
      }
      row.push_back(x);
      pos = end + 1;
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw Error(ErrorCode::kParse,
                  "ragged feature row at line " + std::to_string(line_no));
    }
    rows.push_back(std::move(row));
  }
  return FeatureMatrix(rows);
}

WeightedGraph knn_graph(const FeatureMatrix& x, std::size_t k) {
  const std::size_t n = x.rows();
  require(k >= 1 && k < n, ErrorCode::kInvalidArgument,
          "knn needs 1 <= k < n (k=" + std::to_string(k) +
              ", n=" + std::to_string(n) + ")");
  auto sq = [&](std::size_t i, std::size_t j) {
    auto a = x.row(i), b = x.row(j);
    double s = 0.0;
    for (std::size_t d = 0; d < a.size(); ++d) {
      double t = a[d] - b[d];
      s += t * t;
    }
    return s;
  };

  std::vector<double> sigma(n, 0.0);
  std::vector<std::pair<NodeId, NodeId>> pairs;
  pairs.reserve(n * k);
  std::vector<std::pair<double, NodeId>> dist;
  dist.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    dist.clear();
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) dist.emplace_back(sq(i, j), static_cast<NodeId>(j));
    }
    std::partial_sort(dist.begin(), dist.begin() + static_cast<long>(k),
                      dist.end());
    double total = 0.0;
    for (std::size_t r = 0; r < k; ++r) {
      total += dist[r].first;
      NodeId j = dist[r].second;
      NodeId a = static_cast<NodeId>(std::min<std::size_t>(i, j));
      NodeId b = static_cast<NodeId>(std::max<std::size_t>(i, j));
      pairs.emplace_back(a, b);
    }
    sigma[i] = total / static_cast<double>(k);
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

  std::vector<Edge> edges;
  edges.reserve(pairs.size());
  for (auto [a, b] : pairs) {
    double s = 0.5 * (sigma[a] + sigma[b]);
    if (!(s > 0.0)) {
      throw Error(ErrorCode::kDegenerateSigma,
                  "zero kernel width at node " +
                      std::to_string(sigma[a] > 0.0 ? b : a));
    }
    double w = std::exp(-sq(a, b) / s);
    w = std::max(w, std::numeric_limits<double>::min());
    edges.push_back({a, b, w});
  }
  return WeightedGraph(n, std::move(edges));
}

Split make_split(std::size_t n, double train_fraction, Rng& rng) {
  require(train_fraction > 0.0 && train_fraction < 1.0,
          ErrorCode::kInvalidArgument, "train fraction must lie in (0, 1)");
  const auto size = static_cast<std::size_t>(
      std::llround(train_fraction * static_cast<double>(n)));
  if (size == 0 || size >= n) {
    throw Error(ErrorCode::kEmptySplit,
                "train fraction " + internal::format_real(train_fraction) +
                    " on " + std::to_string(n) +
                    " nodes leaves an empty side");
  }
  std::vector<NodeId> perm = random_permutation(n, rng);
  Split split;
  split.train.assign(perm.begin(), perm.begin() + static_cast<long>(size));
  split.test.assign(perm.begin() + static_cast<long>(size), perm.end());
  std::sort(split.train.begin(), split.train.end());
  std::sort(split.test.begin(), split.test.end());
  return split;
}

std::vector<BinaryTask> one_vs_all(std::span<const long long> classes) {
  std::vector<long long> ids(classes.begin(), classes.end());
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  require(ids.size() >= 2, ErrorCode::kSingleClass,
          "one-vs-all needs at least two classes");
  std::vector<BinaryTask> tasks;
  tasks.reserve(ids.size());
  for (long long id : ids) {
    BinaryTask task{id, Labeling(classes.size(), Label::kNegative)};
    for (std::size_t i = 0; i < classes.size(); ++i) {
      if (classes[i] == id) task.labels[i] = Label::kPositive;
    }
    tasks.push_back(std::move(task));
  }
  return tasks;
}

std::string_view to_string(MetricKind kind) {
  return kind == MetricKind::kErrorRate ? "error_rate" : "f_measure";
}

MetricKind parse_metric(std::string_view text) {
  if (text == "error_rate" || text == "error") return MetricKind::kErrorRate;
  if (text == "f_measure" || text == "f") return MetricKind::kFMeasure;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown metric '" + std::string(text) + "'");
}

double metric(std::span<const Prediction> predictions, const Labeling& truth,
              MetricKind kind) {
  require(!predictions.empty(), ErrorCode::kEmptyTestSet, "empty test set");
  std::size_t wrong = 0, tp = 0, fp = 0, fn = 0;
  for (const Prediction& p : predictions) {
    require(p.node < truth.size(), ErrorCode::kInvalidNode,
            "prediction for unknown node " + std::to_string(p.node));
    Label y = truth[p.node];
    if (p.label != y) ++wrong;
    if (p.label == Label::kPositive && y == Label::kPositive) ++tp;
    if (p.label == Label::kPositive && y == Label::kNegative) ++fp;
    if (p.label == Label::kNegative && y == Label::kPositive) ++fn;
  }
  if (kind == MetricKind::kErrorRate) {
    return static_cast<double>(wrong) / static_cast<double>(predictions.size());
  }
  double precision = tp + fp == 0 ? 0.0 : double(tp) / double(tp + fp);
  double recall = tp + fn == 0 ? 0.0 : double(tp) / double(tp + fn);
  if (precision + recall == 0.0) return 0.0;
  return 2.0 * precision * recall / (precision + recall);
}

namespace {

struct Planted {
  std::size_t n = 0;
  std::vector<Edge> edges;
  Labeling labels;
  std::vector<std::uint32_t> cluster_of;
};

// Largest per-edge weight whose running sum over `count` copies stays
// within the budget.
double share_budget(double budget, std::size_t count) {
  double per = budget / static_cast<double>(count);
  auto total = [&](double w) {
    double s = 0.0;
    for (std::size_t i = 0; i < count; ++i) s += w;
    return s;
  };
  while (per > 0.0 && total(per) > budget) per = std::nextafter(per, 0.0);
  return per;
}

Planted plant(std::size_t n, std::size_t clusters, double budget, Rng& rng) {
  require(clusters >= 1 && n >= clusters, ErrorCode::kInvalidArgument,
          "planted tree needs 1 <= clusters <= n");
  double cross = 0.0;
  if (clusters > 1) {
    require(std::isfinite(budget) &&
                budget >= std::numeric_limits<double>::denorm_min() *
                              static_cast<double>(clusters - 1),
            ErrorCode::kInfeasibleBudget,
            "budget " + internal::format_real(budget) + " cannot fund " +
                std::to_string(clusters - 1) + " joining edges");
    cross = share_budget(budget, clusters - 1);
    require(cross > 0.0, ErrorCode::kInfeasibleBudget,
            "budget too small for the joining edges");
  }

  // Near-equal contiguous blocks of provisional ids.
  std::vector<std::size_t> start(clusters + 1, 0);
  for (std::size_t c = 0; c < clusters; ++c) {
    start[c + 1] = start[c] + n / clusters + (c < n % clusters ? 1 : 0);
  }

  std::vector<NodeId> rename = random_permutation(n, rng);
  Planted out;
  out.n = n;
  out.labels.assign(n, Label::kNegative);
  out.cluster_of.assign(n, 0);
  // Cluster c hangs off a random earlier cluster with the opposite label.
  std::vector<Label> cluster_label(clusters);
  std::vector<std::size_t> parent(clusters, 0);
  cluster_label[0] = rng.label();
  for (std::size_t c = 1; c < clusters; ++c) {
    parent[c] = static_cast<std::size_t>(rng.below(c));
    cluster_label[c] = flip(cluster_label[parent[c]]);
  }

  for (std::size_t c = 0; c < clusters; ++c) {
    for (std::size_t i = start[c]; i < start[c + 1]; ++i) {
      out.labels[rename[i]] = cluster_label[c];
      out.cluster_of[rename[i]] = static_cast<std::uint32_t>(c);
      if (i > start[c]) {
        std::size_t j = start[c] + static_cast<std::size_t>(
                                       rng.below(i - start[c]));
        out.edges.push_back({rename[j], rename[i], rng.uniform(1.0, 2.0)});
      }
    }
    if (c > 0) {
      std::size_t p = parent[c];
      std::size_t a = start[p] + static_cast<std::size_t>(
                                     rng.below(start[p + 1] - start[p]));
      std::size_t b = start[c] + static_cast<std::size_t>(
                                     rng.below(start[c + 1] - start[c]));
      out.edges.push_back({rename[a], rename[b], cross});
    }
  }
  return out;
}

}  // namespace

PlantedTree synth_planted_tree(std::size_t n, std::size_t clusters,
                               double phi_w_budget, Rng& rng) {
  Planted p = plant(n, clusters, phi_w_budget, rng);
  WeightedTree tree = as_tree(WeightedGraph(n, std::move(p.edges)));
  CutsizeReport report = cutsize_report(tree, p.labels);
  if (!(report.phi_w <= phi_w_budget) && clusters > 1) {
    throw Error(ErrorCode::kInfeasibleBudget, "planted cut exceeds budget");
  }
  return {std::move(tree), std::move(p.labels), std::move(p.cluster_of),
          report};
}

PlantedGraph synth_planted_graph(std::size_t n, std::size_t clusters,
                                 double phi_w_budget,
                                 const PlantedGraphOptions& options,
                                 Rng& rng) {
  require(options.cross_lo > 0.0 && options.cross_lo <= options.cross_hi,
          ErrorCode::kInvalidArgument, "bad cross-edge weight range");
  Planted p = plant(n, clusters, phi_w_budget, rng);
  std::vector<std::pair<NodeId, NodeId>> seen;
  for (const Edge& e : p.edges) {
    seen.emplace_back(std::min(e.u, e.v), std::max(e.u, e.v));
  }
  std::sort(seen.begin(), seen.end());
  auto add = [&](bool same_cluster, std::size_t count, double lo, double hi) {
    std::size_t added = 0;
    for (std::size_t tries = 0; added < count && tries < 50 * count + 100;
         ++tries) {
      NodeId a = static_cast<NodeId>(rng.below(n));
      NodeId b = static_cast<NodeId>(rng.below(n));
      if (a == b) continue;
      if ((p.cluster_of[a] == p.cluster_of[b]) != same_cluster) continue;
      std::pair<NodeId, NodeId> key{std::min(a, b), std::max(a, b)};
      auto it = std::lower_bound(seen.begin(), seen.end(), key);
      if (it != seen.end() && *it == key) continue;
      seen.insert(it, key);
      p.edges.push_back({key.first, key.second, rng.uniform(lo, hi)});
      ++added;
    }
  };
  add(true, options.extra_intra_edges, 1.0, 2.0);
  if (clusters > 1) {
    add(false, options.extra_cross_edges, options.cross_lo, options.cross_hi);
  }
  return {WeightedGraph(n, std::move(p.edges)), std::move(p.labels),
          std::move(p.cluster_of)};
}

std::string_view to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kShazoo: return "shazoo";
    case Algorithm::kWta: return "wta";
    case Algorithm::kOmv: return "omv";
    case Algorithm::kLabProp: return "labprop";
  }
  return "?";
}

Algorithm parse_algorithm(std::string_view text) {
  if (text == "shazoo") return Algorithm::kShazoo;
  if (text == "wta") return Algorithm::kWta;
  if (text == "omv") return Algorithm::kOmv;
  if (text == "labprop") return Algorithm::kLabProp;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown algorithm '" + std::string(text) + "'");
}

void ExperimentConfig::validate() const {
  require(repetitions >= 1, ErrorCode::kInvalidArgument,
          "repetitions must be >= 1");
  require(committee >= 1 && committee % 2 == 1, ErrorCode::kInvalidArgument,
          "committee size must be odd and positive");
  require(committee == 1 || algorithm == Algorithm::kShazoo ||
              algorithm == Algorithm::kWta,
          ErrorCode::kInvalidArgument,
          "committees apply to shazoo and wta only");
  if (!train_nodes) {
    require(train_fraction > 0.0 && train_fraction < 1.0,
            ErrorCode::kInvalidArgument, "train fraction must lie in (0, 1)");
  }
}

namespace {

struct Part {
  WeightedGraph graph;
  std::vector<NodeId> global;  // local id -> global id
};

std::vector<Part> split_components(const WeightedGraph& g,
                                   std::vector<NodeId>& local_of) {
  Components comp = connected_components(g);
  std::vector<std::vector<NodeId>> members(comp.count);
  local_of.assign(g.node_count(), 0);
  for (NodeId v = 0; v < g.node_count(); ++v) {
    local_of[v] = static_cast<NodeId>(members[comp.component_of[v]].size());
    members[comp.component_of[v]].push_back(v);
  }
  std::vector<std::vector<Edge>> edges(comp.count);
  for (const Edge& e : g.edges()) {
    edges[comp.component_of[e.u]].push_back(
        {local_of[e.u], local_of[e.v], e.weight});
  }
  std::vector<Part> parts;
  parts.reserve(comp.count);
  for (std::size_t c = 0; c < comp.count; ++c) {
    std::size_t size = members[c].size();
    parts.push_back({WeightedGraph(size, std::move(edges[c]), g.signed_mode()),
                     std::move(members[c])});
  }
  return parts;
}

struct Task {
  long long id;
  Labeling labels;
};

std::vector<Task> make_tasks(std::span<const long long> classes) {
  bool binary = std::all_of(classes.begin(), classes.end(),
                            [](long long c) { return c == 1 || c == -1; });
  std::vector<Task> tasks;
  if (binary) {
    Labeling y(classes.size());
    for (std::size_t i = 0; i < classes.size(); ++i) {
      y[i] = classes[i] > 0 ? Label::kPositive : Label::kNegative;
    }
    tasks.push_back({1, std::move(y)});
    return tasks;
  }
  for (BinaryTask& t : one_vs_all(classes)) {
    tasks.push_back({t.class_id, std::move(t.labels)});
  }
  return tasks;
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& config,
                                const Dataset& data) {
  config.validate();
  const WeightedGraph& g = data.graph;
  const std::size_t n = g.node_count();
  require(data.classes.size() == n, ErrorCode::kPartialLabeling,
          "class list covers " + std::to_string(data.classes.size()) +
              " of " + std::to_string(n) + " nodes");
  const PredictionMode mode =
      config.signed_mode ? PredictionMode::kSigned : PredictionMode::kStandard;
  require(!config.signed_mode || g.signed_mode(),
          ErrorCode::kSignedModeRequired, "signed run needs a signed graph");

  std::vector<Task> tasks = make_tasks(data.classes);
  std::vector<NodeId> local_of;
  std::vector<Part> parts = split_components(g, local_of);
  std::vector<NodeId> component_of = connected_components(g).component_of;

  ExperimentReport report;
  report.config = config;
  report.components = parts.size();

  for (int r = 0; r < config.repetitions; ++r) {
    const std::uint64_t rr = static_cast<std::uint64_t>(r);
    const std::uint64_t split_seed = derive_seed(config.seed, 2 * rr);
    const std::uint64_t tree_seed = derive_seed(config.seed, 2 * rr + 1);

    Split split;
    if (config.train_nodes) {
      std::vector<std::uint8_t> in_train(n, 0);
      for (NodeId v : *config.train_nodes) {
        require(v < n, ErrorCode::kInvalidNode,
                "training node " + std::to_string(v) + " out of range");
        in_train[v] = 1;
      }
      for (NodeId v = 0; v < n; ++v) {
        (in_train[v] ? split.train : split.test).push_back(v);
      }
      require(!split.train.empty() && !split.test.empty(),
              ErrorCode::kEmptySplit, "explicit split leaves an empty side");
    } else {
      Rng split_rng(split_seed);
      split = make_split(n, config.train_fraction, split_rng);
    }

    // Disjointness: every node on exactly one side.
    std::vector<std::uint8_t> side(n, 0);
    for (NodeId v : split.train) side[v] |= 1;
    for (NodeId v : split.test) {
      require(!(side[v] & 1), ErrorCode::kTrainTestOverlap,
              "node " + std::to_string(v) + " in both train and test");
      side[v] |= 2;
    }

    RepetitionRow rep{r, split_seed, tree_seed, split.train.size(),
                      split.test.size(), 0.0, 0.0};
    std::vector<double> task_values;

    for (const Task& task : tasks) {
      std::vector<Prediction> predictions;
      predictions.reserve(split.test.size());

      if (config.algorithm == Algorithm::kOmv ||
          config.algorithm == Algorithm::kLabProp) {
        RevealedState train =
            RevealedState::from_labeling(n, split.train, task.labels);
        if (config.algorithm == Algorithm::kOmv) {
          predictions = omv_predict(g, train, split.test);
        } else {
          predictions = labprop_predict(labprop(g, train), split.test);
        }
      } else {
        const TreeAlgorithm algo = config.algorithm == Algorithm::kShazoo
                                       ? TreeAlgorithm::kShazoo
                                       : TreeAlgorithm::kWta;
        std::vector<std::vector<NodeId>> train_local(parts.size());
        std::vector<std::vector<NodeId>> test_local(parts.size());
        for (NodeId v : split.train) {
          train_local[component_of[v]].push_back(local_of[v]);
        }
        for (NodeId v : split.test) {
          test_local[component_of[v]].push_back(local_of[v]);
        }
        for (std::size_t c = 0; c < parts.size(); ++c) {
          if (test_local[c].empty()) continue;
          const Part& part = parts[c];
          Labeling local_truth(part.global.size());
          for (std::size_t i = 0; i < part.global.size(); ++i) {
            local_truth[i] = task.labels[part.global[i]];
          }
          RevealedState train = RevealedState::from_labeling(
              part.global.size(), train_local[c], local_truth);
          CommitteeConfig cc{config.committee, config.tree_kind,
                             derive_seed(tree_seed, c)};
          for (Prediction p : committee_predict(part.graph, train,
                                                test_local[c], cc, algo,
                                                mode)) {
            p.node = part.global[p.node];
            predictions.push_back(p);
          }
        }
        std::sort(predictions.begin(), predictions.end(),
                  [](const Prediction& a, const Prediction& b) {
                    return a.node < b.node;
                  });
      }

      for (const Prediction& p : predictions) {
        require(side[p.node] == 2, ErrorCode::kTrainTestOverlap,
                "prediction scored on a training node");
      }
      std::size_t defaults = 0;
      for (const Prediction& p : predictions) defaults += p.defaulted;
      bool positive_seen = false, negative_seen = false;
      for (NodeId v : split.train) {
        (task.labels[v] == Label::kPositive ? positive_seen : negative_seen) =
            true;
      }

      TaskRow row;
      row.repetition = r;
      row.task = task.id;
      row.split_seed = split_seed;
      row.tree_seed = tree_seed;
      row.n_train = split.train.size();
      row.n_test = split.test.size();
      row.value = metric(predictions, task.labels, config.metric);
      row.default_rate =
          static_cast<double>(defaults) / static_cast<double>(predictions.size());
      row.degenerate = tasks.size() > 1 ? !positive_seen
                                        : !(positive_seen && negative_seen);
      task_values.push_back(row.value);
      rep.default_rate += row.default_rate;
      report.tasks.push_back(row);
    }
    rep.value = std::accumulate(task_values.begin(), task_values.end(), 0.0) /
                static_cast<double>(task_values.size());
    rep.default_rate /= static_cast<double>(task_values.size());
    report.repetitions.push_back(rep);
  }

  const double reps = static_cast<double>(report.repetitions.size());
  double sum = 0.0;
  for (const auto& rep : report.repetitions) sum += rep.value;
  report.mean = sum / reps;
  double ss = 0.0;
  for (const auto& rep : report.repetitions) {
    ss += (rep.value - report.mean) * (rep.value - report.mean);
  }
  report.stddev = reps > 1 ? std::sqrt(ss / (reps - 1)) : 0.0;
  return report;
}

void write_experiment_csv(std::ostream& out, const ExperimentReport& report,
                          char delimiter) {
  using internal::format_real;
  const ExperimentConfig& c = report.config;
  const char d = delimiter;
  out << "# shazoo-experiment schema=" << kExperimentSchemaVersion << '\n';
  out << "# algorithm=" << to_string(c.algorithm)
      << " committee=" << c.committee << " tree_kind=" << to_string(c.tree_kind)
      << " train="
      << (c.train_nodes ? std::string("explicit")
                        : format_real(c.train_fraction))
      << " repetitions=" << c.repetitions << " seed=" << c.seed
      << " signed=" << (c.signed_mode ? 1 : 0)
      << " metric=" << to_string(c.metric) << '\n';
  out << "# components=" << report.components
      << " knn_symmetrization=union split_seed=derive(seed,2r)"
         " tree_seed=derive(seed,2r+1)\n";
  out << "row" << d << "repetition" << d << "task" << d << "split_seed" << d
      << "tree_seed" << d << "n_train" << d << "n_test" << d << "value" << d
      << "default_rate" << d << "degenerate\n";
  for (const TaskRow& t : report.tasks) {
    out << "task" << d << t.repetition << d << t.task << d << t.split_seed
        << d << t.tree_seed << d << t.n_train << d << t.n_test << d
        << format_real(t.value) << d << format_real(t.default_rate) << d
        << (t.degenerate ? 1 : 0) << '\n';
  }
  for (const RepetitionRow& r : report.repetitions) {
    out << "repetition" << d << r.repetition << d << "macro" << d
        << r.split_seed << d << r.tree_seed << d << r.n_train << d
        << r.n_test << d << format_real(r.value) << d
        << format_real(r.default_rate) << d << '\n';
  }
  out << "mean" << d << d << "macro" << d << d << d << d << d
      << format_real(report.mean) << d << d << '\n';
  out << "std" << d << d << "macro" << d << d << d << d << d
      << format_real(report.stddev) << d << d << '\n';
}

std::optional<MincutFailure> search_mincut_failures(std::size_t max_nodes,
                                                    double light_weight,
                                                    std::size_t trials,
                                                    Rng& rng) {
  require(max_nodes >= 3, ErrorCode::kInvalidArgument,
          "search needs at least 3 nodes");
  require(light_weight > 0.0 && std::isfinite(light_weight),
          ErrorCode::kInvalidArgument, "light weight must be positive");
  std::optional<MincutFailure> best;
  long best_gap = 0;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    std::size_t n = 3 + static_cast<std::size_t>(rng.below(max_nodes - 2));
    std::vector<Edge> edges, unit;
    for (NodeId v = 1; v < n; ++v) {
      NodeId u = static_cast<NodeId>(rng.below(v));
      double w = rng.coin() ? light_weight : 1.0;
      edges.push_back({u, v, w});
      unit.push_back({u, v, 1.0});
    }
    // One light edge separates the labels.
    std::vector<std::size_t> light;
    for (std::size_t e = 0; e < edges.size(); ++e) {
      if (edges[e].weight == light_weight) light.push_back(e);
    }
    if (light.empty()) continue;
    std::size_t cut = light[rng.below(light.size())];
    DisjointSets sets(n);
    for (std::size_t e = 0; e < edges.size(); ++e) {
      if (e != cut) sets.unite(edges[e].u, edges[e].v);
    }
    Label side = rng.label();
    Labeling y(n);
    std::size_t anchor = sets.find(edges[cut].u);
    for (NodeId v = 0; v < n; ++v) {
      y[v] = sets.find(v) == anchor ? side : flip(side);
    }

    WeightedTree weighted = as_tree(WeightedGraph(n, edges));
    WeightedTree counted = as_tree(WeightedGraph(n, unit));
    std::vector<NodeId> order = random_permutation(n, rng);

    RevealedState state(n);
    std::size_t mincut_mistakes = 0;
    for (NodeId v : order) {
      Label guess = label_or_default(delta(counted, state, v));
      if (guess != y[v]) ++mincut_mistakes;
      state.reveal(v, y[v]);
    }
    std::size_t shazoo_mistakes = run_online(weighted, y, order).mistakes();
    long gap = static_cast<long>(mincut_mistakes) -
               static_cast<long>(shazoo_mistakes);
    if (gap > best_gap) {
      best_gap = gap;
      CutsizeReport rep = cutsize_report(weighted, y);
      best = MincutFailure{weighted.graph(), y, order, mincut_mistakes,
                           shazoo_mistakes, rep};
    }
  }
  return best;
}

}  // namespace shazoo
