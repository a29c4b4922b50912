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

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "shazoo/baselines.hpp"
#include "shazoo/bound_audit.hpp"
#include "shazoo/error.hpp"
#include "shazoo/harness.hpp"
#include "shazoo/io.hpp"
#include "shazoo/predictor.hpp"
#include "shazoo/rng.hpp"
#include "shazoo/spanning.hpp"

namespace {

using namespace shazoo;

constexpr int kExitOk = 0;
constexpr int kExitData = 1;
constexpr int kExitConfig = 2;

struct Globals {
  std::uint64_t seed = 0;
  bool signed_mode = false;
  std::string format = "csv";
  std::string out;

  char delimiter() const { return format == "tsv" ? '\t' : ','; }
};

class DataError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  return in;
}

// Writes to --out when given, stdout otherwise.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw DataError("cannot write '" + path + "'");
    }
  }
  std::ostream& get() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

EdgeListFile read_graph(const std::string& path, bool signed_mode) {
  auto in = open_in(path);
  return load_edge_list(in, signed_mode);
}

std::vector<LabelRow> read_labels(const std::string& path,
                                  const NodeIndex& index) {
  auto in = open_in(path);
  return load_label_file(in, index);
}

PredictionMode mode_of(const Globals& g) {
  return g.signed_mode ? PredictionMode::kSigned : PredictionMode::kStandard;
}

// build-graph ---------------------------------------------------------------

struct BuildGraphArgs {
  std::string features;
  std::size_t k = 10;
};

int build_graph(const Globals& g, const BuildGraphArgs& a) {
  auto in = open_in(a.features);
  FeatureMatrix x = load_feature_csv(in);
  WeightedGraph graph = knn_graph(x, a.k);
  Sink sink(g.out);
  write_edge_list(sink.get(), graph);
  return kExitOk;
}

// sample-tree ---------------------------------------------------------------

struct SampleTreeArgs {
  std::string graph;
  std::string kind = "rst";
};

int sample_tree_cmd(const Globals& g, const SampleTreeArgs& a) {
  EdgeListFile file = read_graph(a.graph, g.signed_mode);
  TreeSample s = sample_tree(file.graph, parse_tree_kind(a.kind), g.seed);
  Sink sink(g.out);
  sink.get() << "# kind=" << to_string(s.kind) << " seed=" << s.seed
             << " walk_steps=" << s.walk_steps << '\n';
  write_edge_list(sink.get(), s.tree.graph(), &file.index);
  return kExitOk;
}

// predict -------------------------------------------------------------------

struct PredictArgs {
  std::string graph;
  std::string train;
  std::string algorithm = "shazoo";
  int committee = 1;
  std::string tree_kind = "rst";
};

int predict_cmd(const Globals& g, const PredictArgs& a) {
  EdgeListFile file = read_graph(a.graph, g.signed_mode);
  const std::size_t n = file.graph.node_count();
  RevealedState train(n);
  for (const LabelRow& row : read_labels(a.train, file.index)) {
    if (row.value != 1 && row.value != -1) {
      throw Error(ErrorCode::kParse, "training labels must be +1 or -1");
    }
    train.reveal(row.node, row.value > 0 ? Label::kPositive : Label::kNegative);
  }
  std::vector<NodeId> test;
  for (NodeId v = 0; v < n; ++v) {
    if (!train.is_revealed(v)) test.push_back(v);
  }
  if (test.empty()) throw Error(ErrorCode::kEmptyTestSet, "no unlabeled nodes");

  const Algorithm algo = parse_algorithm(a.algorithm);
  std::vector<Prediction> out;
  if (algo == Algorithm::kOmv) {
    out = omv_predict(file.graph, train, test);
  } else if (algo == Algorithm::kLabProp) {
    out = labprop_predict(labprop(file.graph, train), test);
  } else {
    if (a.committee < 1 || a.committee % 2 == 0) {
      throw Error(ErrorCode::kInvalidArgument, "committee size must be odd");
    }
    if (!is_connected(file.graph)) {
      throw Error(ErrorCode::kDisconnected,
                  "tree predictors need a connected graph; use 'run' for "
                  "per-component processing");
    }
    CommitteeConfig cc{a.committee, parse_tree_kind(a.tree_kind), g.seed};
    out = committee_predict(file.graph, train, test, cc,
                            algo == Algorithm::kShazoo ? TreeAlgorithm::kShazoo
                                                       : TreeAlgorithm::kWta,
                            mode_of(g));
  }
  Sink sink(g.out);
  const char d = g.delimiter();
  sink.get() << "node" << d << "label" << d << "defaulted\n";
  for (const Prediction& p : out) {
    sink.get() << file.index.name(p.node) << d << to_int(p.label) << d
               << (p.defaulted ? 1 : 0) << '\n';
  }
  return kExitOk;
}

// run -----------------------------------------------------------------------

struct RunArgs {
  std::string graph;
  std::string labels;
  std::string train_file;
  std::string algorithm = "shazoo";
  int committee = 1;
  std::string tree_kind = "rst";
  double train_fraction = 0.1;
  int repetitions = 10;
  std::string metric = "error_rate";
};

int run_cmd(const Globals& g, const RunArgs& a) {
  EdgeListFile file = read_graph(a.graph, g.signed_mode);
  const std::size_t n = file.graph.node_count();
  std::vector<LabelRow> rows = read_labels(a.labels, file.index);
  if (rows.size() != n) {
    throw Error(ErrorCode::kPartialLabeling,
                "label file covers " + std::to_string(rows.size()) + " of " +
                    std::to_string(n) + " nodes");
  }
  Dataset data{file.graph, std::vector<long long>(n, 0)};
  for (const LabelRow& row : rows) data.classes[row.node] = row.value;

  ExperimentConfig cfg;
  cfg.algorithm = parse_algorithm(a.algorithm);
  cfg.committee = a.committee;
  cfg.tree_kind = parse_tree_kind(a.tree_kind);
  cfg.train_fraction = a.train_fraction;
  cfg.repetitions = a.repetitions;
  cfg.seed = g.seed;
  cfg.signed_mode = g.signed_mode;
  cfg.metric = parse_metric(a.metric);
  if (!a.train_file.empty()) {
    std::vector<NodeId> nodes;
    auto in = open_in(a.train_file);
    std::string name;
    while (in >> name) {
      if (name.front() == '#') {
        std::getline(in, name);
        continue;
      }
      auto id = file.index.find(name);
      if (!id) throw Error(ErrorCode::kInvalidNode, "unknown node '" + name + "'");
      nodes.push_back(*id);
    }
    cfg.train_nodes = std::move(nodes);
  }
  ExperimentReport report = run_experiment(cfg, data);
  Sink sink(g.out);
  write_experiment_csv(sink.get(), report, g.delimiter());
  return kExitOk;
}

// adversary -----------------------------------------------------------------

struct AdversaryArgs {
  std::string tree;
  double budget = 0.0;
  int instances = 1000;
};

int adversary_cmd(const Globals& g, const AdversaryArgs& a) {
  if (a.instances < 1) {
    throw Error(ErrorCode::kInvalidArgument, "instances must be >= 1");
  }
  if (!(a.budget >= 0.0) || !std::isfinite(a.budget)) {
    throw Error(ErrorCode::kInvalidArgument, "budget must be finite and >= 0");
  }
  EdgeListFile file = read_graph(a.tree, g.signed_mode);
  WeightedTree tree = as_tree(file.graph);
  Rng rng(g.seed);
  const std::size_t n = tree.node_count();
  double sum = 0.0, sum_sq = 0.0;
  std::size_t xi_value = 0;
  for (int i = 0; i < a.instances; ++i) {
    AdversarialInstance inst = adversarial_instance(tree, a.budget, rng);
    xi_value = inst.removed_edges.size();
    std::vector<NodeId> order = random_permutation(n, rng);
    double m = static_cast<double>(
        run_online(tree, inst.labeling, order, mode_of(g)).mistakes());
    sum += m;
    sum_sq += m * m;
  }
  const double k = a.instances;
  const double mean = sum / k;
  const double var = k > 1 ? std::max(0.0, (sum_sq - k * mean * mean) / (k - 1))
                           : 0.0;
  Sink sink(g.out);
  const char d = g.delimiter();
  sink.get() << "# seed=" << g.seed << '\n';
  sink.get() << "n" << d << "budget" << d << "xi" << d << "instances" << d
             << "mean_mistakes" << d << "std_error" << d << "lower_bound\n";
  sink.get() << n << d << a.budget << d << xi_value << d << a.instances << d
             << mean << d << std::sqrt(var / k) << d
             << (static_cast<double>(xi_value) + 1) / 2 << '\n';
  return kExitOk;
}

// audit ---------------------------------------------------------------------

struct AuditArgs {
  std::string tree;
  std::string labels;
  std::string order;
};

int audit_cmd(const Globals& g, const AuditArgs& a) {
  EdgeListFile file = read_graph(a.tree, g.signed_mode);
  WeightedTree tree = as_tree(file.graph);
  const std::size_t n = tree.node_count();
  Labeling truth = to_binary_labeling(read_labels(a.labels, file.index), n);
  std::vector<NodeId> order;
  if (a.order.empty()) {
    Rng rng(g.seed);
    order = random_permutation(n, rng);
  } else {
    auto in = open_in(a.order);
    std::string name;
    while (in >> name) {
      auto id = file.index.find(name);
      if (!id) throw Error(ErrorCode::kInvalidNode, "unknown node '" + name + "'");
      order.push_back(*id);
    }
  }
  MistakeTrace trace = run_online(tree, truth, order, mode_of(g));
  CutsizeReport report = cutsize_report(tree, truth);
  BoundRow row{a.tree, n, report,
               bound_gap_report(trace, report, tree.graph().edge_count())};
  Sink sink(g.out);
  write_bound_csv(sink.get(), std::span<const BoundRow>(&row, 1),
                  g.delimiter());
  return kExitOk;
}

// synth ---------------------------------------------------------------------

struct SynthArgs {
  std::size_t nodes = 100;
  std::size_t clusters = 2;
  double budget = 0.1;
  std::size_t extra_intra = 0;
  std::size_t extra_cross = 0;
  std::string labels_out;
};

int synth_cmd(const Globals& g, const SynthArgs& a) {
  Rng rng(g.seed);
  Sink sink(g.out);
  Labeling labels;
  if (a.extra_intra == 0 && a.extra_cross == 0) {
    PlantedTree t = synth_planted_tree(a.nodes, a.clusters, a.budget, rng);
    write_edge_list(sink.get(), t.tree.graph());
    labels = std::move(t.labels);
  } else {
    PlantedGraphOptions opt;
    opt.extra_intra_edges = a.extra_intra;
    opt.extra_cross_edges = a.extra_cross;
    PlantedGraph p = synth_planted_graph(a.nodes, a.clusters, a.budget, opt,
                                         rng);
    write_edge_list(sink.get(), p.graph);
    labels = std::move(p.labels);
  }
  if (!a.labels_out.empty()) {
    std::ofstream out(a.labels_out);
    if (!out) throw DataError("cannot write '" + a.labels_out + "'");
    for (NodeId v = 0; v < labels.size(); ++v) {
      out << v << '\t' << to_int(labels[v]) << '\n';
    }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SHAZOO node classification on weighted graphs"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
  app.add_flag("--signed", g.signed_mode, "Signed edge weights");
  app.add_option("--format", g.format, "Report delimiter")
      ->check(CLI::IsMember({"csv", "tsv"}))
      ->capture_default_str();
  app.add_option("--out", g.out, "Output file (default stdout)");

  BuildGraphArgs bg;
  auto* c_bg = app.add_subcommand("build-graph", "kNN graph from features");
  c_bg->add_option("--features", bg.features, "Feature CSV")->required();
  c_bg->add_option("-k,--neighbors", bg.k, "Neighbors")->capture_default_str();

  SampleTreeArgs st;
  auto* c_st = app.add_subcommand("sample-tree", "Spanning tree of a graph");
  c_st->add_option("--graph", st.graph, "Edge list")->required();
  c_st->add_option("--kind", st.kind, "rst, nwrst or mst")
      ->check(CLI::IsMember({"rst", "nwrst", "mst"}))
      ->capture_default_str();

  PredictArgs pr;
  auto* c_pr = app.add_subcommand("predict", "Predict unlabeled nodes");
  c_pr->add_option("--graph", pr.graph, "Edge list")->required();
  c_pr->add_option("--train", pr.train, "Training labels")->required();
  c_pr->add_option("--algorithm", pr.algorithm)
      ->check(CLI::IsMember({"shazoo", "wta", "omv", "labprop"}))
      ->capture_default_str();
  c_pr->add_option("--committee", pr.committee)->capture_default_str();
  c_pr->add_option("--tree-kind", pr.tree_kind)
      ->check(CLI::IsMember({"rst", "nwrst", "mst"}))
      ->capture_default_str();

  RunArgs rn;
  auto* c_rn = app.add_subcommand("run", "Repeated train/test experiment");
  c_rn->add_option("--graph", rn.graph, "Edge list")->required();
  c_rn->add_option("--labels", rn.labels, "Class per node")->required();
  auto* frac = c_rn->add_option("--train-fraction", rn.train_fraction)
                   ->capture_default_str();
  c_rn->add_option("--train-file", rn.train_file, "Fixed training nodes")
      ->excludes(frac);
  c_rn->add_option("--algorithm", rn.algorithm)
      ->check(CLI::IsMember({"shazoo", "wta", "omv", "labprop"}))
      ->capture_default_str();
  c_rn->add_option("--committee", rn.committee)->capture_default_str();
  c_rn->add_option("--tree-kind", rn.tree_kind)
      ->check(CLI::IsMember({"rst", "nwrst", "mst"}))
      ->capture_default_str();
  c_rn->add_option("--repetitions", rn.repetitions)->capture_default_str();
  c_rn->add_option("--metric", rn.metric)
      ->check(CLI::IsMember({"error_rate", "f_measure"}))
      ->capture_default_str();

  AdversaryArgs ad;
  auto* c_ad = app.add_subcommand("adversary", "Lower-bound instances");
  c_ad->add_option("--tree", ad.tree, "Edge list of a tree")->required();
  c_ad->add_option("--budget", ad.budget, "Cut weight budget")->required();
  c_ad->add_option("--instances", ad.instances)->capture_default_str();

  AuditArgs au;
  auto* c_au = app.add_subcommand("audit", "Mistakes against bound proxies");
  c_au->add_option("--tree", au.tree, "Edge list of a tree")->required();
  c_au->add_option("--labels", au.labels, "Label per node")->required();
  c_au->add_option("--order", au.order, "Presentation order (node names)");

  SynthArgs sy;
  auto* c_sy = app.add_subcommand("synth", "Planted-cluster tree or graph");
  c_sy->add_option("--nodes", sy.nodes)->capture_default_str();
  c_sy->add_option("--clusters", sy.clusters)->capture_default_str();
  c_sy->add_option("--budget", sy.budget)->capture_default_str();
  c_sy->add_option("--extra-intra", sy.extra_intra)->capture_default_str();
  c_sy->add_option("--extra-cross", sy.extra_cross)->capture_default_str();
  c_sy->add_option("--labels-out", sy.labels_out, "Label file to write");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*c_bg) return build_graph(g, bg);
    if (*c_st) return sample_tree_cmd(g, st);
    if (*c_pr) return predict_cmd(g, pr);
    if (*c_rn) return run_cmd(g, rn);
    if (*c_ad) return adversary_cmd(g, ad);
    if (*c_au) return audit_cmd(g, au);
    if (*c_sy) return synth_cmd(g, sy);
  } catch (const Error& e) {
    std::cerr << "shazoo: " << e.what() << '\n';
    return is_config_error(e.code()) ? kExitConfig : kExitData;
  } catch (const DataError& e) {
    std::cerr << "shazoo: " << e.what() << '\n';
    return kExitData;
  }
  return kExitConfig;
}
