// pagraph CLI: graph construction and node-classification experiments driven
// by key-value manifests. See README.md for the manifest reference.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "pagraph/data_io.hpp"
#include "pagraph/errors.hpp"
#include "pagraph/experiment.hpp"
#include "pagraph/graph_build.hpp"

namespace {

struct Flags {
  std::string manifest;
  std::string out_dir = "out";
  std::string seed, runs, workers, plots;
  std::string dataset, n, noise, dataset_seed, label_column, delimiter, header,
      standardize, split;
  std::string variant, tree, n0, forest_size, knn_k, epsilon;
  std::string model, epochs, lr, weight_decay, hidden, k, patience, bias,
      momentum;
  std::string sweep_axis, sweep_values;
  std::string truth, methods;
  std::string baseline_k;
};

void add_common_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--manifest", f.manifest, "key-value manifest file");
  cmd->add_option("--out-dir", f.out_dir, "output directory")
      ->capture_default_str();
  cmd->add_option("--seed", f.seed, "base seed (manifest key: seed)");
  cmd->add_option("--runs", f.runs, "runs per cell");
  cmd->add_option("--workers", f.workers, "concurrent runs");
  cmd->add_option("--plots", f.plots, "emit SVG plots (true/false)");
}

void add_dataset_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--dataset", f.dataset,
                  "CSV path or builtin: blobs|two_moons|rings|smile");
  cmd->add_option("--n", f.n, "synthetic node count");
  cmd->add_option("--noise", f.noise, "synthetic noise level");
  cmd->add_option("--dataset-seed", f.dataset_seed, "synthetic generation seed");
  cmd->add_option("--label-column", f.label_column, "CSV label column (name or index)");
  cmd->add_option("--delimiter", f.delimiter, "CSV delimiter");
  cmd->add_option("--header", f.header, "CSV has a header row (true/false)");
  cmd->add_option("--standardize", f.standardize, "z-score features (true/false)");
  cmd->add_option("--split", f.split, "train/valid/test counts, e.g. 50/50/200");
}

void add_graph_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--variant", f.variant,
                  "full|intrinsic|pa-minus-penalty|pa|knn|epsilon");
  cmd->add_option("--tree", f.tree, "pa|rp");
  cmd->add_option("--n0", f.n0, "max points per tree leaf");
  cmd->add_option("--forest-size", f.forest_size, "number of rp trees");
  cmd->add_option("--knn-k", f.knn_k, "k for the knn graph variant");
  cmd->add_option("--epsilon", f.epsilon, "radius for the epsilon graph variant");
}

void add_model_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--model", f.model, "sgc|gcn|both");
  cmd->add_option("--epochs", f.epochs, "training epochs");
  cmd->add_option("--lr", f.lr, "learning rate");
  cmd->add_option("--weight-decay", f.weight_decay, "L2 weight decay");
  cmd->add_option("--hidden", f.hidden, "gcn hidden width");
  cmd->add_option("--k", f.k, "propagation depth K");
  cmd->add_option("--patience", f.patience, "early-stop patience (0 = off)");
  cmd->add_option("--bias", f.bias, "bias terms (true/false)");
  cmd->add_option("--momentum", f.momentum, "optimizer momentum (0 = plain GD)");
}

pagraph::KvConfig build_config(const CLI::App* cmd, const Flags& f,
                               const char* mode) {
  pagraph::KvConfig cfg;
  if (!f.manifest.empty()) cfg = pagraph::KvConfig::parse_file(f.manifest);
  auto override_key = [&](const char* flag, const char* key,
                          const std::string& value) {
    const CLI::Option* opt = cmd->get_option_no_throw(flag);
    if (opt != nullptr && opt->count() > 0) cfg.set(key, value);
  };
  override_key("--seed", "seed", f.seed);
  override_key("--runs", "runs", f.runs);
  override_key("--workers", "workers", f.workers);
  override_key("--plots", "plots", f.plots);
  override_key("--dataset", "dataset.source", f.dataset);
  override_key("--n", "dataset.n", f.n);
  override_key("--noise", "dataset.noise", f.noise);
  override_key("--dataset-seed", "dataset.seed", f.dataset_seed);
  override_key("--label-column", "dataset.label_column", f.label_column);
  override_key("--delimiter", "dataset.delimiter", f.delimiter);
  override_key("--header", "dataset.header", f.header);
  override_key("--standardize", "dataset.standardize", f.standardize);
  override_key("--split", "dataset.split", f.split);
  override_key("--variant", "graph.variant", f.variant);
  override_key("--tree", "graph.tree", f.tree);
  override_key("--n0", "graph.n0", f.n0);
  override_key("--forest-size", "graph.forest_size", f.forest_size);
  override_key("--knn-k", "graph.knn_k", f.knn_k);
  override_key("--epsilon", "graph.epsilon", f.epsilon);
  override_key("--model", "model.kind", f.model);
  override_key("--epochs", "model.epochs", f.epochs);
  override_key("--lr", "model.lr", f.lr);
  override_key("--weight-decay", "model.weight_decay", f.weight_decay);
  override_key("--hidden", "model.hidden", f.hidden);
  override_key("--k", "model.k", f.k);
  override_key("--patience", "model.patience", f.patience);
  override_key("--bias", "model.bias", f.bias);
  override_key("--momentum", "model.momentum", f.momentum);
  override_key("--axis", "sweep.axis", f.sweep_axis);
  override_key("--values", "sweep.values", f.sweep_values);
  override_key("--truth", "compare.truth", f.truth);
  override_key("--methods", "compare.methods", f.methods);
  override_key("--baseline-k", "baseline.k", f.baseline_k);
  cfg.set("mode", mode);
  return cfg;
}

void print_report(const pagraph::ExperimentReport& report,
                  const std::string& out_dir) {
  for (const auto& cell : report.cells)
    std::printf("%-24s mean test accuracy %.4f (std %.4f, %zu runs)\n",
                cell.id.c_str(), cell.mean_accuracy(), cell.std_accuracy(),
                cell.runs.size());
  for (const auto& row : report.confusions)
    std::printf(
        "%-10s tn=%lld fn=%lld fp=%lld tp=%lld removal_rate=%.4f hit_rate=%.4f\n",
        row.method.c_str(), static_cast<long long>(row.confusion.tn),
        static_cast<long long>(row.confusion.fn),
        static_cast<long long>(row.confusion.fp),
        static_cast<long long>(row.confusion.tp), row.confusion.removal_rate(),
        row.confusion.hit_rate());
  std::printf("outputs written to %s\n", out_dir.c_str());
}

int run_mode(const CLI::App* cmd, const Flags& f, const char* mode) {
  const pagraph::KvConfig cfg = build_config(cmd, f, mode);
  const auto report = pagraph::run_experiment(cfg, f.out_dir);
  print_report(report, f.out_dir);
  return 0;
}

// Builds one adjacency and writes it as an edge list (loadable back through
// compare-adjacency's ground-truth reader).
int run_build_graph(const CLI::App* cmd, const Flags& f) {
  pagraph::DatasetSpec spec;
  spec.source = f.dataset.empty() ? "blobs" : f.dataset;
  if (cmd->count("--n")) spec.synth_n = std::stoi(f.n);
  if (cmd->count("--noise")) spec.synth_noise = std::stod(f.noise);
  if (cmd->count("--dataset-seed")) spec.synth_seed = std::stoull(f.dataset_seed);
  if (cmd->count("--label-column")) spec.label_column = f.label_column;
  if (cmd->count("--delimiter")) spec.delimiter = f.delimiter.at(0);
  if (cmd->count("--header")) spec.has_header = f.header == "true";
  if (cmd->count("--standardize")) spec.standardize = f.standardize == "true";

  pagraph::GraphRecipe recipe;
  if (cmd->count("--variant"))
    recipe.variant = pagraph::graph_variant_from_string(f.variant);
  if (cmd->count("--tree"))
    recipe.tree.kind = f.tree == "rp" ? pagraph::TreeKind::kRandomProjection
                                      : pagraph::TreeKind::kPrincipalAxis;
  if (cmd->count("--n0")) recipe.tree.n0 = std::stoi(f.n0);
  if (cmd->count("--forest-size")) recipe.forest_size = std::stoi(f.forest_size);
  if (cmd->count("--knn-k")) recipe.knn_k = std::stoi(f.knn_k);
  if (cmd->count("--epsilon")) recipe.epsilon = std::stod(f.epsilon);

  const std::uint64_t seed =
      cmd->count("--seed") ? std::stoull(f.seed) : 42ull;
  // Mirror run 0 of the experiment runner so the same --seed reproduces the
  // same split and graph across subcommands.
  const pagraph::Rng run_rng(pagraph::Rng(seed).fork(0).seed());

  // Load features and labels; "0/0/0" means no protocol split, which is fine
  // for the unsupervised variants.
  pagraph::Matrix features;
  pagraph::LabelAssignment labels;
  {
    pagraph::Dataset ds;
    if (pagraph::is_synthetic_source(spec.source)) {
      const auto kind = pagraph::synthetic_kind_from_string(spec.source);
      pagraph::Rng rng(spec.synth_seed);
      ds = pagraph::make_synthetic(
          kind, spec.synth_n,
          spec.synth_noise.value_or(pagraph::synthetic_default_noise(kind)), rng);
    } else {
      ds = pagraph::load_csv(spec.source, spec.label_column, spec.delimiter,
                             spec.has_header);
    }
    if (spec.standardize) pagraph::standardize_features(ds.features);

    const std::string split = cmd->count("--split") ? f.split : "0/0/0";
    if (split == "0/0/0") {
      labels.n = static_cast<pagraph::NodeId>(ds.features.rows());
      labels.labels = ds.labels;
      labels.class_names = ds.class_names;
    } else {
      pagraph::SplitCounts counts;
      if (std::sscanf(split.c_str(), "%d/%d/%d", &counts.train, &counts.valid,
                      &counts.test) != 3)
        throw pagraph::ConfigError("--split expects train/valid/test counts");
      pagraph::Rng split_rng = run_rng.fork(1);
      labels = pagraph::make_split(ds.labels, ds.class_names, counts, split_rng);
    }
    features = std::move(ds.features);
  }

  const pagraph::SparseAdjacency adj =
      pagraph::build_graph(features, labels, recipe, run_rng.fork(2));

  std::filesystem::create_directories(f.out_dir);
  const std::string path = f.out_dir + "/graph.edges";
  std::ofstream out(path, std::ios::binary);
  if (!out) throw pagraph::ParseError("cannot open '" + path + "' for writing");
  out << "# n=" << adj.num_nodes() << "\n";
  for (pagraph::NodeId i = 0; i < adj.num_nodes(); ++i)
    for (pagraph::NodeId j : adj.neighbors(i))
      if (i < j) out << i << ' ' << j << '\n';
  if (!out) throw pagraph::ParseError("write failed for '" + path + "'");

  std::printf("variant %s: %d nodes, %lld edges -> %s\n",
              pagraph::to_string(recipe.variant), adj.num_nodes(),
              static_cast<long long>(adj.num_undirected_edges()), path.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"graph construction (PA/RP trees + penalty/intrinsic edges) and "
               "node classification with SGC and GCN"};
  app.require_subcommand(1);

  Flags flags;

  CLI::App* train = app.add_subcommand("train", "accuracy over repeated runs");
  CLI::App* sweep = app.add_subcommand("sweep", "smoothing-depth or forest-size sweep");
  CLI::App* ablation = app.add_subcommand("ablation", "the four graph recipes side by side");
  CLI::App* compare = app.add_subcommand("compare-adjacency",
                                         "constructed graphs vs a ground-truth edge list");
  CLI::App* baseline = app.add_subcommand("baseline-knn", "plain k-nn classifier baseline");
  CLI::App* build = app.add_subcommand("build-graph", "construct one adjacency and save it");

  for (CLI::App* cmd : {train, sweep, ablation, compare, baseline}) {
    add_common_flags(cmd, flags);
    add_dataset_flags(cmd, flags);
  }
  for (CLI::App* cmd : {train, sweep, ablation, compare}) add_graph_flags(cmd, flags);
  for (CLI::App* cmd : {train, sweep, ablation}) add_model_flags(cmd, flags);
  sweep->add_option("--axis", flags.sweep_axis, "smoothing|forest");
  sweep->add_option("--values", flags.sweep_values, "e.g. 1,2,4 or 1..50 or 20..100:20");
  compare->add_option("--truth", flags.truth, "ground-truth edge list path");
  compare->add_option("--methods", flags.methods, "subset of full,pa,knn,epsilon");
  baseline->add_option("--baseline-k", flags.baseline_k, "k for the classifier");

  add_common_flags(build, flags);
  add_dataset_flags(build, flags);
  add_graph_flags(build, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (train->parsed()) return run_mode(train, flags, "train");
    if (sweep->parsed()) return run_mode(sweep, flags, "sweep");
    if (ablation->parsed()) return run_mode(ablation, flags, "ablation");
    if (compare->parsed()) return run_mode(compare, flags, "compare-adjacency");
    if (baseline->parsed()) return run_mode(baseline, flags, "baseline-knn");
    if (build->parsed()) return run_build_graph(build, flags);
  } catch (const pagraph::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const pagraph::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 3;
  } catch (const pagraph::NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
