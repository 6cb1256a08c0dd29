#include "pagraph/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <thread>

#include "pagraph/data_io.hpp"
#include "pagraph/errors.hpp"
#include "pagraph/svg_plot.hpp"

namespace pagraph {

namespace fs = std::filesystem;

const char* to_string(ExperimentMode mode) {
  switch (mode) {
    case ExperimentMode::kTrain: return "train";
    case ExperimentMode::kSweep: return "sweep";
    case ExperimentMode::kAblation: return "ablation";
    case ExperimentMode::kCompareAdjacency: return "compare-adjacency";
    case ExperimentMode::kBaselineKnn: return "baseline-knn";
  }
  return "?";
}

ExperimentMode experiment_mode_from_string(const std::string& s) {
  if (s == "train") return ExperimentMode::kTrain;
  if (s == "sweep") return ExperimentMode::kSweep;
  if (s == "ablation") return ExperimentMode::kAblation;
  if (s == "compare-adjacency") return ExperimentMode::kCompareAdjacency;
  if (s == "baseline-knn") return ExperimentMode::kBaselineKnn;
  throw ConfigError("unknown mode '" + s +
                    "' (expected train|sweep|ablation|compare-adjacency|baseline-knn)");
}

double CellResult::mean_accuracy() const {
  if (runs.empty()) return 0.0;
  double s = 0.0;
  for (const auto& r : runs) s += r.test_accuracy;
  return s / static_cast<double>(runs.size());
}

double CellResult::std_accuracy() const {
  if (runs.size() < 2) return 0.0;
  const double m = mean_accuracy();
  double s = 0.0;
  for (const auto& r : runs) s += (r.test_accuracy - m) * (r.test_accuracy - m);
  return std::sqrt(s / static_cast<double>(runs.size() - 1));
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt9(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

SplitCounts parse_split(const std::string& text) {
  SplitCounts counts;
  if (std::sscanf(text.c_str(), "%d/%d/%d", &counts.train, &counts.valid,
                  &counts.test) != 3)
    throw ConfigError("dataset.split expects 'train/valid/test' counts, got '" +
                      text + "'");
  return counts;
}

std::vector<double> parse_values(const std::string& text) {
  std::vector<double> out;
  const auto range = text.find("..");
  if (range != std::string::npos) {
    long lo = 0, hi = 0, step = 1;
    const std::string rest = text.substr(range + 2);
    const auto colon = rest.find(':');
    try {
      lo = std::stol(text.substr(0, range));
      hi = std::stol(colon == std::string::npos ? rest : rest.substr(0, colon));
      if (colon != std::string::npos) step = std::stol(rest.substr(colon + 1));
    } catch (const std::exception&) {
      throw ConfigError("sweep.values: bad range '" + text + "'");
    }
    if (step < 1 || hi < lo)
      throw ConfigError("sweep.values: bad range '" + text + "'");
    for (long v = lo; v <= hi; v += step) out.push_back(static_cast<double>(v));
    return out;
  }
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const std::string tok =
        text.substr(pos, comma == std::string::npos ? std::string::npos
                                                    : comma - pos);
    if (!tok.empty()) {
      try {
        std::size_t used = 0;
        out.push_back(std::stod(tok, &used));
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw ConfigError("sweep.values: bad number '" + tok + "'");
      }
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (out.empty()) throw ConfigError("sweep.values: empty list");
  return out;
}

struct CellSpec {
  std::string id;
  std::string model;  // sgc | gcn | knn
  GraphRecipe recipe;
  TrainConfig train;
  double sweep_value = 0.0;
  bool has_sweep_value = false;
  int knn_k = 5;  // baseline cells only
};

struct Plan {
  ExperimentMode mode = ExperimentMode::kTrain;
  int runs = 10;
  std::uint64_t seed = 42;
  int workers = 1;
  bool plots = true;

  Dataset base;  // features already standardized when requested
  int constant_columns = 0;
  SplitCounts split;

  std::string sweep_axis;
  std::string truth_path;
  std::vector<std::string> compare_methods;

  std::vector<CellSpec> cells;
};

std::vector<std::string> parse_models(const std::string& kind) {
  if (kind == "sgc" || kind == "gcn") return {kind};
  if (kind == "both") return {"sgc", "gcn"};
  throw ConfigError("model.kind expects sgc|gcn|both, got '" + kind + "'");
}

int integral_value(double v, const char* what) {
  const double r = std::round(v);
  if (r != v || r < 0.0 || r > 1e9)
    throw ConfigError(std::string(what) + ": value " + fmt9(v) +
                      " is not a small non-negative integer");
  return static_cast<int>(r);
}

Plan parse_plan(const KvConfig& m) {
  Plan plan;
  plan.mode = experiment_mode_from_string(m.get_required("mode"));
  plan.runs = static_cast<int>(m.get_int("runs", 10));
  plan.seed = m.get_uint("seed", 42);
  plan.workers = static_cast<int>(m.get_int("workers", 1));
  plan.plots = m.get_bool("plots", true);
  if (plan.runs < 1) throw ConfigError("runs must be >= 1");
  if (plan.workers < 1) throw ConfigError("workers must be >= 1");

  // dataset
  DatasetSpec ds;
  ds.source = m.get_required("dataset.source");
  ds.synth_n = static_cast<NodeId>(m.get_int("dataset.n", 300));
  if (m.has("dataset.noise")) ds.synth_noise = m.get_double("dataset.noise", 0.0);
  ds.synth_seed = m.get_uint("dataset.seed", 7);
  ds.label_column = m.get("dataset.label_column", "label");
  const std::string delim = m.get("dataset.delimiter", ",");
  if (delim.size() != 1)
    throw ConfigError("dataset.delimiter must be a single character");
  ds.delimiter = delim[0];
  ds.has_header = m.get_bool("dataset.header", true);
  ds.standardize = m.get_bool("dataset.standardize", false);
  plan.split = parse_split(m.get_required("dataset.split"));

  // graph recipe
  GraphRecipe recipe;
  recipe.variant = graph_variant_from_string(m.get("graph.variant", "full"));
  const std::string tree = m.get("graph.tree", "pa");
  if (tree == "pa") recipe.tree.kind = TreeKind::kPrincipalAxis;
  else if (tree == "rp") recipe.tree.kind = TreeKind::kRandomProjection;
  else throw ConfigError("graph.tree expects pa|rp, got '" + tree + "'");
  recipe.tree.n0 = static_cast<int>(m.get_int("graph.n0", 20));
  recipe.forest_size = static_cast<int>(m.get_int("graph.forest_size", 1));
  if (m.has("graph.knn_k"))
    recipe.knn_k = static_cast<int>(m.get_int("graph.knn_k", 0));
  if (m.has("graph.epsilon"))
    recipe.epsilon = m.get_double("graph.epsilon", 0.0);
  if (recipe.tree.n0 < 1) throw ConfigError("graph.n0 must be >= 1");
  if (recipe.forest_size < 1) throw ConfigError("graph.forest_size must be >= 1");
  if (recipe.forest_size > 1 && recipe.tree.kind == TreeKind::kPrincipalAxis)
    throw ConfigError("graph.forest_size > 1 requires graph.tree = rp");

  // model template
  TrainConfig train;
  const std::string kind = m.get("model.kind", "sgc");
  train.epochs = static_cast<int>(m.get_int("model.epochs", 200));
  train.learning_rate = m.get_double("model.lr", 0.01);
  train.weight_decay = m.get_double("model.weight_decay", 5e-4);
  train.hidden_width = static_cast<int>(m.get_int("model.hidden", 16));
  train.k_layers = static_cast<int>(m.get_int("model.k", 2));
  train.early_stop_patience = static_cast<int>(m.get_int("model.patience", 0));
  train.bias = m.get_bool("model.bias", true);
  train.momentum = m.get_double("model.momentum", 0.0);

  const int baseline_k = static_cast<int>(m.get_int("baseline.k", 5));

  std::vector<std::string> models;
  std::vector<double> sweep_values;
  switch (plan.mode) {
    case ExperimentMode::kTrain:
    case ExperimentMode::kAblation:
      models = parse_models(kind);
      break;
    case ExperimentMode::kSweep: {
      models = parse_models(kind);
      plan.sweep_axis = m.get_required("sweep.axis");
      if (plan.sweep_axis != "smoothing" && plan.sweep_axis != "forest")
        throw ConfigError("sweep.axis expects smoothing|forest, got '" +
                          plan.sweep_axis + "'");
      sweep_values = parse_values(m.get_required("sweep.values"));
      if (plan.sweep_axis == "forest" &&
          recipe.tree.kind != TreeKind::kRandomProjection)
        throw ConfigError("sweep.axis = forest requires graph.tree = rp");
      break;
    }
    case ExperimentMode::kCompareAdjacency: {
      plan.truth_path = m.get_required("compare.truth");
      const std::string methods = m.get("compare.methods", "full,knn,epsilon");
      std::size_t pos = 0;
      while (pos <= methods.size()) {
        const auto comma = methods.find(',', pos);
        const std::string tok = methods.substr(
            pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (!tok.empty()) {
          if (tok != "full" && tok != "pa" && tok != "knn" && tok != "epsilon")
            throw ConfigError("compare.methods: unknown method '" + tok + "'");
          plan.compare_methods.push_back(tok);
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
      }
      if (plan.compare_methods.empty())
        throw ConfigError("compare.methods: empty list");
      break;
    }
    case ExperimentMode::kBaselineKnn:
      break;
  }

  // Reject anything the selected mode never consumed: typos fail fast rather
  // than silently configuring nothing.
  const auto unused = m.untouched_keys();
  if (!unused.empty()) {
    std::string msg = "manifest has unrecognized keys:";
    for (const auto& key : unused) msg += " '" + key + "'";
    throw ConfigError(msg);
  }

  // Materialize the dataset once; splits are re-drawn per run.
  if (is_synthetic_source(ds.source)) {
    const SyntheticKind skind = synthetic_kind_from_string(ds.source);
    Rng rng(ds.synth_seed);
    plan.base = make_synthetic(
        skind, ds.synth_n, ds.synth_noise.value_or(synthetic_default_noise(skind)),
        rng);
  } else {
    plan.base = load_csv(ds.source, ds.label_column, ds.delimiter, ds.has_header);
  }
  if (ds.standardize)
    plan.constant_columns = standardize_features(plan.base.features);

  const auto n = static_cast<std::int64_t>(plan.base.features.rows());
  if (plan.split.train < 1) throw ConfigError("dataset.split: train must be >= 1");
  if (static_cast<std::int64_t>(plan.split.train) + plan.split.valid +
          plan.split.test > n)
    throw ConfigError("dataset.split: counts exceed the " + std::to_string(n) +
                      " available nodes");
  if (plan.mode != ExperimentMode::kCompareAdjacency && plan.split.test < 1)
    throw ConfigError("dataset.split: test must be >= 1 for mode " +
                      std::string(to_string(plan.mode)));
  if (recipe.knn_k && (*recipe.knn_k < 1 || *recipe.knn_k >= n))
    throw ConfigError("graph.knn_k must be in [1, n)");

  // Cells.
  auto make_train_cfg = [&](int k_layers) {
    TrainConfig cfg = train;
    cfg.k_layers = k_layers;
    return cfg;
  };
  auto check_gcn_k = [&](const std::string& model, int k) {
    if (model == "gcn" && k < 1)
      throw ConfigError("gcn needs k >= 1 (got " + std::to_string(k) + ")");
  };

  switch (plan.mode) {
    case ExperimentMode::kTrain:
      for (const auto& model : models) {
        check_gcn_k(model, train.k_layers);
        plan.cells.push_back({model, model, recipe, train, 0.0, false, 0});
      }
      break;
    case ExperimentMode::kSweep:
      for (double value : sweep_values) {
        const int v = integral_value(value, "sweep.values");
        for (const auto& model : models) {
          CellSpec cell;
          cell.model = model;
          cell.recipe = recipe;
          cell.sweep_value = value;
          cell.has_sweep_value = true;
          if (plan.sweep_axis == "smoothing") {
            check_gcn_k(model, v);
            cell.train = make_train_cfg(v);
            cell.id = model + "_k" + std::to_string(v);
          } else {
            if (v < 1) throw ConfigError("sweep.values: forest sizes must be >= 1");
            cell.train = train;
            check_gcn_k(model, train.k_layers);
            cell.recipe.forest_size = v;
            cell.id = model + "_trees" + std::to_string(v);
          }
          plan.cells.push_back(std::move(cell));
        }
      }
      break;
    case ExperimentMode::kAblation: {
      const GraphVariant variants[] = {
          GraphVariant::kFull, GraphVariant::kIntrinsicOnly,
          GraphVariant::kPaMinusPenalty, GraphVariant::kPaOnly};
      for (GraphVariant v : variants)
        for (const auto& model : models) {
          check_gcn_k(model, train.k_layers);
          CellSpec cell;
          std::string vname = to_string(v);
          std::replace(vname.begin(), vname.end(), '-', '_');
          cell.id = vname + "_" + model;
          cell.model = model;
          cell.recipe = recipe;
          cell.recipe.variant = v;
          cell.train = train;
          plan.cells.push_back(std::move(cell));
        }
      break;
    }
    case ExperimentMode::kBaselineKnn: {
      if (baseline_k < 1 || baseline_k > plan.split.train)
        throw ConfigError("baseline.k must be in [1, train count]");
      CellSpec cell;
      cell.id = "knn" + std::to_string(baseline_k);
      cell.model = "knn";
      cell.knn_k = baseline_k;
      plan.cells.push_back(std::move(cell));
      break;
    }
    case ExperimentMode::kCompareAdjacency:
      break;
  }
  return plan;
}

struct RunExtra {  // side channel for train-mode artifacts
  std::optional<ModelParams> params;
  std::vector<std::int32_t> predictions;
};

RunOutcome execute_run(const Plan& plan, const CellSpec& cell, int run_index,
                       RunExtra* extra) {
  RunOutcome outcome;
  const Rng base(plan.seed);
  outcome.seed = base.fork(static_cast<std::uint64_t>(run_index)).seed();
  const Rng run_rng(outcome.seed);

  Rng split_rng = run_rng.fork(1);
  const LabelAssignment labels = make_split(plan.base.labels,
                                            plan.base.class_names, plan.split,
                                            split_rng);
  const Matrix& x = plan.base.features;

  if (cell.model == "knn") {
    const Matrix x_train = gather_rows(x, labels.train);
    std::vector<std::int32_t> y_train(labels.train.size());
    for (std::size_t i = 0; i < labels.train.size(); ++i)
      y_train[i] = labels.labels[labels.train[i]];
    const Matrix x_test = gather_rows(x, labels.test);

    const auto t0 = Clock::now();
    const auto pred_test = knn_classify(x_train, y_train, x_test, cell.knn_k);
    outcome.timings.train_s = seconds_since(t0);

    std::vector<std::int32_t> pred(static_cast<std::size_t>(labels.n), -1);
    for (std::size_t i = 0; i < labels.test.size(); ++i)
      pred[static_cast<std::size_t>(labels.test[i])] = pred_test[i];
    outcome.test_accuracy = accuracy(pred, labels, labels.test);
    if (extra) extra->predictions = std::move(pred);
    return outcome;
  }

  const auto t0 = Clock::now();
  const SparseAdjacency graph = build_graph(x, labels, cell.recipe, run_rng.fork(2));
  outcome.timings.graph_build_s = seconds_since(t0);

  TrainConfig cfg = cell.train;
  cfg.seed = run_rng.fork(3).seed();

  FitResult fit;
  if (cell.model == "sgc") {
    const auto t1 = Clock::now();
    const NormalizedAdjacency abar = normalize(graph);
    const Matrix xbar = smooth(abar, x, cfg.k_layers);
    outcome.timings.precompute_s = seconds_since(t1);
    const auto t2 = Clock::now();
    fit = sgc_fit_precomputed(xbar, labels, cfg);
    outcome.timings.train_s = seconds_since(t2);
  } else {
    const auto t1 = Clock::now();
    const NormalizedAdjacency abar = normalize(graph);
    outcome.timings.precompute_s = seconds_since(t1);
    const auto t2 = Clock::now();
    fit = gcn_fit_precomputed(abar, x, labels, cfg);
    outcome.timings.train_s = seconds_since(t2);
  }

  const auto pred = predict(fit.params, x, graph);
  outcome.test_accuracy = accuracy(pred, labels, labels.test);
  outcome.history = std::move(fit.history);
  if (extra) {
    extra->params = std::move(fit.params);
    extra->predictions = pred;
  }
  return outcome;
}

EdgeSet build_compare_edges(const Plan& plan, const std::string& method) {
  const Matrix& x = plan.base.features;
  const auto n = static_cast<NodeId>(x.rows());
  if (method == "knn") return knn_graph(x, default_knn_k(n));
  if (method == "epsilon") return epsilon_graph(x);

  GraphRecipe recipe;
  recipe.variant = method == "full" ? GraphVariant::kFull : GraphVariant::kPaOnly;
  const Rng run_rng(Rng(plan.seed).fork(0).seed());
  Rng split_rng = run_rng.fork(1);
  const LabelAssignment labels = make_split(plan.base.labels,
                                            plan.base.class_names, plan.split,
                                            split_rng);
  return to_edge_set(build_graph(x, labels, recipe, run_rng.fork(2)));
}

// --- output writers -----------------------------------------------------------

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot open '" + path.string() + "' for writing");
  out << content;
  if (!out) throw ParseError("write failed for '" + path.string() + "'");
}

void write_outputs(const Plan& plan, const ExperimentReport& report,
                   const std::vector<std::vector<RunExtra>>& extras,
                   const KvConfig& manifest, const std::string& out_dir) {
  const fs::path root(out_dir);
  fs::create_directories(root);
  write_file(root / "config.txt", manifest.dump());

  std::string aggregate =
      "cell,model,variant,sweep_value,runs,mean_test_accuracy,std_test_accuracy\n";
  for (const auto& cell : report.cells) {
    aggregate += cell.id + "," + cell.model + "," + cell.variant + ",";
    aggregate += cell.has_sweep_value ? fmt9(cell.sweep_value) : std::string("-");
    aggregate += "," + std::to_string(cell.runs.size()) + "," +
                 fmt9(cell.mean_accuracy()) + "," + fmt9(cell.std_accuracy()) +
                 "\n";
  }
  if (!report.cells.empty()) write_file(root / "aggregate.csv", aggregate);

  std::string timings = "cell,run,graph_build_s,precompute_s,train_s\n";
  for (std::size_t c = 0; c < report.cells.size(); ++c) {
    const auto& cell = report.cells[c];
    fs::create_directories(root / cell.id);

    std::string runs_csv = "run,seed,test_accuracy,loss_curve\n";
    for (std::size_t r = 0; r < cell.runs.size(); ++r) {
      const RunOutcome& run = cell.runs[r];
      std::string curve = "-";
      if (!run.history.empty()) {
        curve = "run" + std::to_string(r) + "_loss.csv";
        std::string loss_csv = "epoch,train_loss,valid_loss\n";
        for (std::size_t e = 0; e < run.history.size(); ++e)
          loss_csv += std::to_string(e) + "," + fmt9(run.history[e].train_loss) +
                      "," + fmt9(run.history[e].valid_loss) + "\n";
        write_file(root / cell.id / curve, loss_csv);
      }
      runs_csv += std::to_string(r) + "," + std::to_string(run.seed) + "," +
                  fmt9(run.test_accuracy) + "," + curve + "\n";
      timings += cell.id + "," + std::to_string(r) + "," +
                 fmt9(run.timings.graph_build_s) + "," +
                 fmt9(run.timings.precompute_s) + "," +
                 fmt9(run.timings.train_s) + "\n";
    }
    write_file(root / cell.id / "runs.csv", runs_csv);

    // Single-run train mode keeps the trained model and its predictions.
    if (plan.mode == ExperimentMode::kTrain && plan.runs == 1 &&
        !extras[c].empty() && extras[c][0].params) {
      save_checkpoint((root / cell.id / "model.ckpt").string(),
                      *extras[c][0].params);
      std::string preds = "node,label,prediction\n";
      const auto& pv = extras[c][0].predictions;
      for (NodeId i = 0; i < static_cast<NodeId>(pv.size()); ++i) {
        const std::int32_t truth = plan.base.labels[static_cast<std::size_t>(i)];
        preds += std::to_string(i) + ",";
        preds += truth >= 0 ? plan.base.class_names[static_cast<std::size_t>(truth)]
                            : std::string("-");
        preds += ",";
        const std::int32_t p = pv[static_cast<std::size_t>(i)];
        preds += p >= 0 ? plan.base.class_names[static_cast<std::size_t>(p)]
                        : std::string("-");
        preds += "\n";
      }
      write_file(root / cell.id / "predictions.csv", preds);
    }
  }
  if (!report.cells.empty()) write_file(root / "timings.csv", timings);

  if (plan.mode == ExperimentMode::kSweep) {
    std::string sweep_csv = "axis,value,model,mean_test_accuracy,std_test_accuracy\n";
    for (const auto& cell : report.cells)
      sweep_csv += plan.sweep_axis + "," + fmt9(cell.sweep_value) + "," +
                   cell.model + "," + fmt9(cell.mean_accuracy()) + "," +
                   fmt9(cell.std_accuracy()) + "\n";
    write_file(root / "sweep.csv", sweep_csv);

    if (plan.plots) {
      std::vector<PlotSeries> series;
      for (const auto& cell : report.cells) {
        auto it = std::find_if(series.begin(), series.end(),
                               [&](const PlotSeries& s) { return s.name == cell.model; });
        if (it == series.end()) {
          series.push_back({cell.model, {}, {}});
          it = series.end() - 1;
        }
        it->x.push_back(cell.sweep_value);
        it->y.push_back(cell.mean_accuracy());
      }
      write_line_plot_svg((root / "sweep.svg").string(),
                          "test accuracy vs " + plan.sweep_axis,
                          plan.sweep_axis, "mean test accuracy", series);
    }
  }

  if (plan.mode == ExperimentMode::kCompareAdjacency) {
    std::string conf = "method,tn,fn,fp,tp,removal_rate,hit_rate\n";
    for (const auto& row : report.confusions)
      conf += row.method + "," + std::to_string(row.confusion.tn) + "," +
              std::to_string(row.confusion.fn) + "," +
              std::to_string(row.confusion.fp) + "," +
              std::to_string(row.confusion.tp) + "," +
              fmt9(row.confusion.removal_rate()) + "," +
              fmt9(row.confusion.hit_rate()) + "\n";
    write_file(root / "confusion.csv", conf);
  }
}

}  // namespace

ExperimentReport run_experiment(const KvConfig& manifest,
                                const std::string& out_dir) {
  const Plan plan = parse_plan(manifest);

  ExperimentReport report;
  report.mode = plan.mode;

  std::vector<std::vector<RunExtra>> extras(plan.cells.size());

  if (plan.mode == ExperimentMode::kCompareAdjacency) {
    const auto n = static_cast<NodeId>(plan.base.features.rows());
    const GroundTruthGraph truth = load_ground_truth_graph(plan.truth_path, n);
    const EdgeSet truth_edges = to_edge_set(truth.adj);
    for (const auto& method : plan.compare_methods) {
      const EdgeSet constructed = build_compare_edges(plan, method);
      report.confusions.push_back(
          {method, adjacency_confusion(constructed, truth_edges, n)});
    }
    write_outputs(plan, report, extras, manifest, out_dir);
    return report;
  }

  report.cells.resize(plan.cells.size());
  for (std::size_t c = 0; c < plan.cells.size(); ++c) {
    CellResult& cell = report.cells[c];
    cell.id = plan.cells[c].id;
    cell.model = plan.cells[c].model;
    cell.variant = plan.cells[c].model == "knn"
                       ? "-"
                       : to_string(plan.cells[c].recipe.variant);
    cell.sweep_value = plan.cells[c].sweep_value;
    cell.has_sweep_value = plan.cells[c].has_sweep_value;
    cell.runs.resize(static_cast<std::size_t>(plan.runs));
    extras[c].resize(static_cast<std::size_t>(plan.runs));
  }

  struct Task {
    std::size_t cell;
    int run;
  };
  std::vector<Task> tasks;
  for (std::size_t c = 0; c < plan.cells.size(); ++c)
    for (int r = 0; r < plan.runs; ++r) tasks.push_back({c, r});

  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;
  auto worker = [&] {
    for (;;) {
      const std::size_t t = next.fetch_add(1);
      if (t >= tasks.size()) return;
      {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (first_error) return;
      }
      try {
        const Task task = tasks[t];
        report.cells[task.cell].runs[static_cast<std::size_t>(task.run)] =
            execute_run(plan, plan.cells[task.cell], task.run,
                        &extras[task.cell][static_cast<std::size_t>(task.run)]);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    }
  };

  const int thread_count =
      std::max(1, std::min<int>(plan.workers, static_cast<int>(tasks.size())));
  if (thread_count == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(thread_count));
    for (int i = 0; i < thread_count; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  write_outputs(plan, report, extras, manifest, out_dir);
  return report;
}

}  // namespace pagraph
