#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pagraph/classifiers.hpp"
#include "pagraph/graph_build.hpp"
#include "pagraph/kv_config.hpp"
#include "pagraph/metrics.hpp"

namespace pagraph {

// Experiment protocols driven by a key-value manifest:
//   train              accuracy over repeated runs (fresh split per run)
//   sweep              smoothing depth K or RP-forest size on an axis
//   ablation           the four graph recipes side by side
//   compare-adjacency  constructed graphs vs a ground-truth edge list
//   baseline-knn       plain k-nn classification, no graph
enum class ExperimentMode {
  kTrain,
  kSweep,
  kAblation,
  kCompareAdjacency,
  kBaselineKnn,
};

struct RunTimings {
  double graph_build_s = 0.0;
  double precompute_s = 0.0;
  double train_s = 0.0;
};

struct RunOutcome {
  std::uint64_t seed = 0;  // the run's derived seed
  double test_accuracy = 0.0;
  std::vector<EpochStats> history;  // empty for knn baseline
  RunTimings timings;
};

struct CellResult {
  std::string id;       // directory-safe cell name
  std::string model;    // sgc | gcn | knn
  std::string variant;  // graph recipe, "-" when not applicable
  double sweep_value = 0.0;
  bool has_sweep_value = false;
  std::vector<RunOutcome> runs;

  double mean_accuracy() const;
  double std_accuracy() const;  // sample std over runs, 0 for a single run
};

struct ConfusionRow {
  std::string method;
  AdjacencyConfusion confusion;
};

struct ExperimentReport {
  ExperimentMode mode = ExperimentMode::kTrain;
  std::vector<CellResult> cells;
  std::vector<ConfusionRow> confusions;  // compare-adjacency only
};

// Parses and fully validates the manifest (unknown keys are rejected, as are
// infeasible split counts and inconsistent mode/axis combinations), runs the
// protocol, and writes outputs under out_dir:
//
//   config.txt             manifest snapshot
//   aggregate.csv          one row per cell (mean/std test accuracy)
//   <cell>/runs.csv        per-run accuracy + loss-curve path
//   <cell>/run<i>_loss.csv per-epoch train/valid loss
//   sweep.csv, sweep.svg   sweep modes
//   confusion.csv          compare-adjacency
//   timings.csv            wall-clock phases; the one output that is not a
//                          pure function of manifest + seeds
//
// All CSV/SVG content except timings.csv is byte-deterministic given the
// manifest. Independent runs execute on `workers` threads; outputs are
// written single-threaded in a fixed order after all runs complete.
ExperimentReport run_experiment(const KvConfig& manifest,
                                const std::string& out_dir);

const char* to_string(ExperimentMode mode);
ExperimentMode experiment_mode_from_string(const std::string& s);

}  // namespace pagraph
