#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pagraph/labels.hpp"
#include "pagraph/matrix.hpp"
#include "pagraph/rng.hpp"
#include "pagraph/sparse.hpp"

namespace pagraph {

// Features with full ground-truth labels, before any protocol split.
struct Dataset {
  Matrix features;
  std::vector<std::int32_t> labels;      // dense ids, one per row
  std::vector<std::string> class_names;  // dense id -> original label text
};

struct SplitCounts {
  NodeId train = 0;
  NodeId valid = 0;
  NodeId test = 0;
};

// Built-in 2-D generators standing in for the small benchmark datasets:
// kBlobs are compact Gaussian classes; kRings and kSmile contain "sparse"
// classes whose points do not share a single mean.
enum class SyntheticKind { kBlobs, kTwoMoons, kRings, kSmile };

SyntheticKind synthetic_kind_from_string(const std::string& name);
bool is_synthetic_source(const std::string& source);
double synthetic_default_noise(SyntheticKind kind);

// Deterministic given rng. Classes are near-evenly sized; labels come out in
// class blocks. Requires n >= 2 * class count.
Dataset make_synthetic(SyntheticKind kind, NodeId n, double noise, Rng& rng);

// CSV with a header row (RFC-4180-style quoting, configurable delimiter).
// label_column selects by header name, or by 0-based index when it parses as
// an integer (required when has_header is false). Every other column must be
// numeric; violations raise ParseError with the offending row number.
// Label text is densified in lexicographic order.
Dataset load_csv(const std::string& path, const std::string& label_column,
                 char delimiter = ',', bool has_header = true);

// Inverse of load_csv: header x0..x{d-1},label and one row per node with the
// original class names.
void save_csv(const std::string& path, const Dataset& ds, char delimiter = ',');

// Stratified split with exact requested sizes: per-class quotas are
// proportional (largest remainder), remainder classes chosen by seeded draw,
// per-class membership by seeded shuffle. Nodes beyond train+valid+test stay
// unassigned. Split index lists come out sorted. Requires every label known
// and counts summing to at most n, train >= 1.
LabelAssignment make_split(const std::vector<std::int32_t>& labels,
                           const std::vector<std::string>& class_names,
                           SplitCounts counts, Rng& rng);

// Z-scores every feature column in place (population variance). Returns the
// number of constant columns, which are set to zero instead.
int standardize_features(Matrix& x);

struct GroundTruthGraph {
  SparseAdjacency adj;
  std::int64_t self_loops_dropped = 0;
  std::int64_t duplicates_merged = 0;  // repeated pairs, either direction
};

// Edge list: one "i j" or "i,j" pair per line, 0-based, '#' comments. An
// optional "# n=<count>" header (or the n argument) fixes the node count and
// indices at or above it are rejected; otherwise n = max index + 1.
// Self loops are dropped and counted; duplicate pairs merge.
GroundTruthGraph load_ground_truth_graph(const std::string& path,
                                         std::optional<NodeId> n = {});

// Everything the CLI needs to materialize a dataset.
struct DatasetSpec {
  std::string source;  // builtin generator name or CSV path
  std::string label_column = "label";
  char delimiter = ',';
  bool has_header = true;
  bool standardize = false;
  SplitCounts split;
  std::uint64_t split_seed = 0;
  // synthetic sources only
  NodeId synth_n = 300;
  std::optional<double> synth_noise;  // default depends on the generator
  std::uint64_t synth_seed = 7;
};

struct LoadedDataset {
  Matrix features;
  LabelAssignment labels;
  int constant_columns = 0;  // from standardization, 0 otherwise
};

LoadedDataset load_dataset(const DatasetSpec& spec);

}  // namespace pagraph
