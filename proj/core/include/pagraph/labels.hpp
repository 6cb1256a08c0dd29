#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pagraph/types.hpp"

namespace pagraph {

// Node labels plus the train/valid/test protocol split. labels[i] is a dense
// class id in [0, num_classes) or -1 when unknown.
//
// Usage contract: supervised graph construction and training loss consult
// labels only on `train`; `valid` feeds validation loss / early stopping;
// `test` labels exist solely for scoring. The structure may carry all
// ground-truth labels, the protocol above is what keeps them out of the model.
struct LabelAssignment {
  NodeId n = 0;
  std::vector<std::int32_t> labels;      // size n, -1 = unknown
  std::vector<std::string> class_names;  // dense id -> original label text
  std::vector<NodeId> train;
  std::vector<NodeId> valid;
  std::vector<NodeId> test;

  std::int32_t num_classes() const {
    return static_cast<std::int32_t>(class_names.size());
  }
  bool has_label(NodeId i) const { return labels[i] >= 0; }

  // Throws std::invalid_argument on any violated invariant: split sets must
  // be pairwise disjoint with indices in [0, n), every train and valid index
  // must carry a label, label values must lie in [-1, num_classes).
  void validate() const;
};

}  // namespace pagraph
