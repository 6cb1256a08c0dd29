#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pagraph/edge_set.hpp"
#include "pagraph/labels.hpp"
#include "pagraph/matrix.hpp"

namespace pagraph {

// Fraction of subset nodes whose prediction matches the ground-truth label.
// Rejects an empty subset and unlabeled subset nodes.
double accuracy(std::span<const std::int32_t> pred, const LabelAssignment& labels,
                std::span<const NodeId> subset);

// Classification of all n(n-1)/2 unordered pairs of a constructed edge set
// against a ground-truth edge set.
struct AdjacencyConfusion {
  std::int64_t tn = 0;  // edge in neither graph
  std::int64_t fn = 0;  // in ground truth only (missed)
  std::int64_t fp = 0;  // constructed only (spurious)
  std::int64_t tp = 0;  // in both

  std::int64_t total() const { return tn + fn + fp + tp; }

  // Fraction of ground-truth non-edges the constructed graph also leaves
  // out: tn / (tn + fp). 1.0 when there are no such pairs.
  double removal_rate() const;

  // Fraction of ground-truth edges the constructed graph found:
  // tp / (tp + fn). 1.0 when the ground truth has no edges.
  double hit_rate() const;
};

AdjacencyConfusion adjacency_confusion(const EdgeSet& constructed,
                                       const EdgeSet& truth, NodeId n);

// Majority vote among the k Euclidean-nearest train rows. Vote ties resolve
// to the lowest class id, distance ties to the lowest train index. Requires
// 1 <= k <= train size.
std::vector<std::int32_t> knn_classify(const Matrix& x_train,
                                       std::span<const std::int32_t> y_train,
                                       const Matrix& x_query, int k);

}  // namespace pagraph
