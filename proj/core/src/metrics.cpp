#include "pagraph/metrics.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace pagraph {

double accuracy(std::span<const std::int32_t> pred, const LabelAssignment& labels,
                std::span<const NodeId> subset) {
  if (subset.empty()) throw std::invalid_argument("accuracy: empty subset");
  if (pred.size() != static_cast<std::size_t>(labels.n))
    throw std::invalid_argument("accuracy: " + std::to_string(pred.size()) +
                                " predictions for " + std::to_string(labels.n) +
                                " nodes");
  std::int64_t hits = 0;
  for (NodeId i : subset) {
    if (i < 0 || i >= labels.n)
      throw std::invalid_argument("accuracy: subset index " + std::to_string(i) +
                                  " out of range");
    if (!labels.has_label(i))
      throw std::invalid_argument("accuracy: node " + std::to_string(i) +
                                  " has no ground-truth label");
    if (pred[static_cast<std::size_t>(i)] == labels.labels[static_cast<std::size_t>(i)])
      ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(subset.size());
}

double AdjacencyConfusion::removal_rate() const {
  const std::int64_t denom = tn + fp;
  return denom == 0 ? 1.0 : static_cast<double>(tn) / static_cast<double>(denom);
}

double AdjacencyConfusion::hit_rate() const {
  const std::int64_t denom = tp + fn;
  return denom == 0 ? 1.0 : static_cast<double>(tp) / static_cast<double>(denom);
}

AdjacencyConfusion adjacency_confusion(const EdgeSet& constructed,
                                       const EdgeSet& truth, NodeId n) {
  const NodeId needed = std::max(constructed.min_node_count(), truth.min_node_count());
  if (needed > n)
    throw std::invalid_argument("adjacency_confusion: edges reference node " +
                                std::to_string(needed - 1) + " but n = " +
                                std::to_string(n));
  AdjacencyConfusion out;
  out.tp = static_cast<std::int64_t>(set_intersection(constructed, truth).size());
  out.fp = static_cast<std::int64_t>(constructed.size()) - out.tp;
  out.fn = static_cast<std::int64_t>(truth.size()) - out.tp;
  const std::int64_t all_pairs =
      static_cast<std::int64_t>(n) * (static_cast<std::int64_t>(n) - 1) / 2;
  out.tn = all_pairs - out.tp - out.fp - out.fn;
  return out;
}

std::vector<std::int32_t> knn_classify(const Matrix& x_train,
                                       std::span<const std::int32_t> y_train,
                                       const Matrix& x_query, int k) {
  const std::int64_t m = x_train.rows();
  if (y_train.size() != static_cast<std::size_t>(m))
    throw std::invalid_argument("knn_classify: " + std::to_string(y_train.size()) +
                                " labels for " + std::to_string(m) + " train rows");
  if (k < 1 || k > m)
    throw std::invalid_argument("knn_classify: need 1 <= k <= train size, got k = " +
                                std::to_string(k));
  if (x_train.cols() != x_query.cols())
    throw std::invalid_argument("knn_classify: train has " +
                                std::to_string(x_train.cols()) +
                                " features, query has " +
                                std::to_string(x_query.cols()));
  std::int32_t classes = 0;
  for (std::int32_t y : y_train) {
    if (y < 0) throw std::invalid_argument("knn_classify: negative train label");
    classes = std::max(classes, y + 1);
  }

  std::vector<std::int32_t> out(static_cast<std::size_t>(x_query.rows()));
  std::vector<std::pair<double, std::int64_t>> cand(static_cast<std::size_t>(m));
  std::vector<std::int32_t> votes(static_cast<std::size_t>(classes));
  for (std::int64_t q = 0; q < x_query.rows(); ++q) {
    auto xq = x_query.row(q);
    for (std::int64_t t = 0; t < m; ++t) {
      auto xt = x_train.row(t);
      double s = 0.0;
      for (std::int64_t j = 0; j < x_query.cols(); ++j) {
        const double d = xq[j] - xt[j];
        s += d * d;
      }
      cand[static_cast<std::size_t>(t)] = {s, t};
    }
    // (distance, index) order: distance ties pick the lowest train index.
    std::nth_element(cand.begin(), cand.begin() + (k - 1), cand.end());
    std::fill(votes.begin(), votes.end(), 0);
    for (int i = 0; i < k; ++i)
      ++votes[static_cast<std::size_t>(y_train[static_cast<std::size_t>(cand[static_cast<std::size_t>(i)].second)])];
    std::int32_t best = 0;
    for (std::int32_t c = 1; c < classes; ++c)
      if (votes[static_cast<std::size_t>(c)] > votes[static_cast<std::size_t>(best)])
        best = c;  // strict: vote ties keep the lowest class id
    out[static_cast<std::size_t>(q)] = best;
  }
  return out;
}

}  // namespace pagraph
