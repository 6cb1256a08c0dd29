#include "pagraph/propagation.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace pagraph {

Matrix NormalizedAdjacency::apply(const Matrix& x) const {
  const NodeId n = num_nodes();
  if (n != x.rows())
    throw std::invalid_argument(
        "NormalizedAdjacency::apply: operator over " + std::to_string(n) +
        " nodes but features have " + std::to_string(x.rows()) + " rows");
  Matrix y(x.rows(), x.cols());
  for (NodeId i = 0; i < n; ++i) {
    auto ns = base_.neighbors(i);
    auto ws = base_.weights(i);
    auto yi = y.row(i);
    const double si = scale_[static_cast<std::size_t>(i)];
    for (std::size_t k = 0; k < ns.size(); ++k) {
      const double w = si * ws[k] * scale_[static_cast<std::size_t>(ns[k])];
      auto xj = x.row(ns[k]);
      for (std::int64_t c = 0; c < x.cols(); ++c) yi[c] += w * xj[c];
    }
  }
  return y;
}

NormalizedAdjacency normalize(const SparseAdjacency& adj) {
  NormalizedAdjacency out;
  out.base_ = adj.with_self_loops(1.0);
  const NodeId n = out.base_.num_nodes();
  out.scale_.resize(static_cast<std::size_t>(n));
  for (NodeId i = 0; i < n; ++i)
    out.scale_[static_cast<std::size_t>(i)] = 1.0 / std::sqrt(out.base_.degree(i));
  return out;
}

Matrix smooth(const NormalizedAdjacency& adj_bar, const Matrix& x, int k) {
  if (k < 0) throw std::invalid_argument("smooth: k must be >= 0");
  Matrix y = x;
  for (int step = 0; step < k; ++step) y = adj_bar.apply(y);
  return y;
}

}  // namespace pagraph
