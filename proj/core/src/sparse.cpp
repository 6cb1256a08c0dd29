#include "pagraph/sparse.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace pagraph {

std::int64_t SparseAdjacency::num_undirected_edges() const {
  std::int64_t count = 0;
  for (NodeId i = 0; i < n_; ++i)
    for (NodeId j : neighbors(i))
      if (i < j) ++count;
  return count;
}

std::int64_t SparseAdjacency::num_self_loops() const {
  std::int64_t count = 0;
  for (NodeId i = 0; i < n_; ++i)
    if (has_edge(i, i)) ++count;
  return count;
}

std::span<const NodeId> SparseAdjacency::neighbors(NodeId i) const {
  const auto lo = static_cast<std::size_t>(row_ptr_[i]);
  const auto hi = static_cast<std::size_t>(row_ptr_[i + 1]);
  return {cols_.data() + lo, hi - lo};
}

std::span<const double> SparseAdjacency::weights(NodeId i) const {
  const auto lo = static_cast<std::size_t>(row_ptr_[i]);
  const auto hi = static_cast<std::size_t>(row_ptr_[i + 1]);
  return {vals_.data() + lo, hi - lo};
}

double SparseAdjacency::degree(NodeId i) const {
  double d = 0.0;
  for (double w : weights(i)) d += w;
  return d;
}

bool SparseAdjacency::has_edge(NodeId i, NodeId j) const {
  auto ns = neighbors(i);
  return std::binary_search(ns.begin(), ns.end(), j);
}

double SparseAdjacency::weight(NodeId i, NodeId j) const {
  auto ns = neighbors(i);
  auto it = std::lower_bound(ns.begin(), ns.end(), j);
  if (it == ns.end() || *it != j) return 0.0;
  return weights(i)[static_cast<std::size_t>(it - ns.begin())];
}

bool SparseAdjacency::is_symmetric() const {
  for (NodeId i = 0; i < n_; ++i) {
    auto ns = neighbors(i);
    auto ws = weights(i);
    for (std::size_t k = 0; k < ns.size(); ++k) {
      if (k > 0 && ns[k] <= ns[k - 1]) return false;  // sorted, no dups
      if (ns[k] < 0 || ns[k] >= n_) return false;
      if (weight(ns[k], i) != ws[k]) return false;
    }
  }
  return true;
}

SparseAdjacency SparseAdjacency::with_self_loops(double w) const {
  std::vector<std::int64_t> row_ptr(static_cast<std::size_t>(n_) + 1, 0);
  std::vector<NodeId> cols;
  std::vector<double> vals;
  cols.reserve(cols_.size() + static_cast<std::size_t>(n_));
  vals.reserve(cols.capacity());
  for (NodeId i = 0; i < n_; ++i) {
    auto ns = neighbors(i);
    auto ws = weights(i);
    bool inserted = false;
    for (std::size_t k = 0; k < ns.size(); ++k) {
      if (!inserted && ns[k] >= i) {
        if (ns[k] == i) {
          inserted = true;  // keep the existing loop weight
        } else {
          cols.push_back(i);
          vals.push_back(w);
          inserted = true;
        }
      }
      cols.push_back(ns[k]);
      vals.push_back(ws[k]);
    }
    if (!inserted) {
      cols.push_back(i);
      vals.push_back(w);
    }
    row_ptr[static_cast<std::size_t>(i) + 1] =
        static_cast<std::int64_t>(cols.size());
  }
  return from_csr(n_, std::move(row_ptr), std::move(cols), std::move(vals));
}

SparseAdjacency SparseAdjacency::from_csr(NodeId n,
                                          std::vector<std::int64_t> row_ptr,
                                          std::vector<NodeId> cols,
                                          std::vector<double> vals) {
  SparseAdjacency adj;
  adj.n_ = n;
  adj.row_ptr_ = std::move(row_ptr);
  adj.cols_ = std::move(cols);
  adj.vals_ = std::move(vals);
  return adj;
}

Matrix spmm(const SparseAdjacency& adj, const Matrix& x) {
  if (adj.num_nodes() != x.rows())
    throw std::invalid_argument(
        "spmm: adjacency over " + std::to_string(adj.num_nodes()) +
        " nodes but features have " + std::to_string(x.rows()) + " rows");
  Matrix y(x.rows(), x.cols());
  for (NodeId i = 0; i < adj.num_nodes(); ++i) {
    auto ns = adj.neighbors(i);
    auto ws = adj.weights(i);
    auto yi = y.row(i);
    for (std::size_t k = 0; k < ns.size(); ++k) {
      const double w = ws[k];
      auto xj = x.row(ns[k]);
      for (std::int64_t c = 0; c < x.cols(); ++c) yi[c] += w * xj[c];
    }
  }
  return y;
}

SparseAdjacency from_edge_set(NodeId n, const EdgeSet& edges) {
  if (edges.min_node_count() > n)
    throw std::invalid_argument(
        "from_edge_set: edge references node " +
        std::to_string(edges.min_node_count() - 1) + " but n = " +
        std::to_string(n));
  std::vector<std::int64_t> deg(static_cast<std::size_t>(n) + 1, 0);
  for (const Edge& e : edges.edges()) {
    ++deg[static_cast<std::size_t>(e.a) + 1];
    ++deg[static_cast<std::size_t>(e.b) + 1];
  }
  std::vector<std::int64_t> row_ptr(deg);
  for (NodeId i = 0; i < n; ++i) row_ptr[i + 1] += row_ptr[i];

  std::vector<NodeId> cols(static_cast<std::size_t>(row_ptr[n]));
  std::vector<std::int64_t> fill(row_ptr.begin(), row_ptr.end() - 1);
  for (const Edge& e : edges.edges()) {
    cols[static_cast<std::size_t>(fill[e.a]++)] = e.b;
    cols[static_cast<std::size_t>(fill[e.b]++)] = e.a;
  }
  for (NodeId i = 0; i < n; ++i)
    std::sort(cols.begin() + row_ptr[i], cols.begin() + row_ptr[i + 1]);

  std::vector<double> vals(cols.size(), 1.0);
  return SparseAdjacency::from_csr(n, std::move(row_ptr), std::move(cols),
                                   std::move(vals));
}

EdgeSet to_edge_set(const SparseAdjacency& adj) {
  std::vector<Edge> out;
  out.reserve(static_cast<std::size_t>(adj.num_undirected_edges()));
  for (NodeId i = 0; i < adj.num_nodes(); ++i)
    for (NodeId j : adj.neighbors(i))
      if (i < j) out.push_back(Edge{i, j});
  return EdgeSet(std::move(out));
}

}  // namespace pagraph
