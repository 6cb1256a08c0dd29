#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pagraph/edge_set.hpp"
#include "pagraph/matrix.hpp"

namespace pagraph {

// Symmetric sparse adjacency in compressed row form. Neighbor lists are
// sorted and every stored entry (i, j, w) has a mirrored (j, i, w). Builders
// in this project emit weight 1.0; normalization introduces real weights.
class SparseAdjacency {
 public:
  SparseAdjacency() = default;

  NodeId num_nodes() const { return n_; }

  // Number of stored undirected pairs i < j (self loops counted separately).
  std::int64_t num_undirected_edges() const;
  std::int64_t num_self_loops() const;

  std::span<const NodeId> neighbors(NodeId i) const;
  std::span<const double> weights(NodeId i) const;

  // Weighted degree: sum of row weights.
  double degree(NodeId i) const;

  bool has_edge(NodeId i, NodeId j) const;
  double weight(NodeId i, NodeId j) const;  // 0 when absent

  // O(edges) validation of the symmetry invariant.
  bool is_symmetric() const;

  // Copy with unit self loops added on every node (existing self loops kept).
  SparseAdjacency with_self_loops(double w = 1.0) const;

  friend bool operator==(const SparseAdjacency&,
                         const SparseAdjacency&) = default;

  // entries must already be symmetric, sorted per row, duplicate-free.
  static SparseAdjacency from_csr(NodeId n, std::vector<std::int64_t> row_ptr,
                                  std::vector<NodeId> cols,
                                  std::vector<double> vals);

 private:
  NodeId n_ = 0;
  std::vector<std::int64_t> row_ptr_;  // size n + 1
  std::vector<NodeId> cols_;
  std::vector<double> vals_;
};

// Y[i] = sum_j w_ij * X[j]. Throws std::invalid_argument with both sizes on
// a node-count mismatch.
Matrix spmm(const SparseAdjacency& adj, const Matrix& x);

// Unit-weight adjacency from an edge set. Rejects indices >= n.
SparseAdjacency from_edge_set(NodeId n, const EdgeSet& edges);

// Off-diagonal structure as an edge set (self loops are not representable
// and are skipped).
EdgeSet to_edge_set(const SparseAdjacency& adj);

}  // namespace pagraph
