#pragma once

#include <span>
#include <vector>

#include "pagraph/matrix.hpp"
#include "pagraph/sparse.hpp"

namespace pagraph {

// Symmetrically normalized adjacency with self loops. Entries are implicitly
// scale[i] * (A + I)_ij * scale[j] with scale[i] = degree^{-1/2}; the matrix
// itself is never densified and powers of it are never materialized.
class NormalizedAdjacency {
 public:
  NormalizedAdjacency() = default;

  const SparseAdjacency& base() const { return base_; }  // A + I
  std::span<const double> scale() const { return scale_; }
  NodeId num_nodes() const { return base_.num_nodes(); }

  // One smoothing step: y = scale .* base * (scale .* x), i.e. the
  // normalized operator applied to x.
  Matrix apply(const Matrix& x) const;

 private:
  friend NormalizedAdjacency normalize(const SparseAdjacency&);

  SparseAdjacency base_;
  std::vector<double> scale_;
};

// Adds unit self loops, computes degrees, returns the scaled operator. Self
// loops guarantee every degree >= 1, so no division by zero is possible.
NormalizedAdjacency normalize(const SparseAdjacency& adj);

// k successive applications of the normalized operator. k = 0 returns x
// unchanged.
Matrix smooth(const NormalizedAdjacency& adj_bar, const Matrix& x, int k);

}  // namespace pagraph
