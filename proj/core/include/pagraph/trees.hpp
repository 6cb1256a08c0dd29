#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pagraph/matrix.hpp"
#include "pagraph/rng.hpp"

namespace pagraph {

enum class TreeKind { kPrincipalAxis, kRandomProjection };

struct TreeConfig {
  int n0 = 20;  // max points per leaf
  TreeKind kind = TreeKind::kPrincipalAxis;
  std::uint64_t seed = 0;   // random-projection direction stream; unused for PA
  int power_iters = 100;    // power-iteration cap (PA)
  double power_tol = 1e-9;  // power-iteration convergence tolerance (PA)
};

// How an internal node's children were separated. Projection is the normal
// median-split path; the index fallback fires on degenerate subsets (all
// projections tied, or zero variance) to guarantee termination.
enum class SplitRule { kProjection, kIndexFallback };

// Binary space-partitioning tree whose leaves partition the node indices
// [0, n). Immutable after construction.
class PartitionTree {
 public:
  struct Node {
    int left = -1;   // child ids; -1/-1 marks a leaf
    int right = -1;
    SplitRule rule = SplitRule::kProjection;
    std::vector<double> direction;  // unit split direction (projection rule)
    double threshold = 0.0;         // points with projection <= threshold go left
    std::vector<NodeId> points;     // leaf only, ascending

    bool is_leaf() const { return left < 0; }
  };

  int root() const { return 0; }
  const Node& node(int id) const { return nodes_[static_cast<std::size_t>(id)]; }
  const std::vector<Node>& nodes() const { return nodes_; }
  NodeId num_points() const { return num_points_; }
  const TreeConfig& config() const { return config_; }

  // Leaf point lists in left-to-right order; together they partition [0, n).
  std::vector<std::vector<NodeId>> leaves() const;

 private:
  friend PartitionTree build_partition_tree(const Matrix&, const TreeConfig&);

  std::vector<Node> nodes_;
  NodeId num_points_ = 0;
  TreeConfig config_;
};

// Splits each subset at the lower median of projections onto the subset's
// first principal component (power iteration on the centered covariance).
PartitionTree build_pa_tree(const Matrix& x, const TreeConfig& cfg);

// Same recursion with a fresh uniformly random unit direction per split,
// drawn deterministically from cfg.seed.
PartitionTree build_rp_tree(const Matrix& x, const TreeConfig& cfg);

// First principal component of the rows of x restricted to subset, via power
// iteration on the centered covariance (applied matrix-free, the d x d
// covariance is never formed). Sign convention: the entry of largest
// magnitude is positive. Returns an empty vector when the subset has zero
// variance or the iteration cannot extract a direction.
std::vector<double> principal_direction(const Matrix& x,
                                        std::span<const NodeId> subset,
                                        int max_iters, double tol);

}  // namespace pagraph
