#pragma once

#include <optional>
#include <span>
#include <vector>

#include "pagraph/edge_set.hpp"
#include "pagraph/labels.hpp"
#include "pagraph/rng.hpp"
#include "pagraph/sparse.hpp"
#include "pagraph/trees.hpp"

namespace pagraph {

// Adjacency recipes. The first four compose tree edges with the supervised
// penalty/intrinsic edges; kKnn and kEpsilon are the distance-graph baselines.
enum class GraphVariant {
  kFull,            // (tree union intrinsic) minus penalty
  kIntrinsicOnly,   // intrinsic edges alone
  kPaMinusPenalty,  // tree minus penalty
  kPaOnly,          // tree edges alone
  kKnn,
  kEpsilon,
};

const char* to_string(GraphVariant v);
GraphVariant graph_variant_from_string(const std::string& s);

struct GraphRecipe {
  GraphVariant variant = GraphVariant::kFull;
  TreeConfig tree;
  int forest_size = 1;            // > 1 allowed only for RP trees
  std::optional<int> knn_k;       // kKnn; defaults to round(ln n)
  std::optional<double> epsilon;  // kEpsilon; defaults to the longest MST edge
};

// Union over trees of the per-leaf cliques: i and j are linked when they
// share a leaf in any tree.
EdgeSet pa_tree_graph(std::span<const PartitionTree> trees);

// Pairs of train nodes with different labels (interclass separation edges;
// these get removed). Only labels.train participates.
EdgeSet penalty_graph(const LabelAssignment& labels);

// Pairs of train nodes with equal labels (intraclass edges; these get added).
EdgeSet intrinsic_graph(const LabelAssignment& labels);

// (tree_edges union intrinsic) minus penalty, set semantics.
EdgeSet fuse(const EdgeSet& tree_edges, const EdgeSet& intrinsic,
             const EdgeSet& penalty);

// Symmetric k-nearest-neighbor graph: edge (i, j) iff j is among the k
// Euclidean-nearest of i or vice versa. Distance ties resolve to the lower
// index. Requires 1 <= k < n.
EdgeSet knn_graph(const Matrix& x, int k);

// All pairs within distance eps. When eps is absent it defaults to the
// longest edge of the Euclidean minimum spanning tree, which makes the
// result connected. Requires n >= 2.
EdgeSet epsilon_graph(const Matrix& x, std::optional<double> eps = {});

// max(1, round(ln n)) -- the default k for knn_graph.
int default_knn_k(NodeId n);

// Length of the longest edge of the Euclidean MST (Prim over the dense
// distance matrix, O(n^2)).
double mst_longest_edge(const Matrix& x);

// Dispatch on recipe.variant and assemble the adjacency (unit weights).
// Supervised variants reject an empty train set. RP forests draw per-tree
// seeds from rng; recipe.tree.seed is ignored here.
SparseAdjacency build_graph(const Matrix& x, const LabelAssignment& labels,
                            const GraphRecipe& recipe, const Rng& rng);

}  // namespace pagraph
