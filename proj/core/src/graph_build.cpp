#include "pagraph/graph_build.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "pagraph/errors.hpp"

namespace pagraph {

const char* to_string(GraphVariant v) {
  switch (v) {
    case GraphVariant::kFull: return "full";
    case GraphVariant::kIntrinsicOnly: return "intrinsic";
    case GraphVariant::kPaMinusPenalty: return "pa-minus-penalty";
    case GraphVariant::kPaOnly: return "pa";
    case GraphVariant::kKnn: return "knn";
    case GraphVariant::kEpsilon: return "epsilon";
  }
  return "?";
}

GraphVariant graph_variant_from_string(const std::string& s) {
  if (s == "full") return GraphVariant::kFull;
  if (s == "intrinsic") return GraphVariant::kIntrinsicOnly;
  if (s == "pa-minus-penalty") return GraphVariant::kPaMinusPenalty;
  if (s == "pa") return GraphVariant::kPaOnly;
  if (s == "knn") return GraphVariant::kKnn;
  if (s == "epsilon") return GraphVariant::kEpsilon;
  throw ConfigError("unknown graph variant '" + s +
                    "' (expected full|intrinsic|pa-minus-penalty|pa|knn|epsilon)");
}

EdgeSet pa_tree_graph(std::span<const PartitionTree> trees) {
  std::vector<Edge> raw;
  for (const PartitionTree& tree : trees) {
    for (const auto& leaf : tree.leaves()) {
      for (std::size_t a = 0; a < leaf.size(); ++a)
        for (std::size_t b = a + 1; b < leaf.size(); ++b)
          raw.push_back(make_edge(leaf[a], leaf[b]));
    }
  }
  return EdgeSet(std::move(raw));
}

EdgeSet penalty_graph(const LabelAssignment& labels) {
  std::vector<Edge> raw;
  const auto& tr = labels.train;
  for (std::size_t a = 0; a < tr.size(); ++a)
    for (std::size_t b = a + 1; b < tr.size(); ++b)
      if (labels.labels[tr[a]] != labels.labels[tr[b]])
        raw.push_back(make_edge(tr[a], tr[b]));
  return EdgeSet(std::move(raw));
}

EdgeSet intrinsic_graph(const LabelAssignment& labels) {
  std::vector<Edge> raw;
  const auto& tr = labels.train;
  for (std::size_t a = 0; a < tr.size(); ++a)
    for (std::size_t b = a + 1; b < tr.size(); ++b)
      if (labels.labels[tr[a]] == labels.labels[tr[b]])
        raw.push_back(make_edge(tr[a], tr[b]));
  return EdgeSet(std::move(raw));
}

EdgeSet fuse(const EdgeSet& tree_edges, const EdgeSet& intrinsic,
             const EdgeSet& penalty) {
  return set_difference(set_union(tree_edges, intrinsic), penalty);
}

namespace {

double sq_dist(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

}  // namespace

int default_knn_k(NodeId n) {
  return std::max(1, static_cast<int>(std::lround(std::log(static_cast<double>(n)))));
}

EdgeSet knn_graph(const Matrix& x, int k) {
  const NodeId n = static_cast<NodeId>(x.rows());
  if (k < 1 || k >= n)
    throw std::invalid_argument("knn_graph: need 1 <= k < n, got k = " +
                                std::to_string(k) + ", n = " + std::to_string(n));
  std::vector<Edge> raw;
  raw.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(k));
  std::vector<std::pair<double, NodeId>> cand(static_cast<std::size_t>(n) - 1);
  for (NodeId i = 0; i < n; ++i) {
    std::size_t m = 0;
    for (NodeId j = 0; j < n; ++j) {
      if (j == i) continue;
      cand[m++] = {sq_dist(x.row(i), x.row(j)), j};
    }
    // (distance, index) order makes distance ties pick the lower index.
    std::nth_element(cand.begin(), cand.begin() + (k - 1), cand.end());
    std::sort(cand.begin(), cand.begin() + k);
    for (int t = 0; t < k; ++t) raw.push_back(make_edge(i, cand[t].second));
  }
  return EdgeSet(std::move(raw));  // union symmetrization via dedup
}

double mst_longest_edge(const Matrix& x) {
  const NodeId n = static_cast<NodeId>(x.rows());
  if (n < 2) throw std::invalid_argument("mst_longest_edge: need n >= 2");
  // Prim with a dense candidate array; O(n^2) time, O(n) memory.
  std::vector<double> best(static_cast<std::size_t>(n),
                           std::numeric_limits<double>::infinity());
  std::vector<char> done(static_cast<std::size_t>(n), 0);
  best[0] = 0.0;
  double longest_sq = 0.0;
  for (NodeId round = 0; round < n; ++round) {
    NodeId u = -1;
    for (NodeId i = 0; i < n; ++i)
      if (!done[i] && (u < 0 || best[i] < best[u])) u = i;
    done[u] = 1;
    longest_sq = std::max(longest_sq, best[u]);
    for (NodeId v = 0; v < n; ++v) {
      if (done[v]) continue;
      const double d = sq_dist(x.row(u), x.row(v));
      if (d < best[v]) best[v] = d;
    }
  }
  return std::sqrt(longest_sq);
}

EdgeSet epsilon_graph(const Matrix& x, std::optional<double> eps) {
  const NodeId n = static_cast<NodeId>(x.rows());
  if (n < 2) throw std::invalid_argument("epsilon_graph: need n >= 2");
  const double e = eps.value_or(mst_longest_edge(x));
  std::vector<Edge> raw;
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = i + 1; j < n; ++j)
      if (std::sqrt(sq_dist(x.row(i), x.row(j))) <= e)
        raw.push_back(Edge{i, j});
  return EdgeSet(std::move(raw));
}

namespace {

bool is_supervised(GraphVariant v) {
  return v == GraphVariant::kFull || v == GraphVariant::kIntrinsicOnly ||
         v == GraphVariant::kPaMinusPenalty;
}

std::vector<PartitionTree> build_forest(const Matrix& x,
                                        const GraphRecipe& recipe,
                                        const Rng& rng) {
  std::vector<PartitionTree> trees;
  trees.reserve(static_cast<std::size_t>(recipe.forest_size));
  for (int t = 0; t < recipe.forest_size; ++t) {
    TreeConfig cfg = recipe.tree;
    if (cfg.kind == TreeKind::kPrincipalAxis) {
      trees.push_back(build_pa_tree(x, cfg));
    } else {
      cfg.seed = rng.fork(static_cast<std::uint64_t>(t)).seed();
      trees.push_back(build_rp_tree(x, cfg));
    }
  }
  return trees;
}

}  // namespace

SparseAdjacency build_graph(const Matrix& x, const LabelAssignment& labels,
                            const GraphRecipe& recipe, const Rng& rng) {
  const NodeId n = static_cast<NodeId>(x.rows());
  if (labels.n != n)
    throw std::invalid_argument("build_graph: labels cover " +
                                std::to_string(labels.n) +
                                " nodes but features have " +
                                std::to_string(n) + " rows");
  if (recipe.forest_size < 1)
    throw ConfigError("build_graph: forest_size must be >= 1");
  if (recipe.forest_size > 1 && recipe.tree.kind == TreeKind::kPrincipalAxis)
    throw ConfigError(
        "build_graph: a PA-tree forest would duplicate one deterministic "
        "tree; forest_size > 1 requires rp trees");
  if (is_supervised(recipe.variant) && labels.train.empty())
    throw std::invalid_argument(
        std::string("build_graph: variant '") + to_string(recipe.variant) +
        "' needs supervised edges but the train set is empty");

  EdgeSet edges;
  switch (recipe.variant) {
    case GraphVariant::kFull: {
      const auto trees = build_forest(x, recipe, rng);
      edges = fuse(pa_tree_graph(trees), intrinsic_graph(labels),
                   penalty_graph(labels));
      break;
    }
    case GraphVariant::kIntrinsicOnly:
      edges = intrinsic_graph(labels);
      break;
    case GraphVariant::kPaMinusPenalty: {
      const auto trees = build_forest(x, recipe, rng);
      edges = set_difference(pa_tree_graph(trees), penalty_graph(labels));
      break;
    }
    case GraphVariant::kPaOnly: {
      const auto trees = build_forest(x, recipe, rng);
      edges = pa_tree_graph(trees);
      break;
    }
    case GraphVariant::kKnn:
      edges = knn_graph(x, recipe.knn_k.value_or(default_knn_k(n)));
      break;
    case GraphVariant::kEpsilon:
      edges = epsilon_graph(x, recipe.epsilon);
      break;
  }
  return from_edge_set(n, edges);
}

}  // namespace pagraph
