#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "pagraph/graph_build.hpp"
#include "test_util.hpp"

using namespace pagraph;

namespace reference {

// Pairwise label-comparison oracles, straight double loops.
std::set<std::pair<NodeId, NodeId>> label_pairs(const LabelAssignment& labels,
                                                bool same_class) {
  std::set<std::pair<NodeId, NodeId>> out;
  for (std::size_t a = 0; a < labels.train.size(); ++a)
    for (std::size_t b = a + 1; b < labels.train.size(); ++b) {
      const NodeId i = labels.train[a], j = labels.train[b];
      if ((labels.labels[i] == labels.labels[j]) == same_class)
        out.insert({std::min(i, j), std::max(i, j)});
    }
  return out;
}

std::set<std::pair<NodeId, NodeId>> as_set(const EdgeSet& es) {
  std::set<std::pair<NodeId, NodeId>> out;
  for (const Edge& e : es.edges()) out.insert({e.a, e.b});
  return out;
}

// Full-sort k-nn construction, independent of the nth_element path.
EdgeSet knn_brute(const Matrix& x, int k) {
  const auto n = static_cast<NodeId>(x.rows());
  std::vector<Edge> edges;
  for (NodeId i = 0; i < n; ++i) {
    std::vector<std::pair<double, NodeId>> d;
    for (NodeId j = 0; j < n; ++j) {
      if (j == i) continue;
      double s = 0.0;
      for (std::int64_t c = 0; c < x.cols(); ++c) {
        const double diff = x(i, c) - x(j, c);
        s += diff * diff;
      }
      d.push_back({s, j});
    }
    std::sort(d.begin(), d.end());
    for (int t = 0; t < k; ++t) edges.push_back(make_edge(i, d[static_cast<std::size_t>(t)].second));
  }
  return EdgeSet(std::move(edges));
}

bool connected(const EdgeSet& edges, NodeId n) {
  std::vector<std::vector<NodeId>> adj(static_cast<std::size_t>(n));
  for (const Edge& e : edges.edges()) {
    adj[static_cast<std::size_t>(e.a)].push_back(e.b);
    adj[static_cast<std::size_t>(e.b)].push_back(e.a);
  }
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<NodeId> stack{0};
  seen[0] = 1;
  while (!stack.empty()) {
    const NodeId u = stack.back();
    stack.pop_back();
    for (NodeId v : adj[static_cast<std::size_t>(u)])
      if (!seen[static_cast<std::size_t>(v)]) {
        seen[static_cast<std::size_t>(v)] = 1;
        stack.push_back(v);
      }
  }
  return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
}

}  // namespace reference

namespace {

LabelAssignment labels_from(std::vector<std::int32_t> labels,
                            std::vector<NodeId> train) {
  LabelAssignment out;
  out.n = static_cast<NodeId>(labels.size());
  std::int32_t classes = 0;
  for (std::int32_t l : labels) classes = std::max(classes, l + 1);
  for (std::int32_t c = 0; c < classes; ++c)
    out.class_names.push_back(std::to_string(c));
  out.labels = std::move(labels);
  out.train = std::move(train);
  return out;
}

Matrix blob_features(Rng& rng, NodeId n, std::vector<std::int32_t>* labels) {
  Matrix x(n, 2);
  labels->resize(static_cast<std::size_t>(n));
  const double cx[3] = {0.0, 6.0, 3.0};
  const double cy[3] = {0.0, 0.0, 5.2};
  for (NodeId i = 0; i < n; ++i) {
    const int c = i % 3;
    x(i, 0) = cx[c] + rng.normal();
    x(i, 1) = cy[c] + rng.normal();
    (*labels)[static_cast<std::size_t>(i)] = c;
  }
  return x;
}

}  // namespace

TEST_CASE("pa_tree_graph: leaves become cliques") {
  SUBCASE("single leaf of three points") {
    Matrix x(3, 2, 0.0);
    x(1, 0) = 1.0;
    x(2, 1) = 1.0;
    TreeConfig cfg;
    cfg.n0 = 20;
    const PartitionTree tree = build_pa_tree(x, cfg);
    const EdgeSet edges = pa_tree_graph(std::span(&tree, 1));
    CHECK(edges.size() == 3);
    CHECK(edges.contains(0, 1));
    CHECK(edges.contains(0, 2));
    CHECK(edges.contains(1, 2));
  }
  SUBCASE("two leaves give two disjoint edges") {
    Matrix x(4, 1);
    x(0, 0) = 0.0; x(1, 0) = 1.0; x(2, 0) = 10.0; x(3, 0) = 11.0;
    TreeConfig cfg;
    cfg.n0 = 2;
    const PartitionTree tree = build_pa_tree(x, cfg);
    const EdgeSet edges = pa_tree_graph(std::span(&tree, 1));
    CHECK(edges.size() == 2);
    CHECK(edges.contains(0, 1));
    CHECK(edges.contains(2, 3));
  }
  SUBCASE("union over two trees") {
    // Two trees over the same four nodes with different leaf pairings,
    // arranged through the feature geometry.
    Matrix xa(4, 1), xb(4, 1);
    xa(0, 0) = 0; xa(1, 0) = 1; xa(2, 0) = 10; xa(3, 0) = 11;   // {0,1},{2,3}
    xb(0, 0) = 0; xb(1, 0) = 10; xb(2, 0) = 1; xb(3, 0) = 11;   // {0,2},{1,3}
    TreeConfig cfg;
    cfg.n0 = 2;
    std::vector<PartitionTree> trees{build_pa_tree(xa, cfg), build_pa_tree(xb, cfg)};
    const EdgeSet edges = pa_tree_graph(trees);
    const EdgeSet expected(std::vector<Edge>{{0, 1}, {2, 3}, {0, 2}, {1, 3}});
    CHECK(edges == expected);
  }
}

TEST_CASE("penalty and intrinsic graphs") {
  SUBCASE("all same class: penalty empty") {
    const auto labels = labels_from({0, 0, 0}, {0, 1, 2});
    CHECK(penalty_graph(labels).empty());
    CHECK(intrinsic_graph(labels).size() == 3);
  }
  SUBCASE("one labeled node per class: intrinsic empty") {
    const auto labels = labels_from({0, 1, 2}, {0, 1, 2});
    CHECK(intrinsic_graph(labels).empty());
    CHECK(penalty_graph(labels).size() == 3);
  }
  SUBCASE("hand case [0,0,1]") {
    const auto labels = labels_from({0, 0, 1}, {0, 1, 2});
    const EdgeSet p = penalty_graph(labels);
    CHECK(p.size() == 2);
    CHECK(p.contains(0, 2));
    CHECK(p.contains(1, 2));
    const EdgeSet i = intrinsic_graph(labels);
    CHECK(i.size() == 1);
    CHECK(i.contains(0, 1));
  }
  SUBCASE("counts match the pair-enumeration oracle") {
    Rng rng(9);
    for (int trial = 0; trial < 10; ++trial) {
      const NodeId n = 40;
      std::vector<std::int32_t> raw(static_cast<std::size_t>(n));
      for (auto& l : raw) l = static_cast<std::int32_t>(rng.uniform_int(0, 3));
      std::vector<NodeId> train;
      for (NodeId i = 0; i < n; ++i)
        if (rng.uniform() < 0.5) train.push_back(i);
      if (train.empty()) train.push_back(0);
      const auto labels = labels_from(raw, train);

      CHECK(reference::as_set(penalty_graph(labels)) ==
            reference::label_pairs(labels, false));
      CHECK(reference::as_set(intrinsic_graph(labels)) ==
            reference::label_pairs(labels, true));

      // closed forms: |E^p| = (l^2 - sum c_k^2) / 2, |E^i| = sum c_k(c_k-1)/2
      const auto l = static_cast<std::int64_t>(train.size());
      std::vector<std::int64_t> counts(4, 0);
      for (NodeId i : train) ++counts[static_cast<std::size_t>(raw[static_cast<std::size_t>(i)])];
      std::int64_t sum_sq = 0, intra = 0;
      for (std::int64_t c : counts) {
        sum_sq += c * c;
        intra += c * (c - 1) / 2;
      }
      CHECK(static_cast<std::int64_t>(penalty_graph(labels).size()) ==
            (l * l - sum_sq) / 2);
      CHECK(static_cast<std::int64_t>(intrinsic_graph(labels).size()) == intra);
    }
  }
  SUBCASE("only train nodes produce supervised edges") {
    auto labels = labels_from({0, 1, 0, 1}, {0, 1});
    labels.valid = {2};
    labels.test = {3};
    const EdgeSet p = penalty_graph(labels);
    const EdgeSet i = intrinsic_graph(labels);
    for (const Edge& e : p.edges()) {
      CHECK(e.a <= 1);
      CHECK(e.b <= 1);
    }
    CHECK(i.empty());  // the only same-class pairs involve valid/test nodes
    CHECK(p.size() == 1);
  }
}

TEST_CASE("fuse: union then difference, set semantics") {
  SUBCASE("empty supervised sets leave the tree graph unchanged") {
    const EdgeSet pa(std::vector<Edge>{{0, 1}, {2, 3}});
    CHECK(fuse(pa, EdgeSet{}, EdgeSet{}) == pa);
  }
  SUBCASE("hand case") {
    const EdgeSet pa(std::vector<Edge>{{0, 2}});
    const EdgeSet intr(std::vector<Edge>{{0, 1}});
    const EdgeSet pen(std::vector<Edge>{{0, 2}});
    const EdgeSet fused = fuse(pa, intr, pen);
    CHECK(fused.size() == 1);
    CHECK(fused.contains(0, 1));
  }
  SUBCASE("random sets match the set-algebra oracle") {
    Rng rng(10);
    for (int trial = 0; trial < 15; ++trial) {
      const EdgeSet pa = testutil::random_edge_set(rng, 30, 0.1);
      const EdgeSet intr = testutil::random_edge_set(rng, 30, 0.1);
      const EdgeSet pen = testutil::random_edge_set(rng, 30, 0.1);
      auto expected = reference::as_set(pa);
      for (const auto& e : reference::as_set(intr)) expected.insert(e);
      for (const auto& e : reference::as_set(pen)) expected.erase(e);
      CHECK(reference::as_set(fuse(pa, intr, pen)) == expected);
    }
  }
}

TEST_CASE("knn graph") {
  SUBCASE("three collinear points, k=1") {
    Matrix x(3, 1);
    x(0, 0) = 0.0; x(1, 0) = 1.0; x(2, 0) = 10.0;
    const EdgeSet g = knn_graph(x, 1);
    CHECK(g.size() == 2);
    CHECK(g.contains(0, 1));
    CHECK(g.contains(1, 2));
  }
  SUBCASE("k = n-1 is the complete graph") {
    Rng rng(11);
    const Matrix x = testutil::random_matrix(rng, 8, 2);
    CHECK(knn_graph(x, 7).size() == 8 * 7 / 2);
  }
  SUBCASE("matches the brute-force distance-sort oracle") {
    Rng rng(12);
    const Matrix x = testutil::random_matrix(rng, 100, 3);
    CHECK(knn_graph(x, 4) == reference::knn_brute(x, 4));
  }
  SUBCASE("every node has degree >= k under union symmetrization") {
    Rng rng(13);
    const Matrix x = testutil::random_matrix(rng, 60, 2);
    const int k = 5;
    const SparseAdjacency adj = from_edge_set(60, knn_graph(x, k));
    for (NodeId i = 0; i < 60; ++i)
      CHECK(adj.neighbors(i).size() >= static_cast<std::size_t>(k));
  }
  SUBCASE("bad k is rejected") {
    Matrix x(3, 1, 0.0);
    CHECK_THROWS_AS((void)knn_graph(x, 0), std::invalid_argument);
    CHECK_THROWS_AS((void)knn_graph(x, 3), std::invalid_argument);
  }
}

TEST_CASE("default knn k is round(ln n), floored at 1") {
  CHECK(default_knn_k(2) == 1);
  CHECK(default_knn_k(3) == 1);
  CHECK(default_knn_k(150) == 5);
  CHECK(default_knn_k(300) == 6);
  CHECK(default_knn_k(2708) == 8);
}

TEST_CASE("epsilon graph") {
  SUBCASE("two points with defaulted eps give the single MST edge") {
    Matrix x(2, 1);
    x(1, 0) = 3.0;
    const EdgeSet g = epsilon_graph(x);
    CHECK(g.size() == 1);
    CHECK(g.contains(0, 1));
  }
  SUBCASE("1-D points 0,1,3: eps defaults to the longest MST edge") {
    Matrix x(3, 1);
    x(0, 0) = 0.0; x(1, 0) = 1.0; x(2, 0) = 3.0;
    CHECK(mst_longest_edge(x) == doctest::Approx(2.0));
    const EdgeSet g = epsilon_graph(x);
    CHECK(g.size() == 2);
    CHECK(g.contains(0, 1));
    CHECK(g.contains(1, 2));
    CHECK_FALSE(g.contains(0, 2));
  }
  SUBCASE("default-eps graph is connected on random instances") {
    Rng rng(14);
    for (int trial = 0; trial < 10; ++trial) {
      const auto n = static_cast<NodeId>(rng.uniform_int(5, 60));
      const Matrix x = testutil::random_matrix(rng, n, 2, -5.0, 5.0);
      CHECK(reference::connected(epsilon_graph(x), n));
    }
  }
  SUBCASE("explicit eps filters by distance") {
    Matrix x(3, 1);
    x(0, 0) = 0.0; x(1, 0) = 1.0; x(2, 0) = 3.0;
    const EdgeSet g = epsilon_graph(x, 1.0);
    CHECK(g.size() == 1);
    CHECK(g.contains(0, 1));
  }
  SUBCASE("n < 2 is rejected") {
    Matrix x(1, 1, 0.0);
    CHECK_THROWS_AS((void)epsilon_graph(x), std::invalid_argument);
  }
}

TEST_CASE("build_graph: variants and validation") {
  Rng data_rng(15);
  std::vector<std::int32_t> raw;
  const Matrix x = blob_features(data_rng, 300, &raw);

  LabelAssignment labels;
  labels.n = 300;
  labels.labels = raw;
  labels.class_names = {"0", "1", "2"};
  for (NodeId i = 0; i < 50; ++i) labels.train.push_back(i);
  for (NodeId i = 50; i < 300; ++i) labels.test.push_back(i);

  const Rng rng(0);

  SUBCASE("pa-only on a single leaf is a clique") {
    Rng small_rng(16);
    const Matrix xs = testutil::random_matrix(small_rng, 15, 2);
    LabelAssignment empty_labels;
    empty_labels.n = 15;
    empty_labels.labels.assign(15, -1);
    GraphRecipe recipe;
    recipe.variant = GraphVariant::kPaOnly;
    const SparseAdjacency adj = build_graph(xs, empty_labels, recipe, rng);
    CHECK(adj.num_undirected_edges() == 15 * 14 / 2);
    CHECK(adj.is_symmetric());
  }

  SUBCASE("full with no labeled pairs equals pa-only") {
    LabelAssignment one;
    one.n = 300;
    one.labels = raw;
    one.class_names = labels.class_names;
    one.train = {0};  // a single labeled node: no pairs at all
    GraphRecipe full;
    full.variant = GraphVariant::kFull;
    GraphRecipe pa;
    pa.variant = GraphVariant::kPaOnly;
    CHECK(build_graph(x, one, full, rng) == build_graph(x, one, pa, rng));
  }

  SUBCASE("full excludes every penalty pair and contains every intrinsic pair") {
    GraphRecipe recipe;
    recipe.variant = GraphVariant::kFull;
    const SparseAdjacency adj = build_graph(x, labels, recipe, rng);
    CHECK(adj.is_symmetric());
    const EdgeSet edges = to_edge_set(adj);
    for (std::size_t a = 0; a < labels.train.size(); ++a)
      for (std::size_t b = a + 1; b < labels.train.size(); ++b) {
        const NodeId i = labels.train[a], j = labels.train[b];
        if (raw[static_cast<std::size_t>(i)] == raw[static_cast<std::size_t>(j)])
          CHECK(edges.contains(i, j));
        else
          CHECK_FALSE(edges.contains(i, j));
      }
  }

  SUBCASE("supervised variants reject an empty train set") {
    LabelAssignment unlabeled;
    unlabeled.n = 300;
    unlabeled.labels.assign(300, -1);
    for (GraphVariant v : {GraphVariant::kFull, GraphVariant::kIntrinsicOnly,
                           GraphVariant::kPaMinusPenalty}) {
      GraphRecipe recipe;
      recipe.variant = v;
      CHECK_THROWS_AS((void)build_graph(x, unlabeled, recipe, rng),
                      std::invalid_argument);
    }
  }

  SUBCASE("pa forest is rejected, rp forest unions trees") {
    GraphRecipe recipe;
    recipe.variant = GraphVariant::kPaOnly;
    recipe.forest_size = 3;
    CHECK_THROWS(build_graph(x, labels, recipe, rng));

    recipe.tree.kind = TreeKind::kRandomProjection;
    const SparseAdjacency forest = build_graph(x, labels, recipe, rng);
    recipe.forest_size = 1;
    const SparseAdjacency single = build_graph(x, labels, recipe, rng);
    CHECK(forest.num_undirected_edges() >= single.num_undirected_edges());
  }

  SUBCASE("knn and epsilon variants dispatch") {
    GraphRecipe recipe;
    recipe.variant = GraphVariant::kKnn;
    const SparseAdjacency knn = build_graph(x, labels, recipe, rng);
    CHECK(to_edge_set(knn) == knn_graph(x, default_knn_k(300)));

    recipe.variant = GraphVariant::kEpsilon;
    const SparseAdjacency eps = build_graph(x, labels, recipe, rng);
    CHECK(to_edge_set(eps) == epsilon_graph(x));
  }

  SUBCASE("pa-minus-penalty equals pa-only when no penalty edge hits a leaf") {
    // Well-separated blobs with few train nodes: cross-class train pairs sit
    // in different leaves, so the penalty graph removes nothing.
    TreeConfig tree_cfg;
    const PartitionTree tree = build_pa_tree(x, tree_cfg);
    const EdgeSet pa_edges = pa_tree_graph(std::span(&tree, 1));
    const EdgeSet pen = penalty_graph(labels);
    REQUIRE(set_intersection(pa_edges, pen).empty());  // premise of this instance
    GraphRecipe minus;
    minus.variant = GraphVariant::kPaMinusPenalty;
    GraphRecipe pa_only;
    pa_only.variant = GraphVariant::kPaOnly;
    CHECK(build_graph(x, labels, minus, rng) ==
          build_graph(x, labels, pa_only, rng));
  }

  SUBCASE("pa-only components are cliques of at most n0 nodes") {
    GraphRecipe recipe;
    recipe.variant = GraphVariant::kPaOnly;
    const SparseAdjacency adj = build_graph(x, labels, recipe, rng);
    // each node's closed neighborhood is its component; cliques mean every
    // two neighbors are adjacent
    for (NodeId i = 0; i < adj.num_nodes(); ++i) {
      auto ns = adj.neighbors(i);
      CHECK(ns.size() <= 19);  // n0 - 1
      for (std::size_t a = 0; a < ns.size(); ++a)
        for (std::size_t b = a + 1; b < ns.size(); ++b)
          CHECK(adj.has_edge(ns[a], ns[b]));
    }
  }
}
