#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <filesystem>
#include <map>
#include <set>

#include "pagraph/data_io.hpp"
#include "pagraph/errors.hpp"
#include "pagraph/experiment.hpp"
#include "test_util.hpp"

using namespace pagraph;
namespace fs = std::filesystem;

namespace reference {

// Exhaustive O(n^2) pair classification.
AdjacencyConfusion confusion_brute(const EdgeSet& constructed, const EdgeSet& truth,
                                   NodeId n) {
  AdjacencyConfusion out;
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = i + 1; j < n; ++j) {
      const bool c = constructed.contains(i, j);
      const bool t = truth.contains(i, j);
      if (c && t) ++out.tp;
      else if (c && !t) ++out.fp;
      else if (!c && t) ++out.fn;
      else ++out.tn;
    }
  return out;
}

// Majority vote with the documented tie rules, via full sort.
std::vector<std::int32_t> knn_vote_brute(const Matrix& x_train,
                                         std::span<const std::int32_t> y_train,
                                         const Matrix& x_query, int k) {
  std::vector<std::int32_t> out;
  for (std::int64_t q = 0; q < x_query.rows(); ++q) {
    std::vector<std::pair<double, std::int64_t>> d;
    for (std::int64_t t = 0; t < x_train.rows(); ++t) {
      double s = 0.0;
      for (std::int64_t j = 0; j < x_query.cols(); ++j) {
        const double diff = x_query(q, j) - x_train(t, j);
        s += diff * diff;
      }
      d.push_back({s, t});
    }
    std::sort(d.begin(), d.end());
    std::map<std::int32_t, int> votes;
    for (int i = 0; i < k; ++i)
      ++votes[y_train[static_cast<std::size_t>(d[static_cast<std::size_t>(i)].second)]];
    std::int32_t best = -1;
    int best_count = -1;
    for (const auto& [cls, count] : votes)
      if (count > best_count) {  // map iterates ascending: ties keep lowest id
        best = cls;
        best_count = count;
      }
    out.push_back(best);
  }
  return out;
}

}  // namespace reference

namespace {

LabelAssignment tiny_labels(std::vector<std::int32_t> labels,
                            std::vector<NodeId> subset) {
  LabelAssignment out;
  out.n = static_cast<NodeId>(labels.size());
  std::int32_t classes = 0;
  for (std::int32_t l : labels) classes = std::max(classes, l + 1);
  for (std::int32_t c = 0; c < classes; ++c)
    out.class_names.push_back(std::to_string(c));
  out.labels = std::move(labels);
  out.test = std::move(subset);
  return out;
}

// Every regular file under dir, as relative path -> bytes.
std::map<std::string, std::string> snapshot_tree(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& entry : fs::recursive_directory_iterator(dir))
    if (entry.is_regular_file())
      out[fs::relative(entry.path(), dir).string()] =
          testutil::read_text(entry.path().string());
  return out;
}

KvConfig blobs_manifest(const std::string& extra = "") {
  return KvConfig::parse_string(
      "mode = train\n"
      "runs = 2\n"
      "seed = 5\n"
      "dataset.source = blobs\n"
      "dataset.n = 90\n"
      "dataset.split = 24/12/54\n"
      "model.kind = sgc\n"
      "model.epochs = 40\n"
      "model.lr = 0.1\n" +
      extra);
}

}  // namespace

TEST_CASE("accuracy: trivial fractions and error paths") {
  const auto labels = tiny_labels({0, 1, 1, 0}, {0, 1, 2, 3});
  const std::vector<NodeId> subset{0, 1, 2, 3};

  CHECK(accuracy(std::vector<std::int32_t>{0, 1, 1, 0}, labels, subset) == 1.0);
  CHECK(accuracy(std::vector<std::int32_t>{1, 0, 0, 1}, labels, subset) == 0.0);
  CHECK(accuracy(std::vector<std::int32_t>{0, 1, 1, 1}, labels, subset) == 0.75);

  CHECK_THROWS_AS((void)accuracy(std::vector<std::int32_t>{0, 1, 1, 0}, labels,
                                 std::vector<NodeId>{}),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)accuracy(std::vector<std::int32_t>{0, 1}, labels, subset),
                  std::invalid_argument);
}

TEST_CASE("adjacency_confusion: trivial cases") {
  const EdgeSet truth(std::vector<Edge>{{0, 1}, {1, 2}, {2, 3}});
  SUBCASE("identical graphs") {
    const AdjacencyConfusion c = adjacency_confusion(truth, truth, 5);
    CHECK(c.fn == 0);
    CHECK(c.fp == 0);
    CHECK(c.tp == 3);
    CHECK(c.tn == 7);
    CHECK(c.total() == 10);
    CHECK(c.hit_rate() == 1.0);
    CHECK(c.removal_rate() == 1.0);
  }
  SUBCASE("empty constructed graph") {
    const AdjacencyConfusion c = adjacency_confusion(EdgeSet{}, truth, 5);
    CHECK(c.tp == 0);
    CHECK(c.fn == 3);
    CHECK(c.fp == 0);
    CHECK(c.tn == 10 - 3);
    CHECK(c.hit_rate() == 0.0);
    CHECK(c.removal_rate() == 1.0);
  }
}

TEST_CASE("adjacency_confusion: matches the brute force on random pairs") {
  Rng rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    const NodeId n = 15;
    const EdgeSet a = testutil::random_edge_set(rng, n, 0.3);
    const EdgeSet b = testutil::random_edge_set(rng, n, 0.3);
    const AdjacencyConfusion fast = adjacency_confusion(a, b, n);
    const AdjacencyConfusion brute = reference::confusion_brute(a, b, n);
    CHECK(fast.tn == brute.tn);
    CHECK(fast.fn == brute.fn);
    CHECK(fast.fp == brute.fp);
    CHECK(fast.tp == brute.tp);
    CHECK(fast.total() == n * (n - 1) / 2);
  }
}

TEST_CASE("knn_classify: documented tie rules and the vote oracle") {
  SUBCASE("k=1 on a train point returns its label") {
    Matrix train(3, 1);
    train(0, 0) = 0.0; train(1, 0) = 5.0; train(2, 0) = 9.0;
    const std::vector<std::int32_t> y{2, 0, 1};
    Matrix q(1, 1);
    q(0, 0) = 5.0;
    CHECK(knn_classify(train, y, q, 1) == std::vector<std::int32_t>{0});
  }
  SUBCASE("k = train size returns the majority class") {
    Matrix train(5, 1);
    for (int i = 0; i < 5; ++i) train(i, 0) = i;
    const std::vector<std::int32_t> y{1, 1, 1, 0, 0};
    Matrix q(2, 1);
    q(0, 0) = -3.0;
    q(1, 0) = 10.0;
    const auto pred = knn_classify(train, y, q, 5);
    CHECK(pred == std::vector<std::int32_t>{1, 1});
  }
  SUBCASE("vote ties pick the lowest class id") {
    Matrix train(2, 1);
    train(0, 0) = -1.0;
    train(1, 0) = 1.0;
    const std::vector<std::int32_t> y{1, 0};
    Matrix q(1, 1);  // equidistant
    CHECK(knn_classify(train, y, q, 2) == std::vector<std::int32_t>{0});
  }
  SUBCASE("random instances match the brute-force oracle") {
    Rng rng(2);
    for (int trial = 0; trial < 10; ++trial) {
      const Matrix train = testutil::random_matrix(rng, 30, 3);
      std::vector<std::int32_t> y(30);
      for (auto& l : y) l = static_cast<std::int32_t>(rng.uniform_int(0, 2));
      const Matrix query = testutil::random_matrix(rng, 12, 3);
      const int k = static_cast<int>(rng.uniform_int(1, 9));
      CHECK(knn_classify(train, y, query, k) ==
            reference::knn_vote_brute(train, y, query, k));
    }
  }
  SUBCASE("bad k rejected") {
    Matrix train(3, 1, 0.0);
    const std::vector<std::int32_t> y{0, 0, 0};
    CHECK_THROWS_AS((void)knn_classify(train, y, train, 4), std::invalid_argument);
  }
}

TEST_CASE("run_experiment: same manifest twice is byte-identical") {
  testutil::TempDir dir("det");
  const KvConfig m1 = blobs_manifest();
  const KvConfig m2 = blobs_manifest();
  run_experiment(m1, dir.file("a"));
  run_experiment(m2, dir.file("b"));

  auto a = snapshot_tree(dir.path / "a");
  auto b = snapshot_tree(dir.path / "b");
  REQUIRE(!a.empty());
  a.erase("timings.csv");  // wall-clock, documented as non-deterministic
  b.erase("timings.csv");
  CHECK(a == b);
  CHECK(a.count("aggregate.csv") == 1);
  CHECK(a.count("sgc/runs.csv") == 1);
  CHECK(a.count("sgc/run0_loss.csv") == 1);
  CHECK(a.count("config.txt") == 1);
}

TEST_CASE("run_experiment: workers > 1 produces the same bytes") {
  testutil::TempDir dir("workers");
  run_experiment(blobs_manifest(), dir.file("serial"));
  run_experiment(blobs_manifest("workers = 4\n"), dir.file("parallel"));
  auto a = snapshot_tree(dir.path / "serial");
  auto b = snapshot_tree(dir.path / "parallel");
  a.erase("timings.csv");
  b.erase("timings.csv");
  a.erase("config.txt");  // differs by the workers key, by design
  b.erase("config.txt");
  CHECK(a == b);
}

TEST_CASE("run_experiment: train mode with one run writes model artifacts") {
  testutil::TempDir dir("artifacts");
  const KvConfig m = KvConfig::parse_string(
      "mode = train\nruns = 1\nseed = 3\ndataset.source = blobs\n"
      "dataset.n = 60\ndataset.split = 20/10/30\nmodel.kind = both\n"
      "model.epochs = 30\nmodel.lr = 0.1\n");
  const ExperimentReport report = run_experiment(m, dir.file("out"));
  REQUIRE(report.cells.size() == 2);
  CHECK(fs::exists(dir.path / "out" / "sgc" / "model.ckpt"));
  CHECK(fs::exists(dir.path / "out" / "sgc" / "predictions.csv"));
  CHECK(fs::exists(dir.path / "out" / "gcn" / "model.ckpt"));
  for (const auto& cell : report.cells) {
    REQUIRE(cell.runs.size() == 1);
    CHECK(cell.runs[0].test_accuracy >= 0.0);
    CHECK(cell.runs[0].test_accuracy <= 1.0);
  }
}

TEST_CASE("run_experiment: ablation with no labeled pairs degenerates") {
  testutil::TempDir dir("ablation");
  // one train node: penalty and intrinsic graphs are both empty, so the
  // full recipe equals the pa recipe exactly, run by run
  const KvConfig m = KvConfig::parse_string(
      "mode = ablation\nruns = 2\nseed = 11\ndataset.source = blobs\n"
      "dataset.n = 60\ndataset.split = 1/0/40\nmodel.kind = sgc\n"
      "model.epochs = 25\nmodel.lr = 0.1\n");
  const ExperimentReport report = run_experiment(m, dir.file("out"));
  REQUIRE(report.cells.size() == 4);
  const CellResult* full = nullptr;
  const CellResult* pa = nullptr;
  for (const auto& cell : report.cells) {
    if (cell.id == "full_sgc") full = &cell;
    if (cell.id == "pa_sgc") pa = &cell;
  }
  REQUIRE(full != nullptr);
  REQUIRE(pa != nullptr);
  for (std::size_t r = 0; r < full->runs.size(); ++r)
    CHECK(full->runs[r].test_accuracy == pa->runs[r].test_accuracy);
}

TEST_CASE("run_experiment: smoothing sweep emits sweep.csv and sweep.svg") {
  testutil::TempDir dir("sweep");
  const KvConfig m = KvConfig::parse_string(
      "mode = sweep\nruns = 2\nseed = 7\ndataset.source = blobs\n"
      "dataset.n = 60\ndataset.split = 20/0/39\nmodel.kind = sgc\n"
      "model.epochs = 25\nmodel.lr = 0.1\nsweep.axis = smoothing\n"
      "sweep.values = 0,2,4\n");
  const ExperimentReport report = run_experiment(m, dir.file("out"));
  CHECK(report.cells.size() == 3);
  CHECK(report.cells[0].id == "sgc_k0");
  CHECK(fs::exists(dir.path / "out" / "sweep.csv"));
  CHECK(fs::exists(dir.path / "out" / "sweep.svg"));
}

TEST_CASE("run_experiment: blob smoothing sweep peaks near K=2 and decays by K=50") {
  testutil::TempDir dir("blobsweep");
  const KvConfig m = KvConfig::parse_string(
      "mode = sweep\nruns = 10\nseed = 42\ndataset.source = blobs\n"
      "dataset.n = 300\ndataset.split = 50/50/200\nmodel.kind = sgc\n"
      "model.epochs = 300\nmodel.lr = 0.1\nsweep.axis = smoothing\n"
      "sweep.values = 1,2,4,10,50\nplots = false\nworkers = 4\n");
  const ExperimentReport report = run_experiment(m, dir.file("out"));
  REQUIRE(report.cells.size() == 5);
  double best = 0.0, at_k2 = 0.0, at_k50 = 0.0;
  for (const auto& cell : report.cells) {
    best = std::max(best, cell.mean_accuracy());
    if (cell.id == "sgc_k2") at_k2 = cell.mean_accuracy();
    if (cell.id == "sgc_k50") at_k50 = cell.mean_accuracy();
  }
  CHECK(at_k2 >= best - 0.02);
  CHECK(at_k2 <= best);
  CHECK(at_k50 <= at_k2);
}

TEST_CASE("run_experiment: forest sweep needs rp trees") {
  const KvConfig bad = KvConfig::parse_string(
      "mode = sweep\ndataset.source = blobs\ndataset.split = 20/0/39\n"
      "dataset.n = 60\nsweep.axis = forest\nsweep.values = 1,5\n");
  testutil::TempDir dir("forest");
  CHECK_THROWS_AS((void)run_experiment(bad, dir.file("x")), ConfigError);

  const KvConfig good = KvConfig::parse_string(
      "mode = sweep\nruns = 2\nseed = 2\ndataset.source = blobs\n"
      "dataset.n = 60\ndataset.split = 20/0/39\ngraph.tree = rp\n"
      "model.epochs = 20\nmodel.lr = 0.1\nsweep.axis = forest\n"
      "sweep.values = 1..7:3\n");  // range-with-step syntax: 1, 4, 7
  const ExperimentReport report = run_experiment(good, dir.file("y"));
  CHECK(report.cells.size() == 3);
  CHECK(report.cells[0].id == "sgc_trees1");
  CHECK(report.cells[2].id == "sgc_trees7");
}

TEST_CASE("run_experiment: compare-adjacency") {
  testutil::TempDir dir("compare");
  // truth file over the same node count as the dataset
  std::string edges = "# n=60\n";
  for (int i = 0; i + 1 < 60; i += 2)
    edges += std::to_string(i) + " " + std::to_string(i + 1) + "\n";
  testutil::write_text(dir.file("truth.edges"), edges);

  const KvConfig m = KvConfig::parse_string(
      "mode = compare-adjacency\nseed = 3\ndataset.source = blobs\n"
      "dataset.n = 60\ndataset.split = 20/0/0\n"
      "compare.truth = " + dir.file("truth.edges") + "\n");
  const ExperimentReport report = run_experiment(m, dir.file("out"));
  REQUIRE(report.confusions.size() == 3);  // full,knn,epsilon by default
  for (const auto& row : report.confusions)
    CHECK(row.confusion.total() == 60 * 59 / 2);
  CHECK(fs::exists(dir.path / "out" / "confusion.csv"));
}

TEST_CASE("run_experiment: baseline-knn") {
  testutil::TempDir dir("baseline");
  const KvConfig m = KvConfig::parse_string(
      "mode = baseline-knn\nruns = 3\nseed = 1\ndataset.source = blobs\n"
      "dataset.n = 90\ndataset.split = 30/0/60\nbaseline.k = 5\n");
  const ExperimentReport report = run_experiment(m, dir.file("out"));
  REQUIRE(report.cells.size() == 1);
  CHECK(report.cells[0].id == "knn5");
  // separated blobs: the baseline should be near-perfect
  CHECK(report.cells[0].mean_accuracy() > 0.9);
}

TEST_CASE("run_experiment: rejects bad manifests before any compute") {
  testutil::TempDir dir("reject");
  SUBCASE("unknown key") {
    const KvConfig m = blobs_manifest("mdoel.kind = sgc\n");
    CHECK_THROWS_WITH_AS((void)run_experiment(m, dir.file("a")),
                         doctest::Contains("mdoel.kind"), ConfigError);
  }
  SUBCASE("infeasible split") {
    const KvConfig m = KvConfig::parse_string(
        "mode = train\ndataset.source = blobs\ndataset.n = 50\n"
        "dataset.split = 40/20/10\n");
    CHECK_THROWS_AS((void)run_experiment(m, dir.file("b")), ConfigError);
  }
  SUBCASE("missing mode") {
    CHECK_THROWS_AS(
        (void)run_experiment(KvConfig::parse_string("seed = 1\n"), dir.file("c")),
        ConfigError);
  }
  SUBCASE("gcn with k = 0") {
    const KvConfig m = KvConfig::parse_string(
        "mode = train\ndataset.source = blobs\ndataset.n = 60\n"
        "dataset.split = 20/0/39\nmodel.kind = gcn\nmodel.k = 0\n");
    CHECK_THROWS_AS((void)run_experiment(m, dir.file("d")), ConfigError);
  }
}
