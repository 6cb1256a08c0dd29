#include <benchmark/benchmark.h>

#include "pagraph/classifiers.hpp"
#include "pagraph/data_io.hpp"
#include "pagraph/graph_build.hpp"

using namespace pagraph;

namespace {

Dataset blobs(NodeId n) {
  Rng rng(1);
  return make_synthetic(SyntheticKind::kBlobs, n, 1.0, rng);
}

LabelAssignment split_of(const Dataset& ds, NodeId train) {
  Rng rng(2);
  const auto n = static_cast<NodeId>(ds.features.rows());
  return make_split(ds.labels, ds.class_names, {train, 0, static_cast<NodeId>(n - train)}, rng);
}

void BM_pa_tree_build(benchmark::State& state) {
  const Dataset ds = blobs(static_cast<NodeId>(state.range(0)));
  TreeConfig cfg;
  for (auto _ : state)
    benchmark::DoNotOptimize(build_pa_tree(ds.features, cfg));
}
BENCHMARK(BM_pa_tree_build)->Arg(1000)->Arg(10000);

void BM_full_graph_build(benchmark::State& state) {
  const Dataset ds = blobs(static_cast<NodeId>(state.range(0)));
  const LabelAssignment labels = split_of(ds, static_cast<NodeId>(state.range(0) / 10));
  GraphRecipe recipe;
  const Rng rng(3);
  for (auto _ : state)
    benchmark::DoNotOptimize(build_graph(ds.features, labels, recipe, rng));
}
BENCHMARK(BM_full_graph_build)->Arg(1000)->Arg(5000);

void BM_spmm(benchmark::State& state) {
  const Dataset ds = blobs(static_cast<NodeId>(state.range(0)));
  const LabelAssignment labels = split_of(ds, static_cast<NodeId>(state.range(0) / 10));
  GraphRecipe recipe;
  const SparseAdjacency adj = build_graph(ds.features, labels, recipe, Rng(3));
  for (auto _ : state)
    benchmark::DoNotOptimize(spmm(adj, ds.features));
}
BENCHMARK(BM_spmm)->Arg(1000)->Arg(10000);

void BM_knn_graph(benchmark::State& state) {
  const Dataset ds = blobs(static_cast<NodeId>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(knn_graph(ds.features, default_knn_k(static_cast<NodeId>(state.range(0)))));
}
BENCHMARK(BM_knn_graph)->Arg(500)->Arg(2000);

// One full-batch epoch each, after shared precompute: the per-epoch gap is
// the whole point of the SGC formulation.
void BM_sgc_epoch(benchmark::State& state) {
  const Dataset ds = blobs(static_cast<NodeId>(state.range(0)));
  const LabelAssignment labels = split_of(ds, static_cast<NodeId>(state.range(0) / 10));
  GraphRecipe recipe;
  const SparseAdjacency adj = build_graph(ds.features, labels, recipe, Rng(3));
  const Matrix xbar = smooth(normalize(adj), ds.features, 2);
  TrainConfig cfg;
  cfg.epochs = 1;
  for (auto _ : state)
    benchmark::DoNotOptimize(sgc_fit_precomputed(xbar, labels, cfg));
}
BENCHMARK(BM_sgc_epoch)->Arg(2000)->Arg(10000);

void BM_gcn_epoch(benchmark::State& state) {
  const Dataset ds = blobs(static_cast<NodeId>(state.range(0)));
  const LabelAssignment labels = split_of(ds, static_cast<NodeId>(state.range(0) / 10));
  GraphRecipe recipe;
  const SparseAdjacency adj = build_graph(ds.features, labels, recipe, Rng(3));
  const NormalizedAdjacency abar = normalize(adj);
  TrainConfig cfg;
  cfg.epochs = 1;
  for (auto _ : state)
    benchmark::DoNotOptimize(gcn_fit_precomputed(abar, ds.features, labels, cfg));
}
BENCHMARK(BM_gcn_epoch)->Arg(2000)->Arg(10000);

}  // namespace

BENCHMARK_MAIN();
