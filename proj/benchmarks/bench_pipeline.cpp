// Microbenchmarks for the reduce / sparsify / max-flow pipeline.
#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "edvwcut/max_flow.hpp"
#include "edvwcut/reduction.hpp"
#include "edvwcut/sparsify.hpp"
#include "edvwcut/splitting.hpp"

using namespace edvw;

namespace {

Hypergraph random_hypergraph(std::uint64_t seed, int nv, int ne,
                             int max_size) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> gam(0.1, 5.0);
  std::vector<std::string> names;
  for (int v = 0; v < nv; ++v) names.push_back("v" + std::to_string(v));
  std::vector<EdgeInput> edges;
  for (int i = 0; i < ne; ++i) {
    EdgeInput in;
    in.id = "e" + std::to_string(i);
    int sz = 2 + static_cast<int>(rng() % static_cast<unsigned>(max_size - 1));
    std::vector<int> pool(nv);
    for (int v = 0; v < nv; ++v) pool[v] = v;
    for (int j = 0; j < sz && j < nv; ++j) {
      std::swap(pool[j], pool[j + rng() % static_cast<unsigned>(nv - j)]);
      in.weights.emplace_back(names[pool[j]], gam(rng));
    }
    edges.push_back(in);
  }
  return build_hypergraph(names, edges);
}

void bm_reduce(benchmark::State& state, const char* split, ReduceMode mode) {
  Hypergraph h = random_hypergraph(7, 60, static_cast<int>(state.range(0)),
                                   static_cast<int>(state.range(1)));
  SplittingSpec spec = parse_split_spec(split);
  for (auto _ : state) {
    Reduction red = reduce_hypergraph(h, spec, mode, 0.1);
    benchmark::DoNotOptimize(red.graph.arcs.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void bm_reduce_exact_product(benchmark::State& state) {
  bm_reduce(state, "product", ReduceMode::Exact);
}
void bm_reduce_sparse_product(benchmark::State& state) {
  bm_reduce(state, "product", ReduceMode::Sparsified);
}
void bm_reduce_exact_minhalf(benchmark::State& state) {
  bm_reduce(state, "minhalf", ReduceMode::Exact);
}

void bm_max_flow(benchmark::State& state) {
  Hypergraph h = random_hypergraph(11, 80, static_cast<int>(state.range(0)), 6);
  SplittingSpec spec = parse_split_spec("product");
  Reduction red = reduce_hypergraph(h, spec, ReduceMode::Exact);
  TerminalAttachment att = attach_terminals(red.graph, {0}, {1});
  for (auto _ : state) {
    CutResult cut = max_flow_min_cut(att.graph, att.source, att.sink);
    benchmark::DoNotOptimize(cut.value);
  }
}

void bm_sparsify_discrete(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  std::vector<double> q, g;
  for (int i = 1; i <= n; ++i) {
    double x = static_cast<double>(i);
    q.push_back(x);
    g.push_back(std::sqrt(x * (2.0 * n - x)));
  }
  for (auto _ : state) {
    PiecewiseLinear p = sparsify_discrete(q, g, 0.1);
    benchmark::DoNotOptimize(p.pieces.data());
  }
  state.SetItemsProcessed(state.iterations() * n);
}

void bm_hypercut(benchmark::State& state, ReduceMode mode) {
  Hypergraph h = random_hypergraph(23, 40, 60, 6);
  SplittingSpec spec = parse_split_spec("product");
  for (auto _ : state) {
    ProjectedCut cut = hypergraph_min_st_cut(
        h, spec, {0}, {1}, mode, 0.1);
    benchmark::DoNotOptimize(cut.value);
  }
}

void bm_hypercut_exact(benchmark::State& state) {
  bm_hypercut(state, ReduceMode::Exact);
}
void bm_hypercut_sparse(benchmark::State& state) {
  bm_hypercut(state, ReduceMode::Sparsified);
}

BENCHMARK(bm_reduce_exact_product)->Args({50, 8})->Args({200, 8});
BENCHMARK(bm_reduce_sparse_product)->Args({50, 8})->Args({200, 8});
BENCHMARK(bm_reduce_exact_minhalf)->Args({200, 8});
BENCHMARK(bm_max_flow)->Arg(80);
BENCHMARK(bm_sparsify_discrete)->Arg(64)->Arg(1024);
BENCHMARK(bm_hypercut_exact);
BENCHMARK(bm_hypercut_sparse);

}  // namespace

BENCHMARK_MAIN();
