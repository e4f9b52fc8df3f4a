// Timings for the hot paths: Hamilton product, QSVD, eigendecomposition and a
// Q-DMD fit on a frame-sized stack.

#include <random>

#include <benchmark/benchmark.h>

#include "quatdmd/decompositions.hpp"
#include "quatdmd/qdmd.hpp"

namespace {

using namespace quatdmd;

QuaternionMatrix random_matrix(std::size_t rows, std::size_t cols, bool pure = false) {
  std::mt19937_64 rng(rows * 7919 + cols);
  std::normal_distribution<double> g;
  QuaternionMatrix m(rows, cols);
  for (auto& q : m.data()) q = Quaternion(pure ? 0.0 : g(rng), g(rng), g(rng), g(rng));
  return m;
}

void BM_HamiltonProduct(benchmark::State& state) {
  const auto m = random_matrix(1, 1024);
  Quaternion acc(1.0, 0.0, 0.0, 0.0);
  for (auto _ : state) {
    for (const auto& q : m.data()) acc = acc * q;
    benchmark::DoNotOptimize(acc);
    acc = Quaternion(1.0, 0.0, 0.0, 0.0);
  }
  state.SetItemsProcessed(state.iterations() * 1024);
}
BENCHMARK(BM_HamiltonProduct);

void BM_Qsvd(benchmark::State& state) {
  const auto m = random_matrix(state.range(0), state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(qsvd(m));
}
BENCHMARK(BM_Qsvd)->Args({32, 20})->Args({128, 64})->Args({1024, 49})->Unit(benchmark::kMillisecond);

void BM_StandardEigen(benchmark::State& state) {
  const auto m = random_matrix(state.range(0), state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(standard_eigen(m));
}
BENCHMARK(BM_StandardEigen)->Arg(10)->Arg(20)->Arg(49)->Unit(benchmark::kMillisecond);

void BM_QdmdFit(benchmark::State& state) {
  // Pixels x frames, pure quaternions as for an RGB stack.
  const auto stack = random_matrix(state.range(0), 50, true);
  const auto x = stack.columns(0, 49);
  const auto y = stack.columns(1, 49);
  for (auto _ : state) benchmark::DoNotOptimize(qdmd_fit(x, y));
}
BENCHMARK(BM_QdmdFit)->Arg(1024)->Arg(4096)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
