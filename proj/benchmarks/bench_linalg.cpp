#include <benchmark/benchmark.h>

#include "eqfem/abstract.hpp"
#include "eqfem/solver.hpp"

using namespace eqfem;

namespace {

// 5-point Laplacian plus identity on a k x k grid.
SparseMatrix grid_matrix(std::size_t k) {
  TripletBuilder b(k * k, k * k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      const std::size_t r = i * k + j;
      b.add(r, r, 5.0);
      if (i > 0) b.add(r, r - k, -1.0);
      if (i + 1 < k) b.add(r, r + k, -1.0);
      if (j > 0) b.add(r, r - 1, -1.0);
      if (j + 1 < k) b.add(r, r + 1, -1.0);
    }
  return b.build();
}

}  // namespace

static void BM_SpMV(benchmark::State& state) {
  const SparseMatrix a = grid_matrix(state.range(0));
  const Vector x(a.cols(), 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(a.multiply(x));
  state.SetItemsProcessed(state.iterations() * a.nnz());
}
BENCHMARK(BM_SpMV)->RangeMultiplier(2)->Range(32, 256);

static void BM_Cg(benchmark::State& state) {
  const SparseMatrix a = grid_matrix(state.range(0));
  const Vector b(a.rows(), 1.0);
  CgOptions opt;
  opt.tol = 1e-10;
  for (auto _ : state) benchmark::DoNotOptimize(conjugate_gradient(a, b, opt));
}
BENCHMARK(BM_Cg)->RangeMultiplier(2)->Range(32, 128)->Unit(benchmark::kMillisecond);

static void BM_DirectSolve(benchmark::State& state) {
  const SparseMatrix a = grid_matrix(state.range(0));
  const Vector b(a.rows(), 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(solve_spd(a, b));
}
BENCHMARK(BM_DirectSolve)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

static void BM_EqualityResidual(benchmark::State& state) {
  const std::size_t n = state.range(0);
  RandomSystemGenerator gen(1);
  const OperatorSystem sys = gen.system(n, n);
  const Vector f = gen.vector(n);
  const MixedSolution approx{gen.vector(n), gen.vector(n)};
  for (auto _ : state) benchmark::DoNotOptimize(equality_residual(sys, f, approx));
}
BENCHMARK(BM_EqualityResidual)->Arg(25)->Arg(100)->Arg(400)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
