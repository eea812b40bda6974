#include <benchmark/benchmark.h>

#include <numeric>

#include "eqfem/adaptivity.hpp"
#include "eqfem/majorant.hpp"

using namespace eqfem;

static void BM_AssembleRt0Mass(benchmark::State& state) {
  const auto mesh = std::make_shared<const Mesh>(rect_structured(state.range(0), state.range(0)));
  const FeSpace space(mesh, SpaceKind::EdgeRT0);
  const Coefficient alpha = PiecewiseTensor(Mat2::identity());
  for (auto _ : state) benchmark::DoNotOptimize(assemble(space, BilinearForm::RT0Mass, alpha));
  state.SetItemsProcessed(state.iterations() * mesh->num_triangles());
}
BENCHMARK(BM_AssembleRt0Mass)->Arg(20)->Arg(40)->Arg(80)->Unit(benchmark::kMillisecond);

static void BM_SolveRd(benchmark::State& state) {
  const RdCase c = std::get<RdCase>(manufactured_registry("rd_poly_2d"));
  const auto mesh =
      std::make_shared<const Mesh>(rect_structured(state.range(0), state.range(0), Diagonal::Main, c.region, c.boundary));
  for (auto _ : state) benchmark::DoNotOptimize(solve_rd(c.problem, mesh));
}
BENCHMARK(BM_SolveRd)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

static void BM_MajorantRd(benchmark::State& state) {
  const RdCase c = std::get<RdCase>(manufactured_registry("rd_poly_2d"));
  const auto mesh = std::make_shared<const Mesh>(rect_structured(40, 40, Diagonal::Main, c.region, c.boundary));
  const RdSolution s = solve_rd(c.problem, mesh);
  const int degree = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(majorant_rd(c.problem, s.u, s.p, degree));
}
BENCHMARK(BM_MajorantRd)->DenseRange(4, 10, 2)->Unit(benchmark::kMillisecond);

static void BM_RefineMarked(benchmark::State& state) {
  const Mesh mesh = rect_structured(state.range(0), state.range(0));
  std::vector<double> score(mesh.num_triangles());
  for (std::size_t t = 0; t < score.size(); ++t) score[t] = 1.0 / (mesh.centroid(t).x + 0.01);
  const MarkedSet marked = mark_fixed_fraction(score, 0.3);
  for (auto _ : state) benchmark::DoNotOptimize(refine_marked(mesh, marked));
}
BENCHMARK(BM_RefineMarked)->Arg(20)->Arg(40)->Arg(80)->Unit(benchmark::kMillisecond);

static void BM_AmrEx7(benchmark::State& state) {
  const EcCase c = scenario_ex7();
  AmrSettings settings;
  settings.iterations = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(amr_run(c, c.initial_mesh(), Indicator::Majorant, settings));
}
BENCHMARK(BM_AmrEx7)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
