#include "darcy/analysis.hpp"
#include "darcy/assembly.hpp"
#include "darcy/solver.hpp"

#include <benchmark/benchmark.h>

using namespace darcy;

namespace {

std::shared_ptr<const Mesh> square(int n) { return std::make_shared<const Mesh>(2.0, 2.0, n, n); }

void BM_ElementKernel(benchmark::State &state) {
  const auto k = static_cast<int>(state.range(0));
  const FormulationSpec spec(Method::Cgls, k, k);
  const ElementKernel kernel(spec, gauss_rule(spec.default_quadrature_order()));
  const auto exact = make_manufactured(10.0, 1.0);
  const ScalarField f = [&](const Point2 &x) { return exact->source(x); };
  const CellGeometry cell{{0.5, 0.5}, 0.25, 0.25};
  for (auto _ : state) benchmark::DoNotOptimize(kernel.compute(cell, exact->medium(), f));
}
BENCHMARK(BM_ElementKernel)->DenseRange(1, 3);

void BM_Assemble(benchmark::State &state) {
  const auto n = static_cast<int>(state.range(0));
  const auto k = static_cast<int>(state.range(1));
  const auto exact = make_manufactured(10.0, 1.0);
  const auto mesh = square(n);
  const ScalarField f = exact->discrete_source(*mesh);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        assemble(FormulationSpec(Method::Cgls, k, k), mesh, exact->medium(), f, exact->boundary_flux()));
  }
}
BENCHMARK(BM_Assemble)->Args({32, 1})->Args({64, 1})->Args({16, 2})->Args({32, 2})->Unit(benchmark::kMillisecond);

void BM_Solve(benchmark::State &state) {
  const auto n = static_cast<int>(state.range(0));
  const auto method = static_cast<Method>(state.range(1));
  const auto exact = make_manufactured(10.0, 1.0);
  const auto mesh = square(n);
  const LinearSystem system = assemble(FormulationSpec(method, 2, 2), mesh, exact->medium(),
                                       exact->discrete_source(*mesh), exact->boundary_flux());
  for (auto _ : state) benchmark::DoNotOptimize(solve(system));
  state.SetLabel(std::string(method_name(method)));
}
BENCHMARK(BM_Solve)
    ->Args({16, static_cast<int>(Method::Cgls)})
    ->Args({32, static_cast<int>(Method::Cgls)})
    ->Args({32, static_cast<int>(Method::Hvm)})
    ->Unit(benchmark::kMillisecond);

void BM_Errors(benchmark::State &state) {
  const auto n = static_cast<int>(state.range(0));
  const auto exact = make_manufactured(10.0, 1.0);
  const DiscreteSolution sol = interpolate(FormulationSpec(Method::Cgls, 2, 2), square(n), *exact);
  for (auto _ : state) benchmark::DoNotOptimize(compute_errors(sol, *exact));
}
BENCHMARK(BM_Errors)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
