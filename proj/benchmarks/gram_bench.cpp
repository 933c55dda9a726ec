#include "galerkin/gram.hpp"
#include "galerkin/graph_laplacian.hpp"
#include "galerkin/ground_truth.hpp"
#include "galerkin/solvers.hpp"

#include <benchmark/benchmark.h>

using namespace galerkin;

namespace {

Dataset landmarks_of(const Dataset& data, std::size_t p)
{
    const auto idx = sample_landmark_indices(data.size(), p, 1);
    return data.subset(idx);
}

// args: n, d, p
void BM_GramDot(benchmark::State& state)
{
    const auto data = sample_sphere(state.range(0), static_cast<int>(state.range(1)), 1);
    const auto lm = landmarks_of(data, state.range(2));
    const auto k = KernelSpec::polynomial(3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_gram_laplacian(k, lm, data, GradientGeometry::SphereTangent));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_GramDot)->Args({10000, 3, 100})->Args({10000, 19, 100})->Args({40000, 3, 177})->Unit(benchmark::kMillisecond);

void BM_GramDist(benchmark::State& state)
{
    const auto data = sample_sphere(state.range(0), static_cast<int>(state.range(1)), 1);
    const auto lm = landmarks_of(data, state.range(2));
    const auto k = KernelSpec::gaussian(1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_gram_laplacian(k, lm, data));
    }
}
BENCHMARK(BM_GramDist)->Args({10000, 3, 100})->Args({10000, 19, 100})->Unit(benchmark::kMillisecond);

// the triple loop the fast paths replace
void BM_GramGeneric(benchmark::State& state)
{
    const auto data = sample_sphere(state.range(0), 3, 1);
    const auto lm = landmarks_of(data, state.range(1));
    const auto k = KernelSpec::gaussian(1.0);
    const auto basis = nystrom_basis(k, lm);
    const auto h = laplacian_integrand(k, lm);
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_gram_generic(h, basis, basis, data));
    }
}
BENCHMARK(BM_GramGeneric)->Args({2000, 50})->Unit(benchmark::kMillisecond);

void BM_Gevd(benchmark::State& state)
{
    const auto data = sample_sphere(4 * state.range(0), 3, 1);
    const auto g = build_gram_laplacian(KernelSpec::gaussian(1.0), landmarks_of(data, state.range(0)), data);
    for (auto _ : state) {
        benchmark::DoNotOptimize(gevd(g.L, g.Psi, 1e-8 * g.Psi.trace() / static_cast<double>(g.Psi.rows())));
    }
}
BENCHMARK(BM_Gevd)->Arg(100)->Arg(300)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_GraphProjection(benchmark::State& state)
{
    const auto data = sample_sphere(state.range(0), 9, 1);
    const auto w = weight_matrix(data, 0.5);
    const std::size_t ps[] = {static_cast<std::size_t>(state.range(1))};
    GraphOptions options;
    options.seed = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(graph_decompose_nested(data, KernelSpec::gaussian(1.0), w, ps, options));
    }
}
BENCHMARK(BM_GraphProjection)->Args({2000, 100})->Args({4000, 100})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
