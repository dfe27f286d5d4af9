#include <benchmark/benchmark.h>

#include "morsecraft/homology.hpp"
#include "morsecraft/io.hpp"

using namespace morsecraft;

namespace {

void BM_derived_subdivision(benchmark::State& state) {
    const SimplicialComplex K = boundary_simplex(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto [S, m] = derived_subdivision(K, 1);
        benchmark::DoNotOptimize(S.facets().size());
    }
}
BENCHMARK(BM_derived_subdivision)->Arg(2)->Arg(3)->Arg(4);

void BM_betti_gf2(benchmark::State& state) {
    const SimplicialComplex K =
        derived_subdivision(boundary_simplex(static_cast<int>(state.range(0))), 1).first;
    for (auto _ : state) benchmark::DoNotOptimize(betti_gf2(K));
}
BENCHMARK(BM_betti_gf2)->Arg(3)->Arg(4);

void BM_random_morse(benchmark::State& state) {
    const SimplicialComplex K = derived_subdivision(boundary_simplex(3), 1).first;
    std::uint64_t seed = 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(random_morse(K, seed++, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_random_morse)->Arg(1)->Arg(8);

void BM_collapse_search(benchmark::State& state) {
    const SimplicialComplex K =
        derived_subdivision(simplex_complex(static_cast<int>(state.range(0))), 1).first;
    for (auto _ : state)
        benchmark::DoNotOptimize(collapse_to_single_vertex(K).sequence.steps.size());
}
BENCHMARK(BM_collapse_search)->Arg(2)->Arg(3);

}  // namespace

BENCHMARK_MAIN();
