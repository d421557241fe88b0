#include <benchmark/benchmark.h>

#include "ccnb/census.hpp"
#include "ccnb/morse_bounds.hpp"
#include "ccnb/solver.hpp"
#include "ccnb/spectral.hpp"

using namespace ccnb;

namespace {

void BM_residual_n5(benchmark::State& state) {
    const Configuration c = random_start(MassVector({1, 1, 1, 1, 1}), 42);
    for (auto _ : state) benchmark::DoNotOptimize(cc_residual(c));
}
BENCHMARK(BM_residual_n5);

void BM_polish_random_n4(benchmark::State& state) {
    const MassVector m({1.0, 0.7, 1.3, 1.1});
    detail::PolishWorkspace ws;
    std::uint64_t seed = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(detail::newton_polish(random_start(m, seed++), NewtonOptions{}, ws));
    }
}
BENCHMARK(BM_polish_random_n4);

void BM_polish_random_n5(benchmark::State& state) {
    const MassVector m({1.0, 0.7, 1.3, 1.1, 0.9});
    detail::PolishWorkspace ws;
    std::uint64_t seed = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(detail::newton_polish(random_start(m, seed++), NewtonOptions{}, ws));
    }
}
BENCHMARK(BM_polish_random_n5);

void BM_moulton_n5(benchmark::State& state) {
    const MassVector m({1.0, 0.7, 1.3, 1.1, 0.9});
    const std::vector<int> ord = {0, 1, 2, 3, 4};
    for (auto _ : state) benchmark::DoNotOptimize(moulton_solve(m, ord));
}
BENCHMARK(BM_moulton_n5);

void BM_morse_index_n5(benchmark::State& state) {
    const Configuration c = moulton_solve(MassVector({1, 1, 1, 1, 1}), {0, 1, 2, 3, 4});
    for (auto _ : state) benchmark::DoNotOptimize(morse_index(c));
}
BENCHMARK(BM_morse_index_n5);

void BM_bound_table_n12(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(bound_table(12));
}
BENCHMARK(BM_bound_table_n12);

void BM_census_n3(benchmark::State& state) {
    CensusOptions opts;
    opts.seed = 7;
    for (auto _ : state) benchmark::DoNotOptimize(run_census(MassVector({1, 1, 1}), opts));
}
BENCHMARK(BM_census_n3)->Unit(benchmark::kMillisecond)->Iterations(3);

} // namespace

BENCHMARK_MAIN();
