// Serial reference vs OpenMP kernels. Arg(0) = serial, Arg(1) = parallel.

#include "bellscope/search.hpp"

#include <benchmark/benchmark.h>

using namespace bellscope;

namespace {

Execution exec_of(const benchmark::State& state)
{
    return state.range(0) == 0 ? Execution::serial : Execution::parallel;
}

void BM_TvMonteCarlo(benchmark::State& state)
{
    const ContinuousModel singlet = singlet_model();
    const DirectionQuad q = common_bisector_quad({kPi / 4.0, kPi / 4.0});
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            tv_monte_carlo(singlet, q.pair(SettingPair::XY), q.pair(SettingPair::XpYp), 1000000, 1, exec_of(state)));
    }
    state.SetItemsProcessed(state.iterations() * 1000000);
}

void BM_MeasureMonteCarlo(benchmark::State& state)
{
    const ContinuousModel singlet = singlet_model();
    const DirectionQuad q = chsh_optimal_quad();
    for (auto _ : state) {
        benchmark::DoNotOptimize(measure_M(singlet, q, McOptions{200000, 1, exec_of(state)}));
    }
}

void BM_CoplanarGrid(benchmark::State& state)
{
    const ContinuousModel singlet = singlet_model();
    for (auto _ : state) {
        auto v = exec_of(state) == Execution::serial ? coplanar_grid_serial(singlet, 181)
                                                     : coplanar_grid_parallel(singlet, 181);
        benchmark::DoNotOptimize(v.data());
    }
}

void BM_RandomSearch(benchmark::State& state)
{
    const ContinuousModel singlet = singlet_model();
    for (auto _ : state) {
        benchmark::DoNotOptimize(random_search_M_general(singlet, 500, 100000, 1, exec_of(state)));
    }
}

} // namespace

BENCHMARK(BM_TvMonteCarlo)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MeasureMonteCarlo)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CoplanarGrid)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RandomSearch)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
