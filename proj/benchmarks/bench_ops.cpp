#include <benchmark/benchmark.h>

#include "fraclap/frac_ops.hpp"
#include "fraclap/galerkin.hpp"
#include "fraclap/lp.hpp"
#include "fraclap/rng.hpp"
#include "fraclap/walk.hpp"

#include <cmath>

using namespace fraclap;

namespace {

GridFunction test_field(const SolverParams& p) {
    GridFunction f(p);
    f.fill([](const Point& x) {
        return std::exp(-0.5 * (x[0] * x[0] + x[1] * x[1]));
    });
    return f;
}

void BM_DeltaSFourier(benchmark::State& state) {
    SolverParams p =
        make_params(2, 0.5, static_cast<std::uint32_t>(state.range(0)), 8.0);
    GridFunction f = test_field(p);
    for (auto _ : state)
        benchmark::DoNotOptimize(delta_s_fourier(f, 0.5));
}
BENCHMARK(BM_DeltaSFourier)->Arg(64)->Arg(128)->Arg(256);

void BM_DeltaSSingularApply(benchmark::State& state) {
    SolverParams p =
        make_params(2, 0.5, static_cast<std::uint32_t>(state.range(0)), 8.0);
    GridFunction f = test_field(p);
    auto table =
        build_second_difference_table(p, 0.5, default_singular_scheme(2));
    for (auto _ : state)
        benchmark::DoNotOptimize(apply_second_difference(f, 0.5, table));
}
BENCHMARK(BM_DeltaSSingularApply)->Arg(64)->Arg(128)->Arg(256);

void BM_SingularTableBuild(benchmark::State& state) {
    SolverParams p =
        make_params(2, 0.5, static_cast<std::uint32_t>(state.range(0)), 8.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(build_second_difference_table(
            p, 0.5, default_singular_scheme(2)));
}
BENCHMARK(BM_SingularTableBuild)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_HsNormLP(benchmark::State& state) {
    SolverParams p = make_params(2, 0.5, 128, 8.0);
    GridFunction f = test_field(p);
    LPFilterBank bank = build_filter_bank(p);
    for (auto _ : state)
        benchmark::DoNotOptimize(hs_norm_lp(f, 0.5, bank));
}
BENCHMARK(BM_HsNormLP);

void BM_BallExitSample(benchmark::State& state) {
    const auto& tab = radial_exit_table(0.5);
    (void)tab;
    std::uint64_t path = 0;
    for (auto _ : state) {
        CounterRng rng(7, 0x57, path++);
        benchmark::DoNotOptimize(
            sample_ball_exit({0, 0, 0}, 1.0, 0.5, 2, rng));
    }
}
BENCHMARK(BM_BallExitSample);

void BM_WosPath(benchmark::State& state) {
    Domain d(2, Ball{{0, 0, 0}, 1.0});
    std::uint64_t path = 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(
            sample_walk(d, {0.3, 0.1, 0}, 0.5, 9, path++));
}
BENCHMARK(BM_WosPath);

void BM_GramAssembly(benchmark::State& state) {
    SolverParams p = make_params(2, 0.5, 128, 16.0);
    Domain d(2, Ball{{0, 0, 0}, 1.0});
    ExteriorSolver solver(d, p, 2.8, 0.5);
    for (auto _ : state) {
        GramSystem sys;
        solver.assemble_matrix(sys);
        benchmark::DoNotOptimize(sys.matrix.data());
    }
}
BENCHMARK(BM_GramAssembly)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
