#include <benchmark/benchmark.h>

#include "frontlab/linefit.hpp"
#include "frontlab/model.hpp"
#include "frontlab/simulator.hpp"

namespace {

using namespace frontlab;

ModelParams bistable_params() {
    ModelParams p;
    p.a = 2.0;
    p.b = 3.0;
    p.r = 1.0;
    p.d = 1.0;
    return p;
}

void bench_step(benchmark::State& state, Scheme scheme) {
    const ModelParams p = bistable_params();
    Grid1D grid;
    SchemeConfig cfg;
    cfg.scheme = scheme;
    cfg.dt = 0.5 * max_stable_dt(p, grid, scheme);
    SimState s = init_front_data(grid, InitKind::HalfLineInterface, 10.0);
    for (auto _ : state) {
        s = step(s, p, cfg, grid);
        benchmark::DoNotOptimize(s.u.data());
    }
    state.SetItemsProcessed(state.iterations() * grid.n);
}

void BM_StepExplicit(benchmark::State& state) {
    bench_step(state, Scheme::ExplicitEuler);
}

void BM_StepSemiImplicit(benchmark::State& state) {
    bench_step(state, Scheme::SemiImplicitDiffusion);
}

void BM_FrontPosition(benchmark::State& state) {
    Grid1D grid;
    const SimState s = init_front_data(grid, InitKind::HalfLineInterface, 10.0);
    for (auto _ : state) {
        auto pos = front_position(s, grid, Field::U, 0.5);
        benchmark::DoNotOptimize(pos);
    }
}

void BM_FitLine(benchmark::State& state) {
    std::vector<double> t, y;
    for (int i = 0; i < 200; ++i) {
        t.push_back(0.5 * i);
        y.push_back(1.3 * 0.5 * i + 0.25 + 1e-3 * ((i * 37) % 11));
    }
    for (auto _ : state) {
        LineFit f = fit_line(t, y);
        benchmark::DoNotOptimize(f);
    }
}

BENCHMARK(BM_StepExplicit);
BENCHMARK(BM_StepSemiImplicit);
BENCHMARK(BM_FrontPosition);
BENCHMARK(BM_FitLine);

} // namespace

BENCHMARK_MAIN();
