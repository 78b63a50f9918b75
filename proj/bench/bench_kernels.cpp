// Serial reference vs OpenMP for the batched series kernels.

#include "kqde/kernels.hpp"

#include <benchmark/benchmark.h>

using namespace kq;

namespace {

NumericContext context(int n) {
    NumericContext ctx;
    for (int i = 0; i < n; ++i) ctx.z.push_back(cplx(0.11 + 0.23 * i, 0.05 * i));
    return ctx;
}

Exec exec_of(const benchmark::State& state) { return state.range(1) ? Exec::openmp : Exec::serial; }

void BM_LeveltEvaluate(benchmark::State& state) {
    auto ctx = context(static_cast<int>(state.range(0)));
    LeveltSolution Y(ctx, 30);
    auto pts = circle_samples(0.3, 512);
    for (auto _ : state) benchmark::DoNotOptimize(evaluate_batch(Y, pts, exec_of(state)));
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(pts.size()));
}

void BM_TopologicalResidual(benchmark::State& state) {
    auto ctx = context(static_cast<int>(state.range(0)));
    TopologicalSolution Y(ctx, 30);
    auto pts = circle_samples(0.3, 256);
    for (auto _ : state) benchmark::DoNotOptimize(residual_batch(Y, ctx, pts, exec_of(state)));
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(pts.size()));
}

void BM_PsiSeries(benchmark::State& state) {
    auto ctx = context(static_cast<int>(state.range(0)));
    auto psi = psi_J_series(0, ctx, 40);
    auto pts = circle_samples(0.2, 1024);
    for (auto _ : state) benchmark::DoNotOptimize(evaluate_series_batch(psi, pts, exec_of(state)));
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(pts.size()));
}

}  // namespace

// arguments: rank n, executor (0 serial, 1 OpenMP)
BENCHMARK(BM_LeveltEvaluate)->ArgsProduct({{2, 3, 5}, {0, 1}});
BENCHMARK(BM_TopologicalResidual)->ArgsProduct({{2, 3, 5}, {0, 1}});
BENCHMARK(BM_PsiSeries)->ArgsProduct({{2, 3, 5}, {0, 1}});

BENCHMARK_MAIN();
