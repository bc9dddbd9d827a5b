#include <benchmark/benchmark.h>

#include <vector>

#include "orthotraj/core_model.hpp"
#include "orthotraj/geometry_analysis.hpp"
#include "orthotraj/roots.hpp"
#include "orthotraj/tracer.hpp"

namespace {

using namespace orthotraj;

void BM_CurvePoint(benchmark::State& state) {
    const TrajectoryCurve curve(1.5);
    double t = -3.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(curve_point(curve, t));
        t = t > 3.0 ? -3.0 : t + 1e-3;
    }
}
BENCHMARK(BM_CurvePoint);

void BM_SlopesAt(benchmark::State& state) {
    double x = -5.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(slopes_at(x, 0.7));
        x = x > 5.0 ? -5.0 : x + 1e-3;
    }
}
BENCHMARK(BM_SlopesAt);

void BM_Intersections(benchmark::State& state) {
    const TrajectoryCurve curve(0.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(intersections(1.0, curve, -10.0, 10.0));
    }
}
BENCHMARK(BM_Intersections)->Unit(benchmark::kMicrosecond);

void BM_TraceOrthogonal(benchmark::State& state) {
    TraceConfig cfg;
    cfg.start = {1.0, 2.0};
    cfg.initial_slope_hint = 1.0;
    cfg.max_arc = static_cast<double>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(trace_orthogonal(cfg));
    }
}
BENCHMARK(BM_TraceOrthogonal)->Arg(10)->Arg(50)->Unit(benchmark::kMillisecond);

void BM_FitConic(benchmark::State& state) {
    const TrajectoryCurve curve(4.0);
    std::vector<Point> pts;
    const auto n = state.range(0);
    for (int64_t i = 0; i < n; ++i) {
        pts.push_back(curve_point(curve, -3.0 + 6.0 * static_cast<double>(i) / static_cast<double>(n - 1)));
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(fit_conic(pts));
    }
    state.SetComplexityN(n);
}
BENCHMARK(BM_FitConic)->RangeMultiplier(4)->Range(16, 1024)->Complexity(benchmark::oN);

}  // namespace

BENCHMARK_MAIN();
