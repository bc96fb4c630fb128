#include <benchmark/benchmark.h>

#include "modespec/fractional.hpp"
#include "modespec/interferometer.hpp"
#include "modespec/lens_design.hpp"
#include "modespec/reconstruction.hpp"

using namespace modespec;

namespace {

const PhysicalFrame kFrame{1.0, 0.5};

ComplexField test_field(int n) {
    ModeSpectrum s;
    s.frame = kFrame;
    s.entries[{2, 1}] = 0.6;
    s.entries[{0, 0}] = 0.8;
    ComplexField f = synthesize(s, GridSpec{n, n, 8.0});
    f.normalize();
    return f;
}

void BM_KernelApply(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const ComplexField f = test_field(n);
    const KernelPlan plan(KernelPlan::Kind::SPlus, 1.7, f.grid, f.frame);
    for (auto _ : state) benchmark::DoNotOptimize(plan.apply(f));
    state.SetComplexityN(n);
}
BENCHMARK(BM_KernelApply)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_Decompose(benchmark::State& state) {
    const ComplexField f = test_field(512);
    for (auto _ : state) benchmark::DoNotOptimize(decompose(f, state.range(0)));
}
BENCHMARK(BM_Decompose)->Arg(6)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_AnalyticScan(benchmark::State& state) {
    ModeSpectrum s;
    s.frame = kFrame;
    for (const ModeIndex m : modes_up_to(9)) s.entries[m] = 1.0;
    s.normalize();
    ScanConfig cfg;
    cfg.compensator = CompensatorSetting::identity();
    for (auto _ : state) benchmark::DoNotOptimize(scan_analytic(s, cfg));
}
BENCHMARK(BM_AnalyticScan)->Unit(benchmark::kMicrosecond);

void BM_WindowInversion(benchmark::State& state) {
    ModeSpectrum s;
    s.frame = kFrame;
    for (const ModeIndex m : modes_up_to(9)) s.entries[m] = 1.0;
    s.normalize();
    ScanConfig cfg;
    cfg.compensator = CompensatorSetting::identity();
    const IntensityScan a = scan_analytic(s, cfg);
    cfg.compensator = CompensatorSetting::minus_identity();
    const IntensityScan b = scan_analytic(s, cfg);
    for (auto _ : state) benchmark::DoNotOptimize(reconstruct_hg(a, b, 9));
}
BENCHMARK(BM_WindowInversion)->Unit(benchmark::kMicrosecond);

void BM_DesignScissorTrain(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(design_s_minus(1.7 * 3.14159, kFrame));
}
BENCHMARK(BM_DesignScissorTrain)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
