#include <benchmark/benchmark.h>

#include "dppln/modesolver.hpp"
#include "dppln/qpm.hpp"
#include "dppln/spdc.hpp"

using namespace dppln;

namespace {

spdc::SourceModel design_point() {
    modesolver::Waveguide wg(dispersion::Material{}, {10.0, 10.0, 1.0}, 25.0);
    return spdc::SourceModel(std::move(wg), qpm::InteractionSpec::from_pump_signal(519.0, 780.0, 25.0, 10.0));
}

}  // namespace

static void BM_SolveMode(benchmark::State& state) {
    const dispersion::WaveguideGeometry g{10.0, 10.0, 1.0};
    for (auto _ : state) benchmark::DoNotOptimize(modesolver::solve_mode(g, 2.1755, 0.0034, 780.0));
}
BENCHMARK(BM_SolveMode);

static void BM_NeffQuadrature(benchmark::State& state) {
    const dispersion::WaveguideGeometry g{10.0, 10.0, 1.0};
    const modesolver::TrialField f{1.2, 1.4, 10.0, 10.0};
    auto profile = [&](double y, double z) { return dispersion::index_profile(g, 2.1755, 0.0034, y, z); };
    for (auto _ : state) benchmark::DoNotOptimize(modesolver::neff_quadrature(f, profile, 780.0));
}
BENCHMARK(BM_NeffQuadrature)->Unit(benchmark::kMillisecond);

static void BM_FourierComponent(benchmark::State& state) {
    const auto g = qpm::periods_from_frequencies(2 * 3.141592653589793 / 4.580, 2 * 3.141592653589793 / 3.653);
    const auto p = qpm::synthesize_pattern(g, static_cast<double>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(qpm::fourier_component(p, g.K1));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(p.boundaries_um().size()));
}
BENCHMARK(BM_FourierComponent)->Arg(1)->Arg(10)->Arg(50);

static void BM_Analyze(benchmark::State& state) {
    for (auto _ : state) {
        const auto m = design_point();
        benchmark::DoNotOptimize(spdc::analyze(m, {false, {}, spdc::SpectrumMethod::exact}));
    }
}
BENCHMARK(BM_Analyze)->Unit(benchmark::kMillisecond);

static void BM_Spectrum(benchmark::State& state) {
    const auto m = design_point();
    const auto g = m.grating();
    const auto method = state.range(0) == 0 ? spdc::SpectrumMethod::exact : spdc::SpectrumMethod::taylor;
    for (auto _ : state) benchmark::DoNotOptimize(m.spectrum(g, qpm::Process::oe, {770.0, 790.0, 2001}, method));
}
BENCHMARK(BM_Spectrum)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
