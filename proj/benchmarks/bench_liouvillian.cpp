#include <benchmark/benchmark.h>

#include "timeseed/model.hpp"
#include "timeseed/spectral.hpp"

namespace {

timeseed::NetworkParams seeded_pair(double gamma) {
    timeseed::NetworkParams p;
    p.ensembles = {{1.5, 1.0, 1}, {0.9, 1.0, 1}};
    p.coupling = {timeseed::CouplingKind::Dissipative, gamma};
    return p;
}

void BM_BuildLiouvillian(benchmark::State& state) {
    const timeseed::DickeSpace space =
        timeseed::DickeSpace::half_split(static_cast<int>(state.range(0)));
    const timeseed::NetworkParams params = seeded_pair(0.1);

    for (auto _ : state) {
        timeseed::SparseOp liou = timeseed::build_liouvillian(params, space);
        benchmark::DoNotOptimize(liou.nonZeros());
    }
    state.counters["dim"] = static_cast<double>(space.liouville_dim());
}
BENCHMARK(BM_BuildLiouvillian)->Arg(6)->Arg(10)->Arg(14)->Arg(18);

void BM_DenseSpectrum(benchmark::State& state) {
    const timeseed::DickeSpace space = timeseed::DickeSpace::half_split(6);
    const timeseed::SparseOp liou =
        timeseed::build_liouvillian(seeded_pair(0.1), space);

    for (auto _ : state) {
        const timeseed::SpectrumResult res = timeseed::slow_spectrum(liou, 12);
        benchmark::DoNotOptimize(res.dominant);
    }
}
BENCHMARK(BM_DenseSpectrum);

void BM_ShiftInvertSpectrum(benchmark::State& state) {
    const timeseed::DickeSpace space = timeseed::DickeSpace::half_split(10);
    const timeseed::SparseOp liou =
        timeseed::build_liouvillian(seeded_pair(0.1), space);
    timeseed::SpectrumOptions opts;
    opts.dense_cap_override = 1;   // force the Arnoldi path at dim 1296

    for (auto _ : state) {
        const timeseed::SpectrumResult res =
            timeseed::slow_spectrum(liou, 12, opts);
        benchmark::DoNotOptimize(res.dominant);
    }
}
BENCHMARK(BM_ShiftInvertSpectrum);

}  // namespace
