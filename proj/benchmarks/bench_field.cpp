#include <benchmark/benchmark.h>

#include <vector>

#include "timeseed/analysis.hpp"
#include "timeseed/integrator.hpp"
#include "timeseed/model.hpp"

namespace {

timeseed::NetworkParams coupled_ladder(int n, double gamma) {
    timeseed::NetworkParams p =
        timeseed::uniform_detuning_ladder(n, 1.5, 0.3, 1.0);
    p.coupling = {timeseed::CouplingKind::Dissipative, gamma};
    return p;
}

void BM_VectorFieldFlat(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const timeseed::NetworkParams params = coupled_ladder(n, 0.1);
    std::vector<double> y(3 * static_cast<std::size_t>(n), 0.0);
    std::vector<double> dy(y.size(), 0.0);
    for (int a = 0; a < n; ++a) y[3 * static_cast<std::size_t>(a) + 2] = 1.0;

    for (auto _ : state) {
        timeseed::vector_field_flat(params, y.data(), dy.data());
        benchmark::DoNotOptimize(dy.data());
        benchmark::ClobberMemory();
    }
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_VectorFieldFlat)->Arg(2)->Arg(5)->Arg(16)->Arg(64);

void BM_Integrate(benchmark::State& state) {
    const timeseed::NetworkParams params = coupled_ladder(2, 0.1);
    const timeseed::BlochState start = timeseed::BlochState::polarized(2);
    timeseed::IntegrationConfig cfg;
    cfg.t_end = 50.0;
    cfg.dt_out = 0.1;

    for (auto _ : state) {
        timeseed::Trajectory traj = timeseed::integrate(params, start, cfg);
        benchmark::DoNotOptimize(traj.times.data());
    }
}
BENCHMARK(BM_Integrate);

void BM_ObservedFrequency(benchmark::State& state) {
    const timeseed::NetworkParams params = coupled_ladder(2, 0.1);
    timeseed::IntegrationConfig cfg;
    cfg.t_end = 200.0;
    cfg.dt_out = 0.05;
    const timeseed::Trajectory traj =
        timeseed::integrate(params, timeseed::BlochState::polarized(2), cfg);

    for (auto _ : state) {
        const timeseed::FrequencyEstimate est =
            timeseed::observed_frequency(traj, 0);
        benchmark::DoNotOptimize(est.omega_obs);
    }
}
BENCHMARK(BM_ObservedFrequency);

}  // namespace

BENCHMARK_MAIN();
