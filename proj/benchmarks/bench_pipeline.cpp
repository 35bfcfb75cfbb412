#include <benchmark/benchmark.h>

#include "wpdj/config.hpp"
#include "wpdj/readout.hpp"

namespace {

using namespace wpdj;

struct Fixture {
    Experiment experiment;
    CalibrationResult calibration;
    WavePacket constant_packet;
    std::vector<double> energies;

    Fixture()
        : experiment(make_experiment(default_config())),
          calibration(compute_threshold(
              experiment,
              calibrate_phi0(experiment.energies_cm(), experiment.tau_star_ps, 7))),
          constant_packet(
              experiment.excite(BooleanFunction::from_bits("00000000"), calibration.phi0)),
          energies(experiment.energies_cm()) {}
};

Fixture& fixture() {
    static Fixture f;
    return f;
}

void BM_IonizationSignal(benchmark::State& state) {
    Fixture& f = fixture();
    double tau = 2.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            ionization_signal(f.constant_packet, f.experiment.probe, f.energies, tau));
        tau += 1e-6;
    }
}
BENCHMARK(BM_IonizationSignal);

void BM_TransientSweep(benchmark::State& state) {
    Fixture& f = fixture();
    const auto delays = DelayGrid{2.0, 8.0, 0.01}.points();
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            transient(f.constant_packet, f.experiment.probe, f.energies, delays, {"00000000", 0}));
    }
}
BENCHMARK(BM_TransientSweep);

void BM_RunAlgorithm(benchmark::State& state) {
    Fixture& f = fixture();
    const BooleanFunction probe_function = BooleanFunction::from_bits("00111001");
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            run_algorithm(f.experiment, probe_function, f.calibration, 0.0, nullptr));
    }
}
BENCHMARK(BM_RunAlgorithm);

void BM_ThresholdBruteForce(benchmark::State& state) {
    Fixture& f = fixture();
    for (auto _ : state) {
        benchmark::DoNotOptimize(compute_threshold(f.experiment, f.calibration.phi0));
    }
}
BENCHMARK(BM_ThresholdBruteForce);

void BM_PropagateTdse(benchmark::State& state) {
    Fixture& f = fixture();
    const CouplingSet couplings =
        f.experiment.couplings_for(f.experiment.mask_for(f.calibration.phi0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(propagate_tdse(couplings, f.experiment.pulse, f.energies, 1e-2));
    }
}
BENCHMARK(BM_PropagateTdse);

void BM_Enumerate(benchmark::State& state) {
    const int input_count = static_cast<int>(state.range(0));
    for (auto _ : state) {
        std::size_t count = 0;
        for_each_constant_balanced(input_count,
                                   [&count](const BooleanFunction&) { ++count; });
        benchmark::DoNotOptimize(count);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Enumerate)->Arg(8)->Arg(12)->Arg(16)->Arg(20);

} // namespace

BENCHMARK_MAIN();
