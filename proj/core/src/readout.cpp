#include "wpdj/readout.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "wpdj/errors.hpp"
#include "wpdj/units.hpp"

namespace wpdj {

void Experiment::validate() const {
    envelope.validate();
    geometry.validate();
    probe.validate();
    pulse.validate();
    if (dipoles.size() != basis.size()) {
        throw DomainError("experiment: one dipole per level required");
    }
    for (double mu : dipoles) {
        if (!(mu >= 0.0)) throw DomainError("experiment: dipoles must be >= 0");
    }
    if (!(tau_star_ps > 0.0)) throw DomainError("experiment: tau* must be > 0");
    if (phase_quantization_deg < 0.0) {
        throw DomainError("experiment: phase quantization must be >= 0");
    }
    // every transition must land in its own pixel
    mask_from_level_phases(transition_freqs_cm(), zero_phases(basis.size()), geometry);
}

std::vector<double> Experiment::transition_freqs_cm() const {
    std::vector<double> freqs;
    freqs.reserve(basis.size());
    for (const auto& level : basis.levels()) freqs.push_back(level.energy_cm - launch_energy_cm);
    return freqs;
}

PhaseMask Experiment::mask_for(const PhaseSet& level_phases) const {
    const PhaseSet applied = phase_quantization_deg > 0.0
                                 ? quantize(level_phases, phase_quantization_deg)
                                 : level_phases;
    return mask_from_level_phases(transition_freqs_cm(), applied, geometry);
}

CouplingSet Experiment::couplings_for(const PhaseMask& mask) const {
    CouplingSet couplings;
    couplings.dipoles = dipoles;
    couplings.field_values.reserve(basis.size());
    for (double freq : transition_freqs_cm()) {
        couplings.field_values.push_back(sample_field(envelope, mask, freq));
    }
    return couplings;
}

WavePacket Experiment::excite(const BooleanFunction& f, const PhaseSet& phi0) const {
    const PhaseSet phases = encode_phases(f, phi0);
    const PhaseMask mask = mask_for(phases);
    const CouplingSet couplings = couplings_for(mask);
    // phases already live in the sampled field values
    return perturbative_excite(couplings, zero_phases(basis.size()));
}

double Experiment::signal_at(const BooleanFunction& f, const PhaseSet& phi0,
                             double tau_ps) const {
    WavePacket packet = excite(f, phi0);
    packet = evolve(packet, energies_cm(), tau_ps);
    return ionization_signal(packet, probe, energies_cm(), tau_ps);
}

PhaseSet calibrate_phi0(const std::vector<double>& energies_cm, double tau_star_ps,
                        std::size_t reference_index) {
    if (!(tau_star_ps > 0.0)) throw DomainError("calibrate_phi0: tau* must be > 0");
    if (reference_index >= energies_cm.size()) {
        throw DomainError("calibrate_phi0: reference index out of range");
    }
    const double omega_ref = cm1_to_rad_per_ps(energies_cm[reference_index]);
    PhaseSet phi0;
    phi0.phases_deg.reserve(energies_cm.size());
    for (double energy : energies_cm) {
        const double omega = cm1_to_rad_per_ps(energy);
        phi0.phases_deg.push_back(wrap_deg(rad_to_deg((omega_ref - omega) * tau_star_ps)));
    }
    phi0.phases_deg[reference_index] = 0.0;
    return phi0;
}

CalibrationResult compute_threshold(const Experiment& experiment, const PhaseSet& phi0) {
    experiment.validate();
    const std::size_t levels = experiment.basis.size();
    if (phi0.size() != levels) {
        throw DomainError("compute_threshold: phi0 size must match level count");
    }

    // Separation needs every level visible: dipole, field and probe weight
    // all strictly positive.
    {
        const std::vector<double> d = experiment.probe.effective_amplitudes(levels);
        const std::vector<double> freqs = experiment.transition_freqs_cm();
        for (std::size_t k = 0; k < levels; ++k) {
            const double effective =
                experiment.dipoles[k] * experiment.envelope.magnitude_at(freqs[k]) * d[k];
            if (!(effective > 0.0)) {
                throw CalibrationError("level " + std::to_string(k) +
                                       " is dark; the separation guarantee is void");
            }
        }
    }

    CalibrationResult result;
    result.phi0 = phi0;
    result.tau_star_ps = experiment.tau_star_ps;

    const int input_count = static_cast<int>(levels);
    result.s_constant = experiment.signal_at(
        BooleanFunction(std::vector<std::uint8_t>(levels, 0)), phi0, experiment.tau_star_ps);

    bool first = true;
    std::size_t index = 0;
    std::vector<std::pair<BooleanFunction, double>> balanced;
    balanced.reserve(constant_balanced_count(input_count) - 2);
    for_each_constant_balanced(input_count, [&](const BooleanFunction& f) {
        const std::size_t i = index++;
        if (i < 2) return; // the two constants come first
        const double s = experiment.signal_at(f, phi0, experiment.tau_star_ps);
        balanced.emplace_back(f, s);
        if (first || s > result.s_balanced_max) {
            result.s_balanced_max = s;
            first = false;
        }
    });

    const double tie_band = 1e-12 * std::abs(result.s_balanced_max);
    for (const auto& [f, s] : balanced) {
        if (s >= result.s_balanced_max - tie_band) result.worst_case_functions.push_back(f);
    }

    if (!(result.s_constant > result.s_balanced_max)) {
        throw CalibrationError("constant signal does not exceed the balanced maximum; "
                               "the configuration is not separable");
    }
    result.threshold = 0.5 * (result.s_constant + result.s_balanced_max);
    return result;
}

FunctionCharacter classify(double measured, const CalibrationResult& calibration) {
    return measured >= calibration.threshold ? FunctionCharacter::Constant
                                             : FunctionCharacter::Balanced;
}

FunctionCharacter run_algorithm(const Experiment& experiment, const BooleanFunction& f,
                                const CalibrationResult& calibration, double noise_sd,
                                GaussianStream* noise_stream) {
    if (f.size() != experiment.basis.size()) {
        throw DomainError("run_algorithm: function size must match level count");
    }
    character(f); // the promise must hold
    double measured = experiment.signal_at(f, calibration.phi0, calibration.tau_star_ps);
    if (noise_stream != nullptr && noise_sd > 0.0) {
        measured += noise_sd * noise_stream->next();
    }
    return classify(measured, calibration);
}

FunctionCharacter run_algorithm(const Experiment& experiment, const BooleanFunction& f,
                                const CalibrationResult& calibration, const NoiseModel& noise) {
    noise.validate();
    GaussianStream stream(noise.seed);
    return run_algorithm(experiment, f, calibration, noise.per_point_sd(), &stream);
}

AccuracyReport accuracy_monte_carlo(const Experiment& experiment,
                                    const CalibrationResult& calibration,
                                    const NoiseModel& noise, std::uint64_t trials,
                                    std::uint64_t global_seed) {
    noise.validate();
    if (trials < 1) throw DomainError("accuracy_monte_carlo: trials must be >= 1");

    const std::vector<BooleanFunction> functions =
        enumerate_all(static_cast<int>(experiment.basis.size()));
    const std::uint64_t count = functions.size();
    const double sd = noise.per_point_sd();

    AccuracyReport report;
    report.per_function.reserve(functions.size());
    for (std::uint64_t i = 0; i < count; ++i) {
        const BooleanFunction& f = functions[i];
        const FunctionCharacter truth = character(f);
        const std::uint64_t n = trials / count + (i < trials % count ? 1 : 0);
        GaussianStream stream(derive_seed(global_seed, i));
        FunctionAccuracy acc{f.bits(), n, 0};
        for (std::uint64_t t = 0; t < n; ++t) {
            if (run_algorithm(experiment, f, calibration, sd, &stream) == truth) ++acc.correct;
        }
        report.trials += acc.trials;
        report.correct += acc.correct;
        report.per_function.push_back(std::move(acc));
    }

    report.accuracy = static_cast<double>(report.correct) / static_cast<double>(report.trials);
    // Wilson score interval at 95%
    const double z = 1.959963984540054;
    const double n = static_cast<double>(report.trials);
    const double p = report.accuracy;
    const double denom = 1.0 + z * z / n;
    const double center = (p + z * z / (2.0 * n)) / denom;
    const double half =
        z * std::sqrt(p * (1.0 - p) / n + z * z / (4.0 * n * n)) / denom;
    report.wilson_low = center - half;
    report.wilson_high = center + half;
    return report;
}

std::vector<MarginRow> margin_report(const Experiment& experiment,
                                     const CalibrationResult& calibration) {
    std::vector<MarginRow> rows;
    rows.reserve(constant_balanced_count(static_cast<int>(experiment.basis.size())));
    for_each_constant_balanced(static_cast<int>(experiment.basis.size()),
                               [&](const BooleanFunction& f) {
        MarginRow row;
        row.function_bits = f.bits();
        row.truth = character(f);
        row.signal_at_tau_star =
            experiment.signal_at(f, calibration.phi0, calibration.tau_star_ps);
        row.classified = classify(row.signal_at_tau_star, calibration);
        row.margin = row.signal_at_tau_star - calibration.threshold;
        rows.push_back(std::move(row));
    });
    return rows;
}

void write_margin_csv(std::ostream& os, const std::vector<MarginRow>& rows,
                      const std::vector<std::string>& comments) {
    for (const auto& comment : comments) os << "# " << comment << "\n";
    os << "function_bits,character_truth,signal_at_tau_star,classified_as,margin\n";
    char buffer[160];
    for (const auto& row : rows) {
        std::snprintf(buffer, sizeof buffer, "%s,%s,%.12g,%s,%.12g\n", row.function_bits.c_str(),
                      to_string(row.truth), row.signal_at_tau_star, to_string(row.classified),
                      row.margin);
        os << buffer;
    }
}

} // namespace wpdj
