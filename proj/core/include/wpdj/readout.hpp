#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "wpdj/basis.hpp"
#include "wpdj/dynamics.hpp"
#include "wpdj/oracle.hpp"
#include "wpdj/rng.hpp"
#include "wpdj/shaper.hpp"
#include "wpdj/signal.hpp"

namespace wpdj {

/// The assembled single-pulse experiment: everything needed to turn a
/// function into a wave packet and a delay-resolved ionization signal.
struct Experiment {
    LevelBasis basis;
    double launch_energy_cm = 0.0;
    SpectralEnvelope envelope;
    MaskGeometry geometry;
    std::vector<double> dipoles; // one per level
    ProbeModel probe;
    PulseTemporalProfile pulse;
    double tau_star_ps = 5.0;
    double phase_quantization_deg = 0.0; // 0 disables quantization

    void validate() const;

    std::vector<double> energies_cm() const { return basis.energies_cm(); }

    /// Pump transition frequency per level: term energy minus launch energy.
    std::vector<double> transition_freqs_cm() const;

    /// Modulator mask for a set of level phases (quantized when configured).
    PhaseMask mask_for(const PhaseSet& level_phases) const;

    /// Couplings whose field values are sampled from the shaped pulse.
    CouplingSet couplings_for(const PhaseMask& mask) const;

    /// encode -> shape -> excite; the returned packet sits at time_ref 0.
    WavePacket excite(const BooleanFunction& f, const PhaseSet& phi0) const;

    /// Full noiseless signal path for one function at one delay.
    double signal_at(const BooleanFunction& f, const PhaseSet& phi0, double tau_ps) const;
};

/// Calibration output: the base phase set, the readout delay, the two
/// calibration signals and the decision threshold between them.
struct CalibrationResult {
    PhaseSet phi0;
    double tau_star_ps = 0.0;
    double s_constant = 0.0;
    double s_balanced_max = 0.0;
    double threshold = 0.0;
    std::vector<BooleanFunction> worst_case_functions;

    double margin() const { return s_constant - s_balanced_max; }
};

/// Base phases that align every excited component at the readout delay:
/// phi0_k = (omega_ref - omega_k) tau*, wrapped to [0, 360). The reference
/// level always maps to 0 deg.
PhaseSet calibrate_phi0(const std::vector<double>& energies_cm, double tau_star_ps,
                        std::size_t reference_index);

/// Brute force over every balanced function: records the balanced maximum at
/// tau*, the constant signal, and the midpoint threshold. Throws
/// CalibrationError when a level is dark or the signals are not separable.
CalibrationResult compute_threshold(const Experiment& experiment, const PhaseSet& phi0);

/// Constant when measured >= threshold, Balanced otherwise (ties on the
/// boundary read as Constant).
FunctionCharacter classify(double measured, const CalibrationResult& calibration);

/// One oracle application, one measured value: encode -> shape -> excite ->
/// evolve to tau* -> single-point signal -> classify. The Gaussian stream,
/// when given, adds one noise draw of the given standard deviation.
FunctionCharacter run_algorithm(const Experiment& experiment, const BooleanFunction& f,
                                const CalibrationResult& calibration, double noise_sd,
                                GaussianStream* noise_stream);

/// Convenience overload seeding a fresh stream from the noise model.
FunctionCharacter run_algorithm(const Experiment& experiment, const BooleanFunction& f,
                                const CalibrationResult& calibration, const NoiseModel& noise);

struct FunctionAccuracy {
    std::string function_bits;
    std::uint64_t trials = 0;
    std::uint64_t correct = 0;
};

struct AccuracyReport {
    std::vector<FunctionAccuracy> per_function;
    std::uint64_t trials = 0;
    std::uint64_t correct = 0;
    double accuracy = 0.0;
    double wilson_low = 0.0;
    double wilson_high = 0.0;
};

/// Runs run_algorithm with independent noise draws, trials spread uniformly
/// over every constant/balanced function. Each function owns its own noise
/// stream seeded from (global seed, function index), so results do not
/// depend on scheduling.
AccuracyReport accuracy_monte_carlo(const Experiment& experiment,
                                    const CalibrationResult& calibration,
                                    const NoiseModel& noise, std::uint64_t trials,
                                    std::uint64_t global_seed);

struct MarginRow {
    std::string function_bits;
    FunctionCharacter truth = FunctionCharacter::Constant;
    double signal_at_tau_star = 0.0;
    FunctionCharacter classified = FunctionCharacter::Constant;
    double margin = 0.0; // signed distance to the threshold
};

/// Noiseless sweep over every enumerated function.
std::vector<MarginRow> margin_report(const Experiment& experiment,
                                     const CalibrationResult& calibration);

/// Header "function_bits,character_truth,signal_at_tau_star,classified_as,margin".
void write_margin_csv(std::ostream& os, const std::vector<MarginRow>& rows,
                      const std::vector<std::string>& comments);

} // namespace wpdj
