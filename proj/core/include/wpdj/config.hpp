#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wpdj/basis.hpp"
#include "wpdj/readout.hpp"
#include "wpdj/shaper.hpp"
#include "wpdj/signal.hpp"

namespace wpdj {

/// Full run configuration. Optional fields resolve against the defaults
/// below; the resolved ("effective") form is what gets echoed and hashed.
struct RunConfig {
    std::uint64_t seed = 12345;
    int input_count = 8; // register size 2m; 2^n for n-qubit runs

    SpectroscopicConstants constants{};
    /// Explicit (v, J) table; empty selects the default ladder.
    std::vector<std::pair<int, int>> basis_levels;

    int launch_v = 14;
    int launch_J = 18;
    /// Term energy of the launch level; unset centers the transition band
    /// on the envelope center.
    std::optional<double> launch_energy_cm;

    SpectralEnvelope envelope{};
    int mask_pixels = 128;
    double mask_resolution_cm = 4.2;
    /// Low edge of pixel 0; unset centers the window on the envelope.
    std::optional<double> mask_start_cm;

    PulseTemporalProfile pulse{};
    std::vector<double> dipoles;          // empty -> all ones
    std::vector<double> probe_amplitudes; // empty -> all ones
    double baseline = 1.0;
    double coherence_time_ps = 5000.0;

    double noise_sigma = 0.0;
    std::uint64_t noise_sequences = 10000;

    DelayGrid delay_grid{2.0, 8.0, 0.01};
    double tau_star_ps = 5.0;
    int reference_index = -1; // -1 -> last level
    double phase_quantization_deg = 0.0;
    std::uint64_t mc_trials = 10000;
    std::string output_dir = "out";
};

RunConfig default_config();

/// Parse and validate a JSON config. Unknown or ill-typed fields raise a
/// ConfigError naming the field; absent fields take defaults.
RunConfig parse_config_json(const std::string& text);
RunConfig load_config(const std::string& path);

/// Canonical JSON with every optional field resolved. Loading this text
/// reproduces the identical effective configuration.
std::string effective_config_json(const RunConfig& config);

/// FNV-1a 64 over the canonical effective form.
std::uint64_t config_hash(const RunConfig& config);
std::string config_hash_hex(const RunConfig& config);

/// Resolve defaults and assemble the experiment (validated).
Experiment make_experiment(const RunConfig& config);

NoiseModel make_noise(const RunConfig& config);

/// The effective reference index (resolves -1 to the last level).
std::size_t resolved_reference_index(const RunConfig& config);

/// Applies the WPDJ_SEED environment variable, when set, over the config
/// seed. Returns true when an override happened.
bool apply_seed_env_override(RunConfig& config);

} // namespace wpdj
