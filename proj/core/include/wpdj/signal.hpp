#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "wpdj/dynamics.hpp"

namespace wpdj {

/// Probe side of the pump-probe measurement: per-level projection weights
/// onto the common ionic final state, a constant signal offset, and the pure
/// dephasing time that damps the interference cross terms.
struct ProbeModel {
    std::vector<double> amplitudes; // d_k; empty means all ones
    double baseline = 1.0;
    double coherence_time_ps = 5000.0;

    void validate() const;
    std::vector<double> effective_amplitudes(std::size_t count) const;
};

/// Additive Gaussian noise on the averaged signal.
struct NoiseModel {
    double sigma = 0.0;
    std::uint64_t sequences = 10000;
    std::uint64_t seed = 0;

    void validate() const;
    /// Standard deviation after averaging: sigma / sqrt(sequences).
    double per_point_sd() const;
};

/// Uniform delay grid in ps.
struct DelayGrid {
    double start_ps = 2.0;
    double end_ps = 8.0;
    double step_ps = 0.01;

    void validate() const;
    std::vector<double> points() const;
    bool contains(double tau_ps, double tol = 1e-9) const;
};

struct TransientMetadata {
    std::string function_bits;
    std::uint64_t seed = 0;
};

/// Signal samples over a delay grid.
struct Transient {
    std::vector<double> delays_ps;
    std::vector<double> values;
    TransientMetadata metadata;
};

/// Complex probe amplitude sum_k d_k c_k e^{-i omega_k tau}.
Complex coherent_amplitude(const WavePacket& packet, const ProbeModel& probe,
                           const std::vector<double>& energies_cm, double tau_ps);

/// S(tau) = baseline + sum_k |d_k c_k|^2
///        + e^{-tau/T2} (|sum_k d_k c_k e^{-i omega_k tau}|^2 - sum_k |d_k c_k|^2).
/// The bracket is exactly the k != l interference sum, real by symmetry.
double ionization_signal(const WavePacket& packet, const ProbeModel& probe,
                         const std::vector<double>& energies_cm, double tau_ps);

/// Pointwise ionization_signal over a strictly increasing delay grid.
Transient transient(const WavePacket& packet, const ProbeModel& probe,
                    const std::vector<double>& energies_cm,
                    const std::vector<double>& delays_ps, TransientMetadata metadata);

/// Perturbs every sample by an independent Gaussian draw of standard
/// deviation sigma/sqrt(sequences); deterministic under a fixed seed.
Transient add_noise(const Transient& t, const NoiseModel& noise);

/// Comma-separated export, header "delay_ps,signal,function,seed"; each
/// comment line is written with a leading "# ".
void write_transient_csv(std::ostream& os, const Transient& t,
                         const std::vector<std::string>& comments);

} // namespace wpdj
