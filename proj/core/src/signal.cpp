#include "wpdj/signal.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <utility>

#include "wpdj/errors.hpp"
#include "wpdj/rng.hpp"
#include "wpdj/units.hpp"

namespace wpdj {

void ProbeModel::validate() const {
    for (double d : amplitudes) {
        if (!(d >= 0.0)) throw DomainError("probe model: amplitudes must be >= 0");
    }
    if (!(baseline >= 0.0)) throw DomainError("probe model: baseline must be >= 0");
    if (!(coherence_time_ps > 0.0)) throw DomainError("probe model: coherence time must be > 0");
}

std::vector<double> ProbeModel::effective_amplitudes(std::size_t count) const {
    if (amplitudes.empty()) return std::vector<double>(count, 1.0);
    if (amplitudes.size() != count) {
        throw DomainError("probe model: expected " + std::to_string(count) +
                          " amplitudes, got " + std::to_string(amplitudes.size()));
    }
    return amplitudes;
}

void NoiseModel::validate() const {
    if (!(sigma >= 0.0)) throw DomainError("noise model: sigma must be >= 0");
    if (sequences < 1) throw DomainError("noise model: sequences must be >= 1");
}

double NoiseModel::per_point_sd() const {
    return sigma / std::sqrt(static_cast<double>(sequences));
}

void DelayGrid::validate() const {
    if (!(step_ps > 0.0)) throw DomainError("delay grid: step must be > 0");
    if (!(end_ps >= start_ps)) throw DomainError("delay grid: end must be >= start");
}

std::vector<double> DelayGrid::points() const {
    validate();
    const std::size_t count =
        static_cast<std::size_t>(std::floor((end_ps - start_ps) / step_ps + 1e-9)) + 1;
    std::vector<double> delays;
    delays.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        delays.push_back(start_ps + static_cast<double>(i) * step_ps);
    }
    return delays;
}

bool DelayGrid::contains(double tau_ps, double tol) const {
    for (double d : points()) {
        if (std::abs(d - tau_ps) <= tol) return true;
    }
    return false;
}

Complex coherent_amplitude(const WavePacket& packet, const ProbeModel& probe,
                           const std::vector<double>& energies_cm, double tau_ps) {
    if (energies_cm.size() != packet.size()) {
        throw DomainError("coherent_amplitude: energy count must match amplitude count");
    }
    const std::vector<double> d = probe.effective_amplitudes(packet.size());
    const double dt = tau_ps - packet.time_ref_ps;
    Complex sum{0.0, 0.0};
    for (std::size_t k = 0; k < packet.size(); ++k) {
        sum += d[k] * packet.amplitudes[k] *
               std::polar(1.0, -cm1_to_rad_per_ps(energies_cm[k]) * dt);
    }
    return sum;
}

double ionization_signal(const WavePacket& packet, const ProbeModel& probe,
                         const std::vector<double>& energies_cm, double tau_ps) {
    probe.validate();
    const std::vector<double> d = probe.effective_amplitudes(packet.size());
    double incoherent = 0.0;
    for (std::size_t k = 0; k < packet.size(); ++k) {
        incoherent += std::norm(d[k] * packet.amplitudes[k]);
    }
    const double coherent = std::norm(coherent_amplitude(packet, probe, energies_cm, tau_ps));
    const double dephasing = std::exp(-tau_ps / probe.coherence_time_ps);
    return probe.baseline + incoherent + dephasing * (coherent - incoherent);
}

Transient transient(const WavePacket& packet, const ProbeModel& probe,
                    const std::vector<double>& energies_cm,
                    const std::vector<double>& delays_ps, TransientMetadata metadata) {
    if (delays_ps.empty()) throw DomainError("transient: delay grid is empty");
    for (std::size_t i = 1; i < delays_ps.size(); ++i) {
        if (!(delays_ps[i] > delays_ps[i - 1])) {
            throw DomainError("transient: delays must be strictly increasing");
        }
    }
    Transient t;
    t.delays_ps = delays_ps;
    t.values.reserve(delays_ps.size());
    for (double tau : delays_ps) {
        t.values.push_back(ionization_signal(packet, probe, energies_cm, tau));
    }
    t.metadata = std::move(metadata);
    return t;
}

Transient add_noise(const Transient& t, const NoiseModel& noise) {
    noise.validate();
    if (noise.sigma == 0.0) return t;
    Transient out = t;
    out.metadata.seed = noise.seed;
    GaussianStream gauss(noise.seed);
    const double sd = noise.per_point_sd();
    for (double& value : out.values) value += sd * gauss.next();
    return out;
}

void write_transient_csv(std::ostream& os, const Transient& t,
                         const std::vector<std::string>& comments) {
    for (const auto& comment : comments) os << "# " << comment << "\n";
    os << "delay_ps,signal,function,seed\n";
    char row[128];
    for (std::size_t i = 0; i < t.delays_ps.size(); ++i) {
        std::snprintf(row, sizeof row, "%.12g,%.12g,%s,%llu\n", t.delays_ps[i], t.values[i],
                      t.metadata.function_bits.c_str(),
                      static_cast<unsigned long long>(t.metadata.seed));
        os << row;
    }
}

} // namespace wpdj
