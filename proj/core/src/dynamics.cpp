#include "wpdj/dynamics.hpp"

#include <cmath>
#include <utility>

#include "wpdj/errors.hpp"
#include "wpdj/units.hpp"

namespace wpdj {

namespace {
constexpr double kFourLn2 = 2.77258872223978123768;
const Complex kImag{0.0, 1.0};
} // namespace

void CouplingSet::validate() const {
    if (dipoles.empty()) throw DomainError("coupling set: must not be empty");
    if (field_values.size() != dipoles.size()) {
        throw DomainError("coupling set: field value count must match dipole count");
    }
    if (!detunings_cm.empty() && detunings_cm.size() != dipoles.size()) {
        throw DomainError("coupling set: detuning count must match dipole count");
    }
    for (double mu : dipoles) {
        if (!(mu >= 0.0)) throw DomainError("coupling set: dipoles must be >= 0");
    }
}

void PulseTemporalProfile::validate() const {
    if (!(duration_fwhm_fs > 0.0)) throw DomainError("pulse profile: duration must be > 0");
    if (!(step_fs > 0.0)) throw DomainError("pulse profile: step must be > 0");
    if (!(t_end_fs > t_start_fs)) throw DomainError("pulse profile: empty time grid");
    if (t_start_fs > -3.0 * duration_fwhm_fs || t_end_fs < 3.0 * duration_fwhm_fs) {
        throw DomainError("pulse profile: grid must span at least +-3 FWHM");
    }
}

double PulseTemporalProfile::envelope_at(double t_fs) const {
    const double x = t_fs / duration_fwhm_fs;
    return std::exp(-kFourLn2 * x * x);
}

WavePacket perturbative_excite(const CouplingSet& couplings, const PhaseSet& phases) {
    couplings.validate();
    if (phases.size() != couplings.size()) {
        throw DomainError("perturbative_excite: phase count must match coupling count");
    }
    WavePacket packet;
    packet.amplitudes.reserve(couplings.size());
    double norm_sq = 0.0;
    for (std::size_t k = 0; k < couplings.size(); ++k) {
        const Complex c = std::polar(1.0, -deg_to_rad(phases.phases_deg[k])) *
                          couplings.dipoles[k] * couplings.field_values[k];
        norm_sq += std::norm(c);
        packet.amplitudes.push_back(c);
    }
    if (norm_sq == 0.0) {
        throw NoExcitationError("perturbative_excite: every coupling is zero");
    }
    const double inv_norm = 1.0 / std::sqrt(norm_sq);
    for (auto& c : packet.amplitudes) c *= inv_norm;
    packet.time_ref_ps = 0.0;
    return packet;
}

WavePacket evolve(const WavePacket& packet, const std::vector<double>& energies_cm,
                  double tau_ps) {
    if (energies_cm.size() != packet.size()) {
        throw DomainError("evolve: energy count must match amplitude count");
    }
    WavePacket out;
    out.amplitudes.reserve(packet.size());
    for (std::size_t k = 0; k < packet.size(); ++k) {
        const double angle = cm1_to_rad_per_ps(energies_cm[k]) * tau_ps;
        out.amplitudes.push_back(packet.amplitudes[k] * std::polar(1.0, -angle));
    }
    out.time_ref_ps = packet.time_ref_ps + tau_ps;
    return out;
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Complex{1.0, 0.0};
    return m;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& rhs) const {
    if (rhs.n_ != n_) throw DomainError("matrix product: dimension mismatch");
    ComplexMatrix out(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t k = 0; k < n_; ++k) {
            const Complex lhs_ik = at(i, k);
            if (lhs_ik == Complex{0.0, 0.0}) continue;
            for (std::size_t j = 0; j < n_; ++j) {
                out.at(i, j) += lhs_ik * rhs.at(k, j);
            }
        }
    }
    return out;
}

std::vector<Complex> ComplexMatrix::apply(const std::vector<Complex>& v) const {
    if (v.size() != n_) throw DomainError("matrix apply: dimension mismatch");
    std::vector<Complex> out(n_, Complex{0.0, 0.0});
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = 0; j < n_; ++j) out[i] += at(i, j) * v[j];
    }
    return out;
}

UnitaryFactorization unitary_factorization(const std::vector<Complex>& amplitudes,
                                           const BooleanFunction& f) {
    if (amplitudes.size() != f.size()) {
        throw DomainError("unitary_factorization: amplitude count must match function size");
    }
    const std::size_t dim = amplitudes.size() + 1;
    ComplexMatrix u_phs = ComplexMatrix::identity(dim);
    for (std::size_t k = 0; k < f.size(); ++k) {
        u_phs.at(k + 1, k + 1) = Complex{f.value(k) ? -1.0 : 1.0, 0.0};
    }
    ComplexMatrix u_amp = ComplexMatrix::identity(dim);
    for (std::size_t k = 0; k < amplitudes.size(); ++k) {
        u_amp.at(k + 1, 0) = amplitudes[k];
        u_amp.at(0, k + 1) = -std::conj(amplitudes[k]);
    }
    return UnitaryFactorization{std::move(u_phs), std::move(u_amp)};
}

WavePacket TdseResult::normalized_packet() const {
    if (!(excited_population > 0.0)) {
        throw NoExcitationError("propagation left the excited manifold empty");
    }
    WavePacket packet;
    packet.amplitudes.reserve(raw_amplitudes.size());
    const double inv_norm = 1.0 / std::sqrt(excited_population);
    for (const Complex& a : raw_amplitudes) {
        // First-order transfer carries a global -i; rotate it away so the
        // weak-field limit reproduces the perturbative amplitudes elementwise.
        packet.amplitudes.push_back(kImag * a * inv_norm);
    }
    packet.time_ref_ps = 0.0;
    return packet;
}

namespace {

/// Right-hand side of the rotating-frame equations:
///   i a0'   = sum_k conj(g_k) a_k
///   i a_k'  = delta_k a_k + g_k a0
/// with g_k(t) = scale * mu_k * field_k * envelope(t), in rad/fs.
void derivative(const std::vector<Complex>& g, const std::vector<double>& detuning_rad_fs,
                const std::vector<Complex>& psi, std::vector<Complex>& dpsi) {
    const std::size_t levels = g.size();
    Complex sum{0.0, 0.0};
    for (std::size_t k = 0; k < levels; ++k) sum += std::conj(g[k]) * psi[k + 1];
    dpsi[0] = -kImag * sum;
    for (std::size_t k = 0; k < levels; ++k) {
        dpsi[k + 1] = -kImag * (detuning_rad_fs[k] * psi[k + 1] + g[k] * psi[0]);
    }
}

} // namespace

TdseResult propagate_tdse(const CouplingSet& couplings, const PulseTemporalProfile& profile,
                          const std::vector<double>& energies_cm, double field_scale) {
    couplings.validate();
    profile.validate();
    if (energies_cm.size() != couplings.size()) {
        throw DomainError("propagate_tdse: energy count must match coupling count");
    }
    if (!(field_scale >= 0.0)) throw DomainError("propagate_tdse: field scale must be >= 0");

    // The step must resolve the fastest level-spacing beat.
    double max_split_cm = 0.0;
    for (double ei : energies_cm) {
        for (double ej : energies_cm) max_split_cm = std::max(max_split_cm, std::abs(ei - ej));
    }
    if (max_split_cm > 0.0) {
        const double max_split_rad_fs = cm1_to_rad_per_ps(max_split_cm) * 1e-3;
        const double step_limit_fs = 1.0 / (20.0 * max_split_rad_fs);
        if (profile.step_fs > step_limit_fs) {
            throw DomainError("propagate_tdse: step " + std::to_string(profile.step_fs) +
                              " fs exceeds the beat-resolution limit of " +
                              std::to_string(step_limit_fs) + " fs");
        }
    }

    const std::size_t levels = couplings.size();
    std::vector<double> detuning_rad_fs(levels, 0.0);
    if (!couplings.detunings_cm.empty()) {
        for (std::size_t k = 0; k < levels; ++k) {
            detuning_rad_fs[k] = cm1_to_rad_per_ps(couplings.detunings_cm[k]) * 1e-3;
        }
    }
    // mu * field is a Rabi coupling in rad/ps; the grid runs in fs.
    std::vector<Complex> bare_g(levels);
    for (std::size_t k = 0; k < levels; ++k) {
        bare_g[k] = field_scale * couplings.dipoles[k] * couplings.field_values[k] * 1e-3;
    }

    const double span = profile.t_end_fs - profile.t_start_fs;
    const std::size_t steps = static_cast<std::size_t>(std::ceil(span / profile.step_fs));
    const double h = span / static_cast<double>(steps);

    std::vector<Complex> psi(levels + 1, Complex{0.0, 0.0});
    psi[0] = Complex{1.0, 0.0};

    std::vector<Complex> g(levels), k1(levels + 1), k2(levels + 1), k3(levels + 1),
        k4(levels + 1), tmp(levels + 1);
    auto eval_g = [&](double t_fs) {
        const double env = profile.envelope_at(t_fs);
        for (std::size_t k = 0; k < levels; ++k) g[k] = bare_g[k] * env;
    };

    for (std::size_t step = 0; step < steps; ++step) {
        const double t = profile.t_start_fs + static_cast<double>(step) * h;

        eval_g(t);
        derivative(g, detuning_rad_fs, psi, k1);
        for (std::size_t i = 0; i <= levels; ++i) tmp[i] = psi[i] + 0.5 * h * k1[i];

        eval_g(t + 0.5 * h);
        derivative(g, detuning_rad_fs, tmp, k2);
        for (std::size_t i = 0; i <= levels; ++i) tmp[i] = psi[i] + 0.5 * h * k2[i];

        derivative(g, detuning_rad_fs, tmp, k3);
        for (std::size_t i = 0; i <= levels; ++i) tmp[i] = psi[i] + h * k3[i];

        eval_g(t + h);
        derivative(g, detuning_rad_fs, tmp, k4);
        for (std::size_t i = 0; i <= levels; ++i) {
            psi[i] += (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
    }

    double total_norm = 0.0;
    double excited = 0.0;
    for (std::size_t i = 0; i <= levels; ++i) {
        const double p = std::norm(psi[i]);
        total_norm += p;
        if (i > 0) excited += p;
    }

    TdseResult result;
    result.raw_amplitudes.assign(psi.begin() + 1, psi.end());
    result.excited_population = excited;
    result.norm_drift = std::abs(total_norm - 1.0);
    if (result.norm_drift > 1e-6) {
        throw IntegrationAccuracyError("propagate_tdse: norm drifted by " +
                                       std::to_string(result.norm_drift) +
                                       "; the step size is too coarse");
    }
    return result;
}

double first_order_population(const CouplingSet& couplings, const PulseTemporalProfile& profile,
                              double field_scale) {
    couplings.validate();
    profile.validate();
    // integral of exp(-4 ln2 t^2/T^2) over [t_start, t_end], in ps
    const double scale = std::sqrt(kFourLn2) / profile.duration_fwhm_fs;
    const double sqrt_pi = 1.77245385090551602730;
    const double integral_fs = (profile.duration_fwhm_fs / std::sqrt(kFourLn2)) * (sqrt_pi / 2.0) *
                               (std::erf(profile.t_end_fs * scale) -
                                std::erf(profile.t_start_fs * scale));
    const double integral_ps = integral_fs * 1e-3;
    double coupling_sq = 0.0;
    for (std::size_t k = 0; k < couplings.size(); ++k) {
        coupling_sq += std::norm(couplings.dipoles[k] * couplings.field_values[k]);
    }
    const double area = field_scale * integral_ps;
    return coupling_sq * area * area;
}

} // namespace wpdj
