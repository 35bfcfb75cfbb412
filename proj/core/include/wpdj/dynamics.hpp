#pragma once

#include <complex>
#include <vector>

#include "wpdj/oracle.hpp"

namespace wpdj {

using Complex = std::complex<double>;

/// Complex amplitudes over the level register. time_ref_ps counts from the
/// pump pulse envelope center, which is where the free-evolution clock of
/// every excited amplitude starts.
struct WavePacket {
    std::vector<Complex> amplitudes;
    double time_ref_ps = 0.0;

    std::size_t size() const { return amplitudes.size(); }
};

/// Per-level pump couplings. field_values hold the complex spectral field at
/// each transition (magnitude times any shaper phase); dipole x field is the
/// Rabi coupling in rad/ps once scaled by the temporal envelope.
struct CouplingSet {
    std::vector<double> dipoles;
    std::vector<Complex> field_values;
    std::vector<double> detunings_cm; // offset from exact resonance, default 0

    std::size_t size() const { return dipoles.size(); }
    void validate() const;
};

/// Gaussian temporal field envelope of the pump pulse.
struct PulseTemporalProfile {
    double duration_fwhm_fs = 160.0;
    double t_start_fs = -480.0;
    double t_end_fs = 480.0;
    double step_fs = 0.5;

    /// Checks duration/step positivity and that the grid spans at least
    /// +-3 FWHM around the envelope center.
    void validate() const;

    double envelope_at(double t_fs) const;
};

/// First-order weak-field excitation: c_k proportional to
/// e^{-i phi_k} mu_k eps_k, normalized to unit population over the register.
/// Throws NoExcitationError when every coupling vanishes.
WavePacket perturbative_excite(const CouplingSet& couplings, const PhaseSet& phases);

/// Free evolution: c_k(tau) = c_k(0) e^{-i omega_k tau} with omega_k taken
/// from the term energies in cm^-1. Magnitudes are untouched.
WavePacket evolve(const WavePacket& packet, const std::vector<double>& energies_cm,
                  double tau_ps);

/// Dense square complex matrix; just enough linear algebra for the
/// first-order factorization below.
class ComplexMatrix {
public:
    explicit ComplexMatrix(std::size_t n) : n_(n), data_(n * n, Complex{0.0, 0.0}) {}

    static ComplexMatrix identity(std::size_t n);

    std::size_t size() const { return n_; }
    Complex& at(std::size_t row, std::size_t col) { return data_[row * n_ + col]; }
    const Complex& at(std::size_t row, std::size_t col) const { return data_[row * n_ + col]; }

    ComplexMatrix operator*(const ComplexMatrix& rhs) const;
    std::vector<Complex> apply(const std::vector<Complex>& v) const;

private:
    std::size_t n_;
    std::vector<Complex> data_;
};

/// The (2m+1)-dimensional factorization of the single-pulse transfer:
/// u_phs is diagonal with entries {1, (-1)^{f(0)}, ...} and encodes the
/// function; u_amp carries the function-independent amplitude transfer,
/// first column (1, a_0, ...)^T and first row (1, -a_0*, ...).
struct UnitaryFactorization {
    ComplexMatrix u_phs;
    ComplexMatrix u_amp;

    ComplexMatrix product() const { return u_phs * u_amp; }
};

UnitaryFactorization unitary_factorization(const std::vector<Complex>& amplitudes,
                                           const BooleanFunction& f);

/// Output of the direct time-dependent propagation.
struct TdseResult {
    /// Interaction-picture amplitudes of the excited manifold at pulse end.
    std::vector<Complex> raw_amplitudes;
    double excited_population = 0.0;
    double norm_drift = 0.0;

    /// Excited amplitudes renormalized to unit population, in the global
    /// phase convention of the perturbative limit. Throws NoExcitationError
    /// when nothing was excited.
    WavePacket normalized_packet() const;
};

/// Integrates i d/dt psi = H(t) psi over the (2m+1)-state vector with the
/// launch level initially populated, using fixed-step RK4 in the rotating
/// frame (each excited level keeps only its detuning). The step must satisfy
/// step <= 1 / (20 max|omega_k - omega_l|); the final norm is checked and an
/// IntegrationAccuracyError is thrown when it drifted by more than 1e-6.
TdseResult propagate_tdse(const CouplingSet& couplings, const PulseTemporalProfile& profile,
                          const std::vector<double>& energies_cm, double field_scale);

/// Closed-form first-order excited population for the Gaussian pulse:
/// sum_k |field_scale mu_k eps_k|^2 (integral of the envelope over the grid)^2.
/// The exact population falls below this as sin^2 falls below its argument
/// squared, which is what the convergence study measures.
double first_order_population(const CouplingSet& couplings, const PulseTemporalProfile& profile,
                              double field_scale);

} // namespace wpdj
