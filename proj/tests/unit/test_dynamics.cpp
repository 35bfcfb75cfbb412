#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "wpdj/dynamics.hpp"
#include "wpdj/errors.hpp"
#include "wpdj/units.hpp"

using namespace wpdj;

namespace {

CouplingSet equal_couplings(std::size_t count) {
    CouplingSet c;
    c.dipoles.assign(count, 1.0);
    c.field_values.assign(count, Complex{1.0, 0.0});
    return c;
}

PhaseSet phases_for_bits(const std::string& bits) {
    return encode_phases(BooleanFunction::from_bits(bits), zero_phases(bits.size()));
}

} // namespace

TEST_CASE("perturbative_excite builds the normalized superposition") {
    SUBCASE("uniform couplings, trivial function") {
        const WavePacket wp = perturbative_excite(equal_couplings(8), phases_for_bits("00000000"));
        const double expected = 1.0 / std::sqrt(8.0);
        for (const auto& c : wp.amplitudes) {
            CHECK(c.real() == doctest::Approx(expected).epsilon(1e-12));
            CHECK(std::abs(c.imag()) < 1e-12);
        }
    }
    SUBCASE("the function flips signs") {
        const WavePacket wp = perturbative_excite(equal_couplings(8), phases_for_bits("00001111"));
        const double expected = 1.0 / std::sqrt(8.0);
        for (std::size_t k = 0; k < 8; ++k) {
            const double sign = k < 4 ? 1.0 : -1.0;
            CHECK(wp.amplitudes[k].real() == doctest::Approx(sign * expected).epsilon(1e-12));
        }
    }
    SUBCASE("a single open channel takes everything") {
        CouplingSet c = equal_couplings(4);
        c.dipoles = {1.0, 0.0, 0.0, 0.0};
        const WavePacket wp = perturbative_excite(c, PhaseSet{{123.0, 17.0, 222.0, 5.0}});
        CHECK(std::abs(wp.amplitudes[0]) == doctest::Approx(1.0));
        for (std::size_t k = 1; k < 4; ++k) CHECK(std::abs(wp.amplitudes[k]) == 0.0);
    }
    SUBCASE("no excitation at all") {
        CouplingSet c = equal_couplings(4);
        c.dipoles.assign(4, 0.0);
        CHECK_THROWS_AS(perturbative_excite(c, zero_phases(4)), NoExcitationError);
    }
}

TEST_CASE("evolve rotates each amplitude without changing magnitudes") {
    const std::vector<double> energies = {0.0, 100.0};
    WavePacket wp;
    wp.amplitudes = {Complex{1.0, 0.0} / std::sqrt(2.0), Complex{1.0, 0.0} / std::sqrt(2.0)};

    SUBCASE("zero delay is the identity") {
        const WavePacket out = evolve(wp, energies, 0.0);
        CHECK(out.amplitudes == wp.amplitudes);
        CHECK(out.time_ref_ps == 0.0);
    }
    SUBCASE("a stationary level keeps its population") {
        for (double tau : {0.1, 1.0, 7.3}) {
            const WavePacket out = evolve(wp, energies, tau);
            CHECK(std::abs(out.amplitudes[0]) == doctest::Approx(std::abs(wp.amplitudes[0])));
            CHECK(std::abs(out.amplitudes[1]) == doctest::Approx(std::abs(wp.amplitudes[1])));
        }
    }
    SUBCASE("relative sign flips at tau = pi / delta-omega") {
        const double delta_omega = cm1_to_rad_per_ps(100.0);
        const double tau_flip = kPi / delta_omega;
        const WavePacket out = evolve(wp, energies, tau_flip);
        // c1/c0 should be -1: opposite phases, equal magnitude
        const Complex ratio = out.amplitudes[1] / out.amplitudes[0];
        CHECK(ratio.real() == doctest::Approx(-1.0).epsilon(1e-12));
        CHECK(std::abs(ratio.imag()) < 1e-12);
    }
    SUBCASE("length mismatch") {
        CHECK_THROWS_AS(evolve(wp, {0.0, 1.0, 2.0}, 1.0), DomainError);
    }
}

TEST_CASE("unitary_factorization shapes") {
    const std::vector<Complex> a = {Complex{0.1, 0.0}, Complex{0.0, 0.2}, Complex{-0.3, 0.1},
                                    Complex{0.05, -0.05}};

    SUBCASE("all-zero function gives the identity phase matrix") {
        const auto [u_phs, u_amp] = unitary_factorization(a, BooleanFunction::from_bits("0000"));
        for (std::size_t i = 0; i < 5; ++i) {
            for (std::size_t j = 0; j < 5; ++j) {
                CHECK(u_phs.at(i, j) == (i == j ? Complex{1.0, 0.0} : Complex{0.0, 0.0}));
            }
        }
        (void)u_amp;
    }
    SUBCASE("all-one function negates every register entry") {
        const auto f = unitary_factorization(a, BooleanFunction::from_bits("1111"));
        CHECK(f.u_phs.at(0, 0) == Complex{1.0, 0.0});
        for (std::size_t k = 1; k < 5; ++k) CHECK(f.u_phs.at(k, k) == Complex{-1.0, 0.0});
    }
    SUBCASE("zero amplitudes give the identity transfer") {
        const std::vector<Complex> zero(4, Complex{0.0, 0.0});
        const auto f = unitary_factorization(zero, BooleanFunction::from_bits("0110"));
        std::vector<Complex> e0(5, Complex{0.0, 0.0});
        e0[0] = Complex{1.0, 0.0};
        const auto out = f.product().apply(e0);
        CHECK(out[0] == Complex{1.0, 0.0});
        for (std::size_t k = 1; k < 5; ++k) CHECK(out[k] == Complex{0.0, 0.0});
    }
    SUBCASE("product applied to the launch state reproduces the signed amplitudes") {
        const auto f = unitary_factorization(a, BooleanFunction::from_bits("0110"));
        std::vector<Complex> e0(5, Complex{0.0, 0.0});
        e0[0] = Complex{1.0, 0.0};
        const auto out = f.product().apply(e0);
        const double signs[4] = {1.0, -1.0, -1.0, 1.0};
        for (std::size_t k = 0; k < 4; ++k) {
            CHECK(std::abs(out[k + 1] - signs[k] * a[k]) < 1e-15);
        }
    }
    SUBCASE("u_phs is diagonal, unitary, and squares to the identity") {
        const auto f = unitary_factorization(a, BooleanFunction::from_bits("1010"));
        const auto square = f.u_phs * f.u_phs;
        for (std::size_t i = 0; i < 5; ++i) {
            for (std::size_t j = 0; j < 5; ++j) {
                if (i != j) {
                    CHECK(f.u_phs.at(i, j) == Complex{0.0, 0.0});
                    CHECK(square.at(i, j) == Complex{0.0, 0.0});
                } else {
                    CHECK(std::abs(std::abs(f.u_phs.at(i, i)) - 1.0) < 1e-15);
                    CHECK(std::abs(square.at(i, i) - Complex{1.0, 0.0}) < 1e-15);
                }
            }
        }
    }
    SUBCASE("first row carries the negated conjugates") {
        const auto f = unitary_factorization(a, BooleanFunction::from_bits("0000"));
        for (std::size_t k = 0; k < 4; ++k) {
            CHECK(f.u_amp.at(0, k + 1) == -std::conj(a[k]));
            CHECK(f.u_amp.at(k + 1, 0) == a[k]);
        }
    }
    SUBCASE("length mismatch") {
        CHECK_THROWS_AS(unitary_factorization(a, BooleanFunction::from_bits("000000")),
                        DomainError);
    }
}

TEST_CASE("propagate_tdse guards its grid") {
    const CouplingSet c = equal_couplings(2);
    const std::vector<double> energies = {0.0, 400.0};

    SUBCASE("coarse step rejected against the beat limit") {
        PulseTemporalProfile profile{160.0, -480.0, 480.0, 2.0};
        CHECK_THROWS_AS(propagate_tdse(c, profile, energies, 0.01), DomainError);
    }
    SUBCASE("grid must span three widths") {
        PulseTemporalProfile profile{160.0, -200.0, 480.0, 0.5};
        CHECK_THROWS_AS(propagate_tdse(c, profile, energies, 0.01), DomainError);
    }
}

TEST_CASE("propagate_tdse with zero field leaves the register empty") {
    const CouplingSet c = equal_couplings(3);
    const PulseTemporalProfile profile{160.0, -480.0, 480.0, 0.5};
    const TdseResult result = propagate_tdse(c, profile, {0.0, 10.0, 20.0}, 0.0);
    CHECK(result.excited_population == 0.0);
    CHECK(result.norm_drift < 1e-12);
    CHECK_THROWS_AS(result.normalized_packet(), NoExcitationError);
}

TEST_CASE("single weak channel matches the first-order pulse-area integral") {
    CouplingSet c = equal_couplings(1);
    const PulseTemporalProfile profile{160.0, -480.0, 480.0, 0.5};
    const double scale = 0.05;
    const TdseResult result = propagate_tdse(c, profile, {0.0}, scale);

    // Gaussian area computed by hand: T sqrt(pi / (4 ln 2)) in ps, minus the
    // (negligible) +-3 FWHM truncation.
    const double area_ps = 0.16 * std::sqrt(kPi / (4.0 * std::log(2.0)));
    const double expected = scale * area_ps;

    CHECK(result.excited_population < 1e-4);
    CHECK(std::abs(result.raw_amplitudes[0]) == doctest::Approx(expected).epsilon(0.01));
    // the transferred amplitude trails the launch state by 90 degrees
    CHECK(std::arg(result.raw_amplitudes[0]) == doctest::Approx(-kPi / 2.0).epsilon(1e-6));
}

TEST_CASE("a detuned channel is attenuated by the envelope transform") {
    CouplingSet c = equal_couplings(1);
    c.detunings_cm = {20.0};
    const PulseTemporalProfile profile{160.0, -480.0, 480.0, 0.5};
    const double scale = 0.05;
    const TdseResult result = propagate_tdse(c, profile, {0.0}, scale);

    // first order: |a| = s * integral(G) * exp(-(delta T)^2 / (16 ln2)),
    // the Gaussian spectrum of the envelope evaluated at the detuning
    const double delta = cm1_to_rad_per_ps(20.0); // rad/ps
    const double T = 0.16;                        // ps
    const double area_ps = T * std::sqrt(kPi / (4.0 * std::log(2.0)));
    const double attenuation = std::exp(-delta * delta * T * T / (16.0 * std::log(2.0)));
    CHECK(std::abs(result.raw_amplitudes[0]) ==
          doctest::Approx(scale * area_ps * attenuation).epsilon(0.01));
    CHECK(result.norm_drift < 1e-6);
}

TEST_CASE("weak-field propagation converges to the perturbative packet") {
    // eight unequal couplings with nontrivial phases
    CouplingSet c;
    const PhaseSet phases{{298.1, 352.0, 215.9, 137.9, 169.7, 337.6, 192.1, 0.0}};
    for (int k = 0; k < 8; ++k) {
        c.dipoles.push_back(1.0);
        c.field_values.push_back(std::polar(0.2 + 0.1 * k, -deg_to_rad(phases.phases_deg[k])));
    }
    const WavePacket reference = perturbative_excite(c, zero_phases(8));
    const std::vector<double> energies = {0.0, 34.0, 138.1, 171.9, 274.7, 308.2, 409.7, 443.1};
    const PulseTemporalProfile profile{160.0, -480.0, 480.0, 0.5};

    double previous_pop_error = 0.0;
    std::vector<double> pop_errors;
    for (double scale : {1e-1, 1e-2, 1e-3}) {
        const TdseResult result = propagate_tdse(c, profile, energies, scale);
        CHECK(result.norm_drift < 1e-6);

        const WavePacket packet = result.normalized_packet();
        double amp_error = 0.0;
        for (std::size_t k = 0; k < 8; ++k) {
            amp_error = std::max(amp_error,
                                 std::abs(packet.amplitudes[k] - reference.amplitudes[k]));
        }
        // on resonance the renormalized direction is exact; the residual is
        // integrator noise
        CHECK(amp_error < 1e-12);

        // population error against the hand-written first-order area
        double coupling_sq = 0.0;
        for (const auto& g : c.field_values) coupling_sq += std::norm(g);
        const double area_ps = 0.16 * std::sqrt(kPi / (4.0 * std::log(2.0)));
        const double predicted = coupling_sq * scale * scale * area_ps * area_ps;
        const double pop_error =
            std::abs(result.excited_population - predicted) / predicted;
        pop_errors.push_back(pop_error);
        previous_pop_error = pop_error;
    }
    (void)previous_pop_error;

    // two decades of scale: monotone decrease with log-log slope about 2
    CHECK(pop_errors[0] > pop_errors[1]);
    CHECK(pop_errors[1] > pop_errors[2]);
    const double slope = std::log10(pop_errors[0] / pop_errors[2]) / 2.0;
    CHECK(slope == doctest::Approx(2.0).epsilon(0.15));
}

TEST_CASE("first_order_population matches its closed form") {
    CouplingSet c = equal_couplings(2);
    c.field_values = {Complex{0.5, 0.0}, Complex{0.0, 0.25}};
    const PulseTemporalProfile profile{160.0, -480.0, 480.0, 0.5};
    const double area_ps = 0.16 * std::sqrt(kPi / (4.0 * std::log(2.0)));
    const double expected = (0.25 + 0.0625) * 0.01 * area_ps * area_ps;
    CHECK(first_order_population(c, profile, 0.1) == doctest::Approx(expected).epsilon(1e-6));
}
