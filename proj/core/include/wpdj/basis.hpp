#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace wpdj {

/// A rovibrational eigenstate (v, J) with its term energy in cm^-1,
/// relative to a fixed (configurable) reference.
struct RovibrationalLevel {
    int v = 0;
    int J = 0;
    double energy_cm = 0.0;
};

/// Dunham-style expansion constants, all in cm^-1.
///
/// The defaults are representative magnitudes chosen so that the default
/// eight-level register (a) stays monotonically bound up to v = 100 and
/// (b) fits inside the default 128 x 4.2 cm^-1 modulator window.
struct SpectroscopicConstants {
    double omega_e = 160.0;
    double omega_e_x_e = 0.75;
    double B_e = 0.5;
    double alpha_e = 0.003;
    double T_e = 0.0;

    void validate() const; // throws DomainError
};

/// E = T_e + omega_e (v+1/2) - omega_e_x_e (v+1/2)^2
///       + [B_e - alpha_e (v+1/2)] J(J+1)
///
/// Throws ModelValidityError when the effective rotational constant is <= 0,
/// DomainError for negative quantum numbers.
double term_energy(const SpectroscopicConstants& constants, int v, int J);

/// The ordered level register; list order defines the register index k.
/// Any even count >= 2 is allowed so registers of 2m levels (not only 2^n)
/// can run through the same pipeline.
class LevelBasis {
public:
    explicit LevelBasis(std::vector<RovibrationalLevel> levels);

    std::size_t size() const { return levels_.size(); }
    const std::vector<RovibrationalLevel>& levels() const { return levels_; }

    /// Throws DomainError when k is out of range.
    const RovibrationalLevel& level_for_index(std::size_t k) const;

    std::vector<double> energies_cm() const;

    /// Qubit count when size() is a power of two, 0 otherwise.
    int qubit_count() const { return qubits_; }

private:
    std::vector<RovibrationalLevel> levels_;
    int qubits_ = 0;
};

/// MSB-first binary expansion of register index k on n qubits.
/// Throws DomainError when k >= 2^n or n is out of [1, 62].
std::string index_to_bits(std::size_t k, int n);

/// Inverse of index_to_bits. Throws DomainError on malformed input.
std::size_t bits_to_index(const std::string& bits);

/// The default register ladder: v = 13, 14, ... with J alternating 17, 19.
/// For level_count = 8 this is exactly the three-qubit mapping
/// k=0 -> (13,17), k=1 -> (13,19), ..., k=7 -> (16,19).
LevelBasis default_basis(const SpectroscopicConstants& constants,
                         std::size_t level_count = 8);

} // namespace wpdj
