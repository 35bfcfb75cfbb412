#include "wpdj/basis.hpp"

#include <set>
#include <utility>

#include "wpdj/errors.hpp"

namespace wpdj {

void SpectroscopicConstants::validate() const {
    if (!(omega_e > 0.0)) throw DomainError("spectroscopic constants: omega_e must be > 0");
    if (!(B_e > 0.0)) throw DomainError("spectroscopic constants: B_e must be > 0");
    if (omega_e_x_e < 0.0) throw DomainError("spectroscopic constants: omega_e_x_e must be >= 0");
    if (alpha_e < 0.0) throw DomainError("spectroscopic constants: alpha_e must be >= 0");
}

double term_energy(const SpectroscopicConstants& constants, int v, int J) {
    if (v < 0 || J < 0) {
        throw DomainError("term_energy: quantum numbers must be non-negative");
    }
    const double vh = static_cast<double>(v) + 0.5;
    const double b_eff = constants.B_e - constants.alpha_e * vh;
    if (!(b_eff > 0.0)) {
        throw ModelValidityError("term_energy: effective rotational constant <= 0 at v=" +
                                 std::to_string(v));
    }
    return constants.T_e + constants.omega_e * vh - constants.omega_e_x_e * vh * vh +
           b_eff * static_cast<double>(J) * static_cast<double>(J + 1);
}

LevelBasis::LevelBasis(std::vector<RovibrationalLevel> levels) : levels_(std::move(levels)) {
    const std::size_t n = levels_.size();
    if (n < 2 || n % 2 != 0) {
        throw DomainError("level basis: level count must be even and >= 2");
    }
    std::set<std::pair<int, int>> seen;
    for (const auto& level : levels_) {
        if (!seen.insert({level.v, level.J}).second) {
            throw DomainError("level basis: duplicate level (v=" + std::to_string(level.v) +
                              ", J=" + std::to_string(level.J) + ")");
        }
    }
    std::size_t count = n;
    while (count > 1 && count % 2 == 0) {
        count /= 2;
        ++qubits_;
    }
    if (count != 1) qubits_ = 0; // not a power of two
}

const RovibrationalLevel& LevelBasis::level_for_index(std::size_t k) const {
    if (k >= levels_.size()) {
        throw DomainError("level_for_index: index " + std::to_string(k) +
                          " out of range for " + std::to_string(levels_.size()) + " levels");
    }
    return levels_[k];
}

std::vector<double> LevelBasis::energies_cm() const {
    std::vector<double> energies;
    energies.reserve(levels_.size());
    for (const auto& level : levels_) energies.push_back(level.energy_cm);
    return energies;
}

std::string index_to_bits(std::size_t k, int n) {
    if (n < 1 || n > 62) throw DomainError("index_to_bits: qubit count out of range");
    const std::size_t limit = std::size_t{1} << n;
    if (k >= limit) {
        throw DomainError("index_to_bits: index " + std::to_string(k) +
                          " out of range for " + std::to_string(n) + " qubits");
    }
    std::string bits(static_cast<std::size_t>(n), '0');
    for (int i = 0; i < n; ++i) {
        if (k & (std::size_t{1} << (n - 1 - i))) bits[static_cast<std::size_t>(i)] = '1';
    }
    return bits;
}

std::size_t bits_to_index(const std::string& bits) {
    if (bits.empty() || bits.size() > 62) throw DomainError("bits_to_index: bad length");
    std::size_t k = 0;
    for (char c : bits) {
        if (c != '0' && c != '1') throw DomainError("bits_to_index: non-binary character");
        k = (k << 1) | static_cast<std::size_t>(c - '0');
    }
    return k;
}

LevelBasis default_basis(const SpectroscopicConstants& constants, std::size_t level_count) {
    constants.validate();
    std::vector<RovibrationalLevel> levels;
    levels.reserve(level_count);
    for (std::size_t i = 0; i < level_count; ++i) {
        const int v = 13 + static_cast<int>(i / 2);
        const int J = (i % 2 == 0) ? 17 : 19;
        levels.push_back({v, J, term_energy(constants, v, J)});
    }
    return LevelBasis(std::move(levels));
}

} // namespace wpdj
