#pragma once

#include <cmath>

namespace wpdj {

inline constexpr double kPi = 3.14159265358979323846;

/// Speed of light in cm/ps.
inline constexpr double kSpeedOfLightCmPerPs = 0.0299792458;

/// Angular frequency carried by 1 cm^-1 of term energy, in rad/ps.
/// This is the single place where wavenumbers become phases.
inline constexpr double kRadPerPsPerCm = 2.0 * kPi * kSpeedOfLightCmPerPs;

inline double cm1_to_rad_per_ps(double wavenumber_cm) {
    return wavenumber_cm * kRadPerPsPerCm;
}

inline double deg_to_rad(double deg) { return deg * (kPi / 180.0); }
inline double rad_to_deg(double rad) { return rad * (180.0 / kPi); }

/// Reduce an angle in degrees to [0, 360).
inline double wrap_deg(double deg) {
    double r = std::fmod(deg, 360.0);
    if (r < 0.0) r += 360.0;
    if (r >= 360.0) r = 0.0;
    return r;
}

} // namespace wpdj
