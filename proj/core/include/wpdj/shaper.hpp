#pragma once

#include <complex>
#include <iosfwd>
#include <vector>

#include "wpdj/oracle.hpp"

namespace wpdj {

/// Gaussian spectral magnitude of the pump field.
struct SpectralEnvelope {
    double center_cm = 12430.0;
    double fwhm_cm = 150.0;
    double peak_amplitude = 1.0;

    void validate() const;

    /// Field magnitude at a frequency: peak * exp(-4 ln2 ((f-c)/fwhm)^2).
    double magnitude_at(double freq_cm) const;
};

/// Pixel layout of the spatial light modulator.
struct MaskGeometry {
    int pixel_count = 128;
    double resolution_cm = 4.2;
    double start_cm = 12161.2; // low edge of pixel 0

    void validate() const;
    double window_end_cm() const { return start_cm + pixel_count * resolution_cm; }

    /// Window centered on a frequency (the default placement).
    static MaskGeometry centered_on(double center_cm, int pixel_count = 128,
                                    double resolution_cm = 4.2);
};

/// Discrete spectral phase pattern across the modulator pixels.
struct PhaseMask {
    MaskGeometry geometry;
    std::vector<double> pixel_phases_deg; // one per pixel, in [0, 360)

    void validate() const;
};

/// floor((freq - start) / resolution); throws OutOfWindowError outside
/// [start, start + pixel_count * resolution).
int pixel_for_frequency(const MaskGeometry& geometry, double freq_cm);

PhaseMask zero_mask(const MaskGeometry& geometry);

/// Build a mask carrying one level phase per transition frequency; all other
/// pixels stay at 0 deg. Throws PixelCollisionError when two transitions
/// share a pixel (the levels would not be independently addressable).
PhaseMask mask_from_level_phases(const std::vector<double>& transition_freqs_cm,
                                 const PhaseSet& phases, const MaskGeometry& geometry);

double phase_at_frequency(const PhaseMask& mask, double freq_cm);

/// Complex spectral field value: Gaussian magnitude times e^{-i phi(pixel)}.
std::complex<double> sample_field(const SpectralEnvelope& envelope, const PhaseMask& mask,
                                  double freq_cm);

/// Nearest representable phase on a uniform grid of the given step,
/// wrapped to [0, 360).
double quantize_phase(double phase_deg, double accuracy_deg);
PhaseSet quantize(const PhaseSet& phases, double accuracy_deg);

/// Text form: header "pixel_index,low_edge_cm-1,phase_deg" then one row per pixel.
void write_mask_csv(std::ostream& os, const PhaseMask& mask);
PhaseMask read_mask_csv(std::istream& is);

} // namespace wpdj
