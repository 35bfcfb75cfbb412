#include "wpdj/shaper.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "wpdj/errors.hpp"
#include "wpdj/units.hpp"

namespace wpdj {

namespace {
constexpr double kFourLn2 = 2.77258872223978123768; // 4 ln 2
}

void SpectralEnvelope::validate() const {
    if (!(fwhm_cm > 0.0)) throw DomainError("spectral envelope: fwhm must be > 0");
    if (peak_amplitude < 0.0) throw DomainError("spectral envelope: peak amplitude must be >= 0");
    if (!std::isfinite(center_cm)) throw DomainError("spectral envelope: center must be finite");
}

double SpectralEnvelope::magnitude_at(double freq_cm) const {
    const double x = (freq_cm - center_cm) / fwhm_cm;
    return peak_amplitude * std::exp(-kFourLn2 * x * x);
}

void MaskGeometry::validate() const {
    if (pixel_count < 1) throw DomainError("mask geometry: pixel count must be >= 1");
    if (!(resolution_cm > 0.0)) throw DomainError("mask geometry: resolution must be > 0");
    if (!std::isfinite(start_cm)) throw DomainError("mask geometry: start frequency must be finite");
}

MaskGeometry MaskGeometry::centered_on(double center_cm, int pixel_count, double resolution_cm) {
    MaskGeometry g{pixel_count, resolution_cm,
                   center_cm - pixel_count * resolution_cm / 2.0};
    g.validate();
    return g;
}

void PhaseMask::validate() const {
    geometry.validate();
    if (pixel_phases_deg.size() != static_cast<std::size_t>(geometry.pixel_count)) {
        throw DomainError("phase mask: phase count does not match pixel count");
    }
    for (double p : pixel_phases_deg) {
        if (!std::isfinite(p) || p < 0.0 || p >= 360.0) {
            throw DomainError("phase mask: pixel phases must lie in [0, 360)");
        }
    }
}

int pixel_for_frequency(const MaskGeometry& geometry, double freq_cm) {
    if (freq_cm < geometry.start_cm || freq_cm >= geometry.window_end_cm()) {
        std::ostringstream msg;
        msg << "frequency " << freq_cm << " cm^-1 outside mask window [" << geometry.start_cm
            << ", " << geometry.window_end_cm() << ")";
        throw OutOfWindowError(msg.str());
    }
    const int pixel =
        static_cast<int>(std::floor((freq_cm - geometry.start_cm) / geometry.resolution_cm));
    // floating roundoff at the top edge
    return pixel >= geometry.pixel_count ? geometry.pixel_count - 1 : pixel;
}

PhaseMask zero_mask(const MaskGeometry& geometry) {
    geometry.validate();
    return PhaseMask{geometry,
                     std::vector<double>(static_cast<std::size_t>(geometry.pixel_count), 0.0)};
}

PhaseMask mask_from_level_phases(const std::vector<double>& transition_freqs_cm,
                                 const PhaseSet& phases, const MaskGeometry& geometry) {
    if (transition_freqs_cm.size() != phases.size()) {
        throw DomainError("mask_from_level_phases: one transition frequency per phase required");
    }
    PhaseMask mask = zero_mask(geometry);
    std::vector<int> owner(static_cast<std::size_t>(geometry.pixel_count), -1);
    for (std::size_t k = 0; k < transition_freqs_cm.size(); ++k) {
        const int pixel = pixel_for_frequency(geometry, transition_freqs_cm[k]);
        if (owner[static_cast<std::size_t>(pixel)] >= 0) {
            std::ostringstream msg;
            msg << "transitions " << owner[static_cast<std::size_t>(pixel)] << " and " << k
                << " collide in pixel " << pixel << " (below the " << geometry.resolution_cm
                << " cm^-1 resolution)";
            throw PixelCollisionError(msg.str());
        }
        owner[static_cast<std::size_t>(pixel)] = static_cast<int>(k);
        mask.pixel_phases_deg[static_cast<std::size_t>(pixel)] = wrap_deg(phases.phases_deg[k]);
    }
    return mask;
}

double phase_at_frequency(const PhaseMask& mask, double freq_cm) {
    const int pixel = pixel_for_frequency(mask.geometry, freq_cm);
    return mask.pixel_phases_deg[static_cast<std::size_t>(pixel)];
}

std::complex<double> sample_field(const SpectralEnvelope& envelope, const PhaseMask& mask,
                                  double freq_cm) {
    const double phase_rad = deg_to_rad(phase_at_frequency(mask, freq_cm));
    return std::polar(envelope.magnitude_at(freq_cm), -phase_rad);
}

double quantize_phase(double phase_deg, double accuracy_deg) {
    if (!(accuracy_deg > 0.0)) throw DomainError("quantize_phase: accuracy must be > 0");
    return wrap_deg(std::round(phase_deg / accuracy_deg) * accuracy_deg);
}

PhaseSet quantize(const PhaseSet& phases, double accuracy_deg) {
    PhaseSet out;
    out.phases_deg.reserve(phases.size());
    for (double p : phases.phases_deg) out.phases_deg.push_back(quantize_phase(p, accuracy_deg));
    return out;
}

void write_mask_csv(std::ostream& os, const PhaseMask& mask) {
    mask.validate();
    os << "pixel_index,low_edge_cm-1,phase_deg\n";
    char row[96];
    for (int i = 0; i < mask.geometry.pixel_count; ++i) {
        const double low_edge = mask.geometry.start_cm + i * mask.geometry.resolution_cm;
        std::snprintf(row, sizeof row, "%d,%.12g,%.12g\n", i, low_edge,
                      mask.pixel_phases_deg[static_cast<std::size_t>(i)]);
        os << row;
    }
}

PhaseMask read_mask_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != "pixel_index,low_edge_cm-1,phase_deg") {
        throw DomainError("mask csv: missing or unexpected header row");
    }
    std::vector<double> low_edges;
    std::vector<double> phases;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        int index = 0;
        double low = 0.0, phase = 0.0;
        if (std::sscanf(line.c_str(), "%d,%lf,%lf", &index, &low, &phase) != 3) {
            throw DomainError("mask csv: malformed row \"" + line + "\"");
        }
        if (index != static_cast<int>(low_edges.size())) {
            throw DomainError("mask csv: pixel indices must be consecutive from 0");
        }
        low_edges.push_back(low);
        phases.push_back(phase);
    }
    if (low_edges.size() < 1) throw DomainError("mask csv: no pixel rows");
    MaskGeometry geometry;
    geometry.pixel_count = static_cast<int>(low_edges.size());
    geometry.start_cm = low_edges.front();
    geometry.resolution_cm = low_edges.size() > 1 ? low_edges[1] - low_edges[0] : 4.2;
    PhaseMask mask{geometry, std::move(phases)};
    mask.validate();
    return mask;
}

} // namespace wpdj
