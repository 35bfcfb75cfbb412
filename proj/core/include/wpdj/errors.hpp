#pragma once

#include <stdexcept>

namespace wpdj {

/// Base class for every error thrown by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Bad argument: out-of-range index, length mismatch, malformed value.
struct DomainError : Error {
    using Error::Error;
};

/// The spectroscopic expansion left its validity range (effective B <= 0).
struct ModelValidityError : Error {
    using Error::Error;
};

/// A function is neither constant nor balanced.
struct PromiseViolationError : Error {
    using Error::Error;
};

/// Frequency outside the modulator window.
struct OutOfWindowError : Error {
    using Error::Error;
};

/// Two transition frequencies fell into the same modulator pixel.
struct PixelCollisionError : Error {
    using Error::Error;
};

/// Every pump coupling is zero; no wave packet can be produced.
struct NoExcitationError : Error {
    using Error::Error;
};

/// The propagator's norm drifted beyond tolerance.
struct IntegrationAccuracyError : Error {
    using Error::Error;
};

/// Constant and balanced signals are not separable under the configured model.
struct CalibrationError : Error {
    using Error::Error;
};

/// Configuration file missing, malformed, or invalid.
struct ConfigError : Error {
    using Error::Error;
};

/// A requested function is not part of the enumerated set.
struct SelectionError : Error {
    using Error::Error;
};

} // namespace wpdj
