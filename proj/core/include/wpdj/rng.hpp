#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace wpdj {

/// SplitMix64 mixing step; used to derive well-separated stream seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Deterministic per-task seed from (global seed, stream index).
inline std::uint64_t derive_seed(std::uint64_t global_seed, std::uint64_t stream) {
    return splitmix64(splitmix64(global_seed) ^ (stream + 0x9e3779b97f4a7c15ULL));
}

/// Standard-normal stream: Box-Muller over mt19937_64.
/// Hand-rolled so output is identical across standard libraries.
class GaussianStream {
public:
    explicit GaussianStream(std::uint64_t seed) : rng_(seed) {}

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform01();
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log1p(-u1)); // log(1-u1), never log(0)
        const double a = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

private:
    double uniform01() {
        // 53 random bits -> [0, 1)
        return static_cast<double>(rng_() >> 11) * 0x1.0p-53;
    }

    std::mt19937_64 rng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace wpdj
