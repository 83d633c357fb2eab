#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace qcomm {

/// Identity of the random stream construction, recorded in reports.
/// Per-trial streams are splitmix64-derived from (master seed, trial index),
/// feed an mt19937-64 engine, and normals come from Box-Muller on 53-bit
/// uniforms. No std::*_distribution is used, so the byte stream depends only
/// on this scheme, not on the standard library implementation.
inline constexpr const char* kGeneratorId = "splitmix64/mt19937-64/box-muller v1";

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Seed of stream `index` under `master`. Distinct indices land in distinct
/// splitmix64 positions, so streams are decorrelated by construction.
inline std::uint64_t derive_stream_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t state = master + 0x9e3779b97f4a7c15ULL * (index + 1);
    std::uint64_t z = splitmix64_next(state);
    return z ^ splitmix64_next(state);
}

/// Deterministic per-trial random source.
class TrialRng {
  public:
    TrialRng(std::uint64_t master, std::uint64_t stream_index)
        : engine_(derive_stream_seed(master, stream_index)) {}

    explicit TrialRng(std::uint64_t raw_seed) : engine_(raw_seed) {}

    std::uint64_t raw() { return engine_(); }

    /// Uniform in [0, 1) with full 53-bit resolution.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Standard normal via Box-Muller; the spare deviate is cached.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 1.0 - uniform(); // (0, 1], keeps log finite
        double u2 = uniform();
        double radius = std::sqrt(-2.0 * std::log(u1));
        double angle = 6.283185307179586476925286766559 * u2;
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

    /// Complex gaussian with independent N(0,1) real and imaginary parts.
    std::complex<double> complex_normal() {
        double re = normal();
        double im = normal();
        return {re, im};
    }

  private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace qcomm
