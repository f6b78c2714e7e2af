#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace sru {

/// Portable seeded generator used for every random state and operator.
///
/// The algorithm is fixed so that a seed reproduces the same instances in any
/// language:
///   - raw 64-bit words come from SplitMix64
///       state += 0x9E3779B97F4A7C15
///       z = state
///       z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///       z = (z ^ (z >> 27)) * 0x94D049BB133111EB
///       return z ^ (z >> 31)
///   - uniform() = ((z >> 11) + 1) * 2^-53, which lies in (0, 1]
///   - complex_normal() draws u1 then u2 and applies Box-Muller:
///       r = sqrt(-2 ln u1),  re = r cos(2 pi u2),  im = r sin(2 pi u2)
///     so real and imaginary parts are independent N(0, 1).
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    std::uint64_t next() noexcept {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    double uniform() noexcept {
        return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
    }

    std::complex<double> complex_normal() noexcept {
        const double u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        return {r * std::cos(angle), r * std::sin(angle)};
    }

private:
    std::uint64_t state_;
};

} // namespace sru
