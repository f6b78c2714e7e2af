#pragma once

#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

#include "sru/error.hpp"

namespace sru::fft {

namespace detail {

inline void transform(std::span<std::complex<double>> data, bool inverse) {
    const std::size_t n = data.size();
    if (n == 0 || !std::has_single_bit(n))
        throw error("fft: length must be a power of two");

    // bit-reversal permutation
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1)
            j ^= bit;
        j ^= bit;
        if (i < j)
            std::swap(data[i], data[j]);
    }

    // roots[k] = exp(-+2 pi i k / n), evaluated directly instead of by recurrence
    const double sign = inverse ? 1.0 : -1.0;
    std::vector<std::complex<double>> roots(n / 2);
    for (std::size_t k = 0; k < n / 2; ++k)
        roots[k] = std::polar(1.0, sign * 2.0 * std::numbers::pi * static_cast<double>(k) /
                                       static_cast<double>(n));

    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t half = len / 2;
        const std::size_t stride = n / len;
        for (std::size_t start = 0; start < n; start += len) {
            for (std::size_t k = 0; k < half; ++k) {
                const auto u = data[start + k];
                const auto v = data[start + k + half] * roots[k * stride];
                data[start + k] = u + v;
                data[start + k + half] = u - v;
            }
        }
    }

    if (inverse) {
        const double scale = 1.0 / static_cast<double>(n);
        for (auto& z : data)
            z *= scale;
    }
}

} // namespace detail

/// In place, X_j = sum_n x_n exp(-2 pi i j n / N). No normalization.
inline void forward(std::span<std::complex<double>> data) { detail::transform(data, false); }

/// In place, x_n = (1/N) sum_j X_j exp(+2 pi i j n / N).
inline void inverse(std::span<std::complex<double>> data) { detail::transform(data, true); }

/// Angular wavenumbers of the N Fourier modes for sample spacing dx, ordered
/// as the transform output: 0, 1, ..., N/2 - 1, -N/2, ..., -1 (times 2 pi / (N dx)).
inline std::vector<double> wavenumbers(std::size_t n, double dx) {
    std::vector<double> k(n);
    const double dk = 2.0 * std::numbers::pi / (static_cast<double>(n) * dx);
    for (std::size_t j = 0; j < n; ++j) {
        const auto signed_j = j < n / 2 ? static_cast<double>(j)
                                        : static_cast<double>(j) - static_cast<double>(n);
        k[j] = signed_j * dk;
    }
    return k;
}

} // namespace sru::fft
