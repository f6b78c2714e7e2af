#pragma once

#include <cmath>
#include <complex>
#include <concepts>
#include <cstdint>
#include <span>
#include <vector>

#include "sru/error.hpp"
#include "sru/finite.hpp"
#include "sru/grid.hpp"
#include "sru/random.hpp"

namespace sru {

// ---------------------------------------------------------------------------
// grid families
// ---------------------------------------------------------------------------

/// psi(x) ~ exp(-(1 - i chirp)(x - center)^2 / (4 sigma^2)) exp(i p0 (x - center) / hbar)
///
/// Moments: <q> = center, <p> = p0, Var q = sigma^2, Cov(q,p) = hbar chirp / 2,
/// Var p = hbar^2 (1 + chirp^2) / (4 sigma^2). chirp = 0 is the
/// minimum-uncertainty packet; any chirp saturates the covariance-aware bound.
inline GridState gaussian(const Grid& grid, double hbar, double center, double mean_momentum,
                          double sigma, double chirp) {
    if (!(sigma > 0.0))
        throw error("gaussian: sigma must be positive");
    const complex width(1.0, -chirp);
    auto f = [&](double x) {
        const double d = x - center;
        return std::exp(-width * d * d / (4.0 * sigma * sigma) +
                        complex(0.0, mean_momentum * d / hbar));
    };
    GridState s = discretize(f, grid, hbar);
    if (!s.confined())
        throw error("gaussian: packet is not confined to the grid");
    return s;
}

/// psi = r exp(i phi) from samples of r >= 0 and phi on the grid.
inline GridState modulus_phase(const Grid& grid, double hbar, std::span<const double> r,
                               std::span<const double> phi) {
    if (r.size() != grid.n() || phi.size() != grid.n())
        throw error("modulus_phase: sample count does not match the grid");
    cvector samples(static_cast<Eigen::Index>(grid.n()));
    for (std::size_t k = 0; k < grid.n(); ++k) {
        if (r[k] < 0.0)
            throw error("modulus_phase: r must be nonnegative");
        samples(static_cast<Eigen::Index>(k)) = std::polar(r[k], phi[k]);
    }
    GridState s = from_samples(grid, std::move(samples), hbar);
    if (!s.confined())
        throw error("modulus_phase: state is not confined to the grid");
    return s;
}

template <class R, class Phi>
    requires std::invocable<const R&, double> && std::invocable<const Phi&, double>
GridState modulus_phase(const Grid& grid, double hbar, const R& r, const Phi& phi) {
    std::vector<double> rs(grid.n());
    std::vector<double> phis(grid.n());
    for (std::size_t k = 0; k < grid.n(); ++k) {
        rs[k] = r(grid.x(k));
        phis[k] = phi(grid.x(k));
    }
    return modulus_phase(grid, hbar, rs, phis);
}

/// Position-momentum covariance of r exp(i phi) straight from the modulus and
/// the phase gradient:
///   hbar [ int x r^2 phi' dx - int x r^2 dx * int r^2 phi' dx ],
/// with r^2 normalized to unit integral.
inline double modulus_phase_covariance(const Grid& grid, double hbar, std::span<const double> r,
                                       std::span<const double> dphi) {
    if (r.size() != grid.n() || dphi.size() != grid.n())
        throw error("modulus_phase_covariance: sample count does not match the grid");
    double norm = 0.0;
    double x_mean = 0.0;
    double grad_mean = 0.0;
    double x_grad = 0.0;
    for (std::size_t k = 0; k < grid.n(); ++k) {
        const double w = r[k] * r[k];
        const double x = grid.x(k);
        norm += w;
        x_mean += x * w;
        grad_mean += dphi[k] * w;
        x_grad += x * dphi[k] * w;
    }
    if (norm == 0.0)
        throw error("modulus_phase_covariance: r vanishes everywhere");
    return hbar * (x_grad / norm - (x_mean / norm) * (grad_mean / norm));
}

template <class R, class DPhi>
    requires std::invocable<const R&, double> && std::invocable<const DPhi&, double>
double modulus_phase_covariance(const Grid& grid, double hbar, const R& r, const DPhi& dphi) {
    std::vector<double> rs(grid.n());
    std::vector<double> gs(grid.n());
    for (std::size_t k = 0; k < grid.n(); ++k) {
        rs[k] = r(grid.x(k));
        gs[k] = dphi(grid.x(k));
    }
    return modulus_phase_covariance(grid, hbar, rs, gs);
}

// ---------------------------------------------------------------------------
// random finite instances
// ---------------------------------------------------------------------------

/// Independent complex normals, normalized. Consumes `dim` draws from rng.
inline FiniteState random_state(Eigen::Index dim, SplitMix64& rng) {
    if (dim < 2)
        throw error("random_state: dimension must be at least 2");
    cvector v(dim);
    for (Eigen::Index k = 0; k < dim; ++k)
        v(k) = rng.complex_normal();
    return make_state(std::move(v));
}

inline FiniteState random_state(Eigen::Index dim, std::uint64_t seed) {
    SplitMix64 rng(seed);
    return random_state(dim, rng);
}

/// (G + G^H) / 2 for a complex normal matrix G filled row by row.
inline FiniteOperator random_hermitian(Eigen::Index dim, SplitMix64& rng) {
    if (dim < 2)
        throw error("random_hermitian: dimension must be at least 2");
    cmatrix g(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i)
        for (Eigen::Index j = 0; j < dim; ++j)
            g(i, j) = rng.complex_normal();
    return FiniteOperator(0.5 * (g + g.adjoint()));
}

inline FiniteOperator random_hermitian(Eigen::Index dim, std::uint64_t seed) {
    SplitMix64 rng(seed);
    return random_hermitian(dim, rng);
}

// ---------------------------------------------------------------------------
// spin-1/2 matrices
// ---------------------------------------------------------------------------

struct SpinTriple {
    FiniteOperator x;
    FiniteOperator y;
    FiniteOperator z;
};

/// Pauli matrices; [X, Y] = 2i Z holds exactly in floating point.
inline SpinTriple spin_triple() {
    const complex i(0.0, 1.0);
    cmatrix x(2, 2), y(2, 2), z(2, 2);
    x << 0.0, 1.0, 1.0, 0.0;
    y << 0.0, -i, i, 0.0;
    z << 1.0, 0.0, 0.0, -1.0;
    return {FiniteOperator(x), FiniteOperator(y), FiniteOperator(z)};
}

} // namespace sru
