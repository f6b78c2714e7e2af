#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <concepts>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "sru/error.hpp"
#include "sru/fft.hpp"
#include "sru/finite.hpp"

namespace sru {

/// Uniform periodic grid on [x_min, x_max): x_k = x_min + k dx, dx = (x_max - x_min) / n.
class Grid {
public:
    Grid(double x_min, double x_max, std::size_t n) : x_min_(x_min), x_max_(x_max), n_(n) {
        if (!(std::isfinite(x_min) && std::isfinite(x_max)) || !(x_max > x_min))
            throw error("grid: x_max must exceed x_min");
        if (n < 16 || !std::has_single_bit(n))
            throw error("grid: n must be a power of two and at least 16");
        dx_ = (x_max - x_min) / static_cast<double>(n);
    }

    double x_min() const noexcept { return x_min_; }
    double x_max() const noexcept { return x_max_; }
    std::size_t n() const noexcept { return n_; }
    double dx() const noexcept { return dx_; }
    double x(std::size_t k) const noexcept { return x_min_ + static_cast<double>(k) * dx_; }

    std::vector<double> positions() const {
        std::vector<double> xs(n_);
        for (std::size_t k = 0; k < n_; ++k)
            xs[k] = x(k);
        return xs;
    }

    std::vector<double> wavenumbers() const { return fft::wavenumbers(n_, dx_); }

    friend bool operator==(const Grid&, const Grid&) = default;

private:
    double x_min_;
    double x_max_;
    std::size_t n_;
    double dx_ = 0.0;
};

/// Relative amplitude allowed in the edge band for a state to count as confined.
inline constexpr double confinement_threshold = 1e-6;

/// Number of points at each end of the grid forming the edge band (5% of the
/// grid in total).
inline std::size_t edge_band(std::size_t n) { return std::max<std::size_t>(1, (n + 39) / 40); }

/// |psi| <= 1e-6 max|psi| on the edge band.
inline bool is_confined(const cvector& values) {
    const auto n = static_cast<std::size_t>(values.size());
    const double peak = values.cwiseAbs().maxCoeff();
    const std::size_t band = edge_band(n);
    for (std::size_t i = 0; i < band; ++i) {
        const auto lo = static_cast<Eigen::Index>(i);
        const auto hi = static_cast<Eigen::Index>(n - 1 - i);
        if (std::abs(values(lo)) > confinement_threshold * peak ||
            std::abs(values(hi)) > confinement_threshold * peak)
            return false;
    }
    return true;
}

/// sum_k |psi_k|^2 dx
inline double quadrature_norm(const Grid& grid, const cvector& values) {
    return values.squaredNorm() * grid.dx();
}

/// Sampled wavefunction normalized under the quadrature inner product. The
/// reduced Planck constant travels with the state so natural and SI units can
/// coexist.
class GridState {
public:
    const Grid& grid() const noexcept { return grid_; }
    const cvector& values() const noexcept { return values_; }
    double hbar() const noexcept { return hbar_; }
    bool confined() const noexcept { return confined_; }

private:
    GridState(Grid grid, cvector values, double hbar)
        : grid_(std::move(grid)), values_(std::move(values)), hbar_(hbar),
          confined_(is_confined(values_)) {}

    friend GridState from_samples(const Grid& grid, cvector samples, double hbar);
    friend GridState evolve_free(const GridState& s, double t, double mass);

    Grid grid_;
    cvector values_;
    double hbar_;
    bool confined_;
};

/// Normalizes raw samples; `confined` is derived from the edge band.
inline GridState from_samples(const Grid& grid, cvector samples, double hbar) {
    if (!(hbar > 0.0) || !std::isfinite(hbar))
        throw error("hbar must be positive");
    if (static_cast<std::size_t>(samples.size()) != grid.n())
        throw error("sample count " + std::to_string(samples.size()) +
                    " does not match grid size " + std::to_string(grid.n()));
    if (!samples.allFinite())
        throw error("wavefunction sample is NaN or infinite");
    const double norm = quadrature_norm(grid, samples);
    if (norm == 0.0)
        throw error("unnormalizable state: all samples are zero");
    samples /= std::sqrt(norm);
    return GridState(grid, std::move(samples), hbar);
}

/// Samples f(x_k) and normalizes.
template <class F>
    requires std::invocable<const F&, double>
GridState discretize(const F& f, const Grid& grid, double hbar) {
    cvector samples(static_cast<Eigen::Index>(grid.n()));
    for (std::size_t k = 0; k < grid.n(); ++k)
        samples(static_cast<Eigen::Index>(k)) = complex(f(grid.x(k)));
    return from_samples(grid, std::move(samples), hbar);
}

/// Quadrature inner product sum_k conj(f_k) g_k dx.
inline complex inner(const Grid& grid, const cvector& f, const cvector& g) {
    return inner(f, g) * grid.dx();
}

inline complex inner(const GridState& f, const GridState& g) {
    if (!(f.grid() == g.grid()))
        throw error("inner: states live on different grids");
    return inner(f.grid(), f.values(), g.values());
}

// ---------------------------------------------------------------------------
// canonical operators
// ---------------------------------------------------------------------------

inline cvector apply_position(const Grid& grid, const cvector& v) {
    cvector out(v.size());
    for (Eigen::Index k = 0; k < v.size(); ++k)
        out(k) = grid.x(static_cast<std::size_t>(k)) * v(k);
    return out;
}

/// -i hbar d/dx by spectral differentiation: p multiplies Fourier mode k by hbar k.
inline cvector apply_momentum(const Grid& grid, double hbar, const cvector& v) {
    if (static_cast<std::size_t>(v.size()) != grid.n())
        throw error("momentum: vector does not match grid");
    cvector work = v;
    std::span<complex> data(work.data(), static_cast<std::size_t>(work.size()));
    fft::forward(data);
    const auto k = grid.wavenumbers();
    for (std::size_t j = 0; j < data.size(); ++j)
        data[j] *= hbar * k[j];
    fft::inverse(data);
    return work;
}

inline cvector apply_position(const GridState& s) { return apply_position(s.grid(), s.values()); }

inline cvector apply_momentum(const GridState& s) {
    if (!s.confined())
        throw error("boundary leakage: momentum needs a state confined to the grid");
    return apply_momentum(s.grid(), s.hbar(), s.values());
}

/// Fourier-side norm (dx / N) sum_j |psi~_j|^2; equals the quadrature norm by Parseval.
inline double fourier_norm(const GridState& s) {
    cvector work = s.values();
    fft::forward(std::span<complex>(work.data(), static_cast<std::size_t>(work.size())));
    return work.squaredNorm() * s.grid().dx() / static_cast<double>(s.grid().n());
}

/// Exact free propagator: every Fourier mode picks up exp(-i hbar k^2 t / 2m).
inline GridState evolve_free(const GridState& s, double t, double mass) {
    if (!s.confined())
        throw error("boundary leakage: free evolution needs a confined state");
    if (!(t >= 0.0))
        throw error("evolution time must be nonnegative");
    if (!(mass > 0.0))
        throw error("mass must be positive");
    cvector work = s.values();
    std::span<complex> data(work.data(), static_cast<std::size_t>(work.size()));
    fft::forward(data);
    const auto k = s.grid().wavenumbers();
    for (std::size_t j = 0; j < data.size(); ++j)
        data[j] *= std::polar(1.0, -s.hbar() * k[j] * k[j] * t / (2.0 * mass));
    fft::inverse(data);
    GridState out(s.grid(), std::move(work), s.hbar());
    if (!out.confined())
        throw error("wavepacket left the window; enlarge grid");
    return out;
}

// ---------------------------------------------------------------------------
// GridObservable
// ---------------------------------------------------------------------------

/// Real linear combination  a x + b p + c 1 + sum_i w_i V_i(x)  where each V_i
/// is a real multiplicative function given either as a callable or as samples
/// on the grid. Real coefficients keep every combination Hermitian.
class GridObservable {
public:
    using Function = std::function<double(double)>;
    using Samples = std::vector<double>;

    static GridObservable position() { return GridObservable(1.0, 0.0, 0.0); }
    static GridObservable momentum() { return GridObservable(0.0, 1.0, 0.0); }
    static GridObservable identity() { return GridObservable(0.0, 0.0, 1.0); }

    static GridObservable multiplicative(Function f) {
        GridObservable o(0.0, 0.0, 0.0);
        o.terms_.push_back({1.0, std::move(f)});
        return o;
    }

    static GridObservable multiplicative(Samples values) {
        GridObservable o(0.0, 0.0, 0.0);
        o.terms_.push_back({1.0, std::move(values)});
        return o;
    }

    double position_coefficient() const noexcept { return position_; }
    double momentum_coefficient() const noexcept { return momentum_; }
    double constant() const noexcept { return constant_; }
    bool involves_momentum() const noexcept { return momentum_ != 0.0; }

    /// Applies the operator to an arbitrary vector; `context` supplies grid,
    /// hbar and the confinement gate.
    cvector apply(const GridState& context, const cvector& v) const {
        const Grid& grid = context.grid();
        if (static_cast<std::size_t>(v.size()) != grid.n())
            throw error("observable applied to a vector from a different grid");
        cvector out = constant_ * v;
        if (position_ != 0.0)
            out += position_ * apply_position(grid, v);
        if (momentum_ != 0.0) {
            if (!context.confined())
                throw error("boundary leakage: momentum needs a state confined to the grid");
            out += momentum_ * apply_momentum(grid, context.hbar(), v);
        }
        for (const auto& term : terms_) {
            if (const auto* f = std::get_if<Function>(&term.f)) {
                for (Eigen::Index k = 0; k < v.size(); ++k)
                    out(k) += term.weight * (*f)(grid.x(static_cast<std::size_t>(k))) * v(k);
            } else {
                const auto& samples = std::get<Samples>(term.f);
                if (samples.size() != grid.n())
                    throw error("sampled observable does not match the grid");
                for (Eigen::Index k = 0; k < v.size(); ++k)
                    out(k) += term.weight * samples[static_cast<std::size_t>(k)] * v(k);
            }
        }
        return out;
    }

    cvector apply(const GridState& s) const { return apply(s, s.values()); }

    friend GridObservable operator+(GridObservable a, const GridObservable& b) {
        a.position_ += b.position_;
        a.momentum_ += b.momentum_;
        a.constant_ += b.constant_;
        a.terms_.insert(a.terms_.end(), b.terms_.begin(), b.terms_.end());
        return a;
    }

    friend GridObservable operator*(double s, GridObservable a) {
        a.position_ *= s;
        a.momentum_ *= s;
        a.constant_ *= s;
        for (auto& term : a.terms_)
            term.weight *= s;
        return a;
    }

    friend GridObservable operator-(const GridObservable& a, const GridObservable& b) {
        return a + (-1.0) * b;
    }

    /// Short human-readable form, e.g. "1*x + -0.5*p".
    std::string describe() const {
        std::string out;
        auto add = [&out](double c, const char* name) {
            if (c == 0.0)
                return;
            if (!out.empty())
                out += " + ";
            out += std::to_string(c) + "*" + name;
        };
        add(position_, "x");
        add(momentum_, "p");
        add(constant_, "1");
        for (const auto& term : terms_)
            add(term.weight, "V(x)");
        return out.empty() ? "0" : out;
    }

private:
    GridObservable(double position, double momentum, double constant)
        : position_(position), momentum_(momentum), constant_(constant) {}

    struct Term {
        double weight;
        std::variant<Function, Samples> f;
    };

    double position_;
    double momentum_;
    double constant_;
    std::vector<Term> terms_;
};

} // namespace sru
