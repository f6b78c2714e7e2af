#pragma once

#include <cmath>
#include <numbers>

#include "sru/error.hpp"

namespace sru {

/// Pinned SI constants.
namespace si {
inline constexpr double planck = 6.62607015e-34;          // J s
inline constexpr double hbar = planck / (2.0 * std::numbers::pi);
inline constexpr double electron_mass = 9.1093837015e-31; // kg
} // namespace si

/// Initial second moments of a free particle of mass `mass`.
///
/// The moments must describe a physical state, i.e. the covariance matrix
/// determinant may not drop below hbar^2 / 4 (checked relative to that bound).
class SpreadingProblem {
public:
    SpreadingProblem(double var_q0, double var_p0, double cov0, double mass, double hbar)
        : var_q0_(var_q0), var_p0_(var_p0), cov0_(cov0), mass_(mass), hbar_(hbar) {
        if (!(mass > 0.0))
            throw error("mass must be positive");
        if (!(hbar > 0.0))
            throw error("hbar must be positive");
        if (!(var_q0 > 0.0) || !(var_p0 > 0.0))
            throw error("initial variances must be positive");
        const double bound = hbar * hbar / 4.0;
        if (var_q0 * var_p0 - cov0 * cov0 < bound * (1.0 - 1e-12))
            throw error("unphysical initial moments: Var(q) Var(p) - Cov^2 < hbar^2/4");
    }

    /// Minimum-uncertainty start with no covariance: Var(p) = (hbar/2)^2 / Var(q).
    static SpreadingProblem saturating(double var_q0, double mass, double hbar) {
        return {var_q0, hbar * hbar / (4.0 * var_q0), 0.0, mass, hbar};
    }

    double var_q0() const noexcept { return var_q0_; }
    double var_p0() const noexcept { return var_p0_; }
    double cov0() const noexcept { return cov0_; }
    double mass() const noexcept { return mass_; }
    double hbar() const noexcept { return hbar_; }

private:
    double var_q0_;
    double var_p0_;
    double cov0_;
    double mass_;
    double hbar_;
};

/// Var q(t) for q(t) = q0 + (t/m) p0:
///   Var q0 + (2t/m) Cov(q0,p0) + (t/m)^2 Var p0.
/// The covariance enters linearly; a squared bracket would not have units of
/// length^2. The wave-picture propagator in grid.hpp reproduces this form.
inline double spread_variance(const SpreadingProblem& p, double t) {
    if (!(t >= 0.0))
        throw error("time must be nonnegative");
    const double r = t / p.mass();
    return p.var_q0() + 2.0 * r * p.cov0() + r * r * p.var_p0();
}

struct OptimalSpread {
    double var_q0_opt = 0.0;  ///< initial variance minimizing Var q(t)
    double var_q_final = 0.0; ///< the minimum itself, twice var_q0_opt
};

/// Over minimum-uncertainty, covariance-free starts the two addends of the
/// spreading law are equal at the optimum, giving Var q0 = hbar t / 2m.
inline OptimalSpread optimal_initial_spread(double t, double mass, double hbar) {
    if (!(t > 0.0))
        throw error("optimal spread needs t > 0");
    if (!(mass > 0.0) || !(hbar > 0.0))
        throw error("mass and hbar must be positive");
    const double opt = hbar * t / (2.0 * mass);
    return {opt, 2.0 * opt};
}

/// sqrt(hbar t / m) = sqrt(h t / 2 pi m). Depends only on the elapsed time and
/// the mass, not on any initial momentum.
inline double min_spread(double t, double mass, double hbar) {
    if (!(t >= 0.0))
        throw error("time must be nonnegative");
    if (!(mass > 0.0) || !(hbar > 0.0))
        throw error("mass and hbar must be positive");
    return std::sqrt(hbar * t / mass);
}

/// Particle moving at beta = v/c relative to the observer.
class RelativisticSetting {
public:
    RelativisticSetting(double beta, double rest_mass, double hbar)
        : beta_(beta), rest_mass_(rest_mass), hbar_(hbar) {
        if (!(beta >= 0.0 && beta < 1.0))
            throw error("beta must lie in [0, 1)");
        if (!(rest_mass > 0.0))
            throw error("rest mass must be positive");
        if (!(hbar > 0.0))
            throw error("hbar must be positive");
    }

    /// Setting whose moving mass m = m_r / sqrt(1 - beta^2) equals `moving_mass`.
    static RelativisticSetting from_moving_mass(double beta, double moving_mass, double hbar) {
        if (!(beta >= 0.0 && beta < 1.0))
            throw error("beta must lie in [0, 1)");
        return {beta, moving_mass * std::sqrt(1.0 - beta * beta), hbar};
    }

    double beta() const noexcept { return beta_; }
    double rest_mass() const noexcept { return rest_mass_; }
    double hbar() const noexcept { return hbar_; }

    /// sqrt(1 - beta^2)
    double contraction() const { return std::sqrt(1.0 - beta_ * beta_); }
    double moving_mass() const { return rest_mass_ / contraction(); }
    /// Proper time elapsed while the observer's clock advances by t.
    double rest_time(double observer_time) const { return observer_time * contraction(); }

private:
    double beta_;
    double rest_mass_;
    double hbar_;
};

/// (1 - beta^2)^(3/4) sqrt(hbar t / m_r), the rest-mass factorization.
inline double relativistic_spread_rest_form(const RelativisticSetting& s, double observer_time) {
    if (!(observer_time >= 0.0))
        throw error("time must be nonnegative");
    return std::pow(1.0 - s.beta() * s.beta(), 0.75) *
           std::sqrt(s.hbar() * observer_time / s.rest_mass());
}

/// Observer-frame minimum spread sqrt(1 - beta^2) sqrt(hbar t / m) with m the
/// moving mass: the co-moving optimum at proper time t_r, contracted.
inline double relativistic_spread(const RelativisticSetting& s, double observer_time) {
    if (!(observer_time >= 0.0))
        throw error("time must be nonnegative");
    const double value =
        s.contraction() * std::sqrt(s.hbar() * observer_time / s.moving_mass());
    const double comoving =
        s.contraction() * min_spread(s.rest_time(observer_time), s.rest_mass(), s.hbar());
    if (std::abs(value - comoving) > 1e-12 * std::max(value, 1e-300))
        throw error("internal consistency: frame forms of the relativistic spread disagree");
    return value;
}

} // namespace sru
