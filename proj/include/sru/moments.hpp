#pragma once

#include <cmath>
#include <complex>
#include <string>

#include <Eigen/Dense>

#include "sru/error.hpp"
#include "sru/finite.hpp"
#include "sru/grid.hpp"

namespace sru {

// ---------------------------------------------------------------------------
// backend adapters
// ---------------------------------------------------------------------------

/// Maps a state type to its observable type and supplies operator
/// application and the inner product. Specialized for both backends.
template <class State>
struct backend;

template <>
struct backend<FiniteState> {
    using observable = FiniteOperator;

    static const cvector& vector(const FiniteState& s) { return s.amplitudes(); }

    static void check(const FiniteOperator& a, const FiniteState& s) {
        if (a.dim() != s.dim())
            throw error("backend mismatch: operator dimension " + std::to_string(a.dim()) +
                        " vs state dimension " + std::to_string(s.dim()));
        if (!is_hermitian(a))
            throw error("non-Hermitian observable");
    }

    static cvector apply(const FiniteOperator& a, const FiniteState&, const cvector& v) {
        return a.apply(v);
    }

    static complex inner(const FiniteState&, const cvector& f, const cvector& g) {
        return sru::inner(f, g);
    }
};

template <>
struct backend<GridState> {
    using observable = GridObservable;

    static const cvector& vector(const GridState& s) { return s.values(); }

    static void check(const GridObservable& a, const GridState& s) {
        if (a.involves_momentum() && !s.confined())
            throw error("boundary leakage: momentum needs a state confined to the grid");
    }

    static cvector apply(const GridObservable& a, const GridState& s, const cvector& v) {
        return a.apply(s, v);
    }

    static complex inner(const GridState& s, const cvector& f, const cvector& g) {
        return sru::inner(s.grid(), f, g);
    }
};

template <class S>
concept QuantumState = requires { typename backend<S>::observable; };

template <QuantumState S>
using observable_t = typename backend<S>::observable;

/// Largest imaginary part of an expectation value (relative to the
/// Cauchy-Schwarz bound ||A psi||) accepted as roundoff.
inline constexpr double imaginary_residue_gate = 1e-9;

/// Negative variances down to this value are roundoff and clamp to zero.
inline constexpr double variance_clamp = 1e-12;

namespace detail {

inline double clamp_variance(double v) {
    if (v >= 0.0)
        return v;
    if (v >= -variance_clamp)
        return 0.0;
    throw error("internal consistency: negative variance " + std::to_string(v));
}

/// A psi together with its mean and the centered vector (A - <A>) psi.
struct Deviation {
    cvector applied;
    double mean;
    cvector centered;
};

template <QuantumState S>
Deviation deviation(const observable_t<S>& a, const S& s) {
    using B = backend<S>;
    B::check(a, s);
    const cvector& psi = B::vector(s);
    cvector applied = B::apply(a, s, psi);
    const complex z = B::inner(s, psi, applied);
    const double bound = std::sqrt(B::inner(s, applied, applied).real());
    if (std::abs(z.imag()) > imaginary_residue_gate * std::max(bound, 1e-300))
        throw error("non-Hermitian observable: imaginary expectation residue " +
                    std::to_string(z.imag()));
    cvector centered = applied - z.real() * psi;
    return {std::move(applied), z.real(), std::move(centered)};
}

} // namespace detail

// ---------------------------------------------------------------------------
// first and second moments
// ---------------------------------------------------------------------------

/// <psi, A psi>
template <QuantumState S>
double expectation(const observable_t<S>& a, const S& s) {
    return detail::deviation(a, s).mean;
}

/// ||(A - <A>) psi||^2, nonnegative by construction.
template <QuantumState S>
double variance(const observable_t<S>& a, const S& s) {
    const auto d = detail::deviation(a, s);
    return detail::clamp_variance(backend<S>::inner(s, d.centered, d.centered).real());
}

template <QuantumState S>
double uncertainty(const observable_t<S>& a, const S& s) {
    return std::sqrt(variance(a, s));
}

/// Symmetrized covariance <(AB+BA)/2> - <A><B>, evaluated as
/// Re <(A - <A>) psi, (B - <B>) psi>.
template <QuantumState S>
double covariance(const observable_t<S>& a, const observable_t<S>& b, const S& s) {
    const auto da = detail::deviation(a, s);
    const auto db = detail::deviation(b, s);
    return backend<S>::inner(s, da.centered, db.centered).real();
}

/// [[Var A, Cov], [Cov, Var B]]
struct CovarianceMatrix {
    Eigen::Matrix2d entries;

    double var_a() const { return entries(0, 0); }
    double var_b() const { return entries(1, 1); }
    double cov() const { return entries(0, 1); }
    double det() const { return var_a() * var_b() - cov() * cov(); }
};

/// Everything the second-moment analysis of a pair needs, from one pass.
struct MomentReport {
    double mean_a = 0.0;
    double mean_b = 0.0;
    double var_a = 0.0;
    double var_b = 0.0;
    double covariance = 0.0;
    complex commutator_expectation;

    CovarianceMatrix covariance_matrix() const {
        CovarianceMatrix m;
        m.entries << var_a, covariance, covariance, var_b;
        return m;
    }
};

template <QuantumState S>
MomentReport moments(const observable_t<S>& a, const observable_t<S>& b, const S& s) {
    using B = backend<S>;
    const auto da = detail::deviation(a, s);
    const auto db = detail::deviation(b, s);
    const cvector& psi = B::vector(s);

    MomentReport r;
    r.mean_a = da.mean;
    r.mean_b = db.mean;
    r.var_a = detail::clamp_variance(B::inner(s, da.centered, da.centered).real());
    r.var_b = detail::clamp_variance(B::inner(s, db.centered, db.centered).real());
    r.covariance = B::inner(s, da.centered, db.centered).real();
    r.commutator_expectation = B::inner(s, psi, B::apply(a, s, db.applied)) -
                               B::inner(s, psi, B::apply(b, s, da.applied));
    const double bound = 2.0 * std::sqrt(B::inner(s, da.applied, da.applied).real() *
                                         B::inner(s, db.applied, db.applied).real());
    if (std::abs(r.commutator_expectation.real()) >
        imaginary_residue_gate * std::max(bound, 1e-300))
        throw error("non-Hermitian observable: commutator expectation has real part " +
                    std::to_string(r.commutator_expectation.real()));
    return r;
}

/// <psi, (AB - BA) psi>, applying both orderings explicitly.
template <QuantumState S>
complex commutator_expectation(const observable_t<S>& a, const observable_t<S>& b,
                               const S& s) {
    return moments(a, b, s).commutator_expectation;
}

template <QuantumState S>
CovarianceMatrix covariance_matrix(const observable_t<S>& a, const observable_t<S>& b,
                                   const S& s) {
    return moments(a, b, s).covariance_matrix();
}

} // namespace sru
