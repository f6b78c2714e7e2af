#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <string_view>

#include "sru/error.hpp"
#include "sru/finite.hpp"
#include "sru/grid.hpp"
#include "sru/moments.hpp"

namespace sru {

/// Absolute inequality tolerance for exact (finite-dimensional) backends.
inline constexpr double finite_inequality_tol = 1e-9;
/// Grid tolerance, relative to Var(A) Var(B); quadrature error dominates there.
inline constexpr double grid_inequality_rel_tol = 1e-6;

inline double inequality_tolerance(const FiniteState&, double) { return finite_inequality_tol; }
inline double inequality_tolerance(const GridState&, double lhs) {
    return grid_inequality_rel_tol * std::abs(lhs);
}

enum class Classification {
    schrodinger_saturating, ///< slack within tolerance
    robertson_saturating,   ///< additionally, covariance^2 within tolerance
    strict,
};

inline std::string_view to_string(Classification c) {
    switch (c) {
    case Classification::schrodinger_saturating: return "schrodinger-saturating";
    case Classification::robertson_saturating: return "robertson-saturating";
    case Classification::strict: return "strict";
    }
    return "strict";
}

inline std::optional<Classification> parse_classification(std::string_view name) {
    for (auto c : {Classification::schrodinger_saturating, Classification::robertson_saturating,
                   Classification::strict})
        if (to_string(c) == name)
            return c;
    return std::nullopt;
}

/// The three quantities linked by the Schrodinger inequality
///   Var(A) Var(B) >= Cov(A,B)^2 + |<[A,B]>/2|^2
/// together with the slack, the determinant form and a classification.
struct UncertaintyReport {
    MomentReport moments;
    double lhs = 0.0;             ///< Var(A) Var(B)
    double cov_sq = 0.0;          ///< Cov(A,B)^2
    double comm_sq = 0.0;         ///< |<[A,B]>/2|^2
    double schrodinger_rhs = 0.0; ///< cov_sq + comm_sq
    double robertson_rhs = 0.0;   ///< comm_sq
    double slack = 0.0;           ///< lhs - schrodinger_rhs
    double det_form = 0.0;        ///< det of the covariance matrix
    double tolerance = 0.0;
    Classification classification = Classification::strict;

    bool holds() const noexcept { return slack >= -tolerance; }
    bool saturates_schrodinger() const noexcept {
        return classification != Classification::strict;
    }
    bool saturates_robertson() const noexcept {
        return classification == Classification::robertson_saturating;
    }
};

/// Assembles the report from already computed moments.
inline UncertaintyReport make_report(const MomentReport& m, double tolerance) {
    UncertaintyReport r;
    r.moments = m;
    r.lhs = m.var_a * m.var_b;
    r.cov_sq = m.covariance * m.covariance;
    r.comm_sq = std::norm(m.commutator_expectation / 2.0);
    r.schrodinger_rhs = r.cov_sq + r.comm_sq;
    r.robertson_rhs = r.comm_sq;
    r.slack = r.lhs - r.schrodinger_rhs;
    r.det_form = m.covariance_matrix().det();
    r.tolerance = tolerance;
    if (std::abs(r.slack) <= tolerance)
        r.classification = r.cov_sq <= tolerance ? Classification::robertson_saturating
                                                 : Classification::schrodinger_saturating;
    else
        r.classification = Classification::strict;
    return r;
}

template <QuantumState S>
UncertaintyReport check_schrodinger(const observable_t<S>& a, const observable_t<S>& b,
                                    const S& s) {
    const MomentReport m = moments(a, b, s);
    return make_report(m, inequality_tolerance(s, m.var_a * m.var_b));
}

/// det(sigma[A,B]) >= |<[A,B]>|^2 / 4
struct CanonicalCheck {
    double det_form = 0.0;
    double bound = 0.0;
    bool holds = false;
};

template <QuantumState S>
CanonicalCheck check_canonical(const observable_t<S>& a, const observable_t<S>& b, const S& s) {
    const UncertaintyReport r = check_schrodinger(a, b, s);
    const double identity_gap = r.det_form - (r.lhs - r.cov_sq);
    if (std::abs(identity_gap) > 1e-10 * std::max(1.0, std::abs(r.lhs)))
        throw error("internal consistency: determinant form disagrees with the product form");
    return {r.det_form, r.comm_sq, r.det_form >= r.comm_sq - r.tolerance};
}

/// Delta A Delta B >= hbar / 2 for a canonically conjugate pair, [A, B] = i hbar.
struct HeisenbergCheck {
    double product = 0.0; ///< Delta A Delta B
    double bound = 0.0;   ///< hbar / 2
    bool holds = false;
};

inline HeisenbergCheck check_heisenberg(const GridObservable& a, const GridObservable& b,
                                        const GridState& s) {
    const MomentReport m = moments(a, b, s);
    const complex expected(0.0, s.hbar());
    if (std::abs(m.commutator_expectation - expected) > 1e-6 * s.hbar())
        throw error("check_heisenberg: pair is not canonically conjugate on this state");
    const double product = std::sqrt(m.var_a * m.var_b);
    const double bound = s.hbar() / 2.0;
    return {product, bound, product >= bound * (1.0 - grid_inequality_rel_tol)};
}

// ---------------------------------------------------------------------------
// phase-space rotation and conjugate shift
// ---------------------------------------------------------------------------

namespace detail {
inline void require_hermitian(const FiniteOperator& a) {
    if (!is_hermitian(a))
        throw error("non-Hermitian observable");
}
inline void require_hermitian(const GridObservable&) {}
} // namespace detail

template <class Observable>
struct ObservablePair {
    Observable a;
    Observable b;
};

/// A' = cos(theta) A + sin(theta) scale B,  B' = -sin(theta) A / scale + cos(theta) B.
/// `scale` converts B's units into A's; the map has unit determinant, so the
/// covariance determinant and the commutator are preserved.
template <class Observable>
ObservablePair<Observable> rotate_pair(const Observable& a, const Observable& b, double theta,
                                       double scale) {
    if (!(scale > 0.0))
        throw error("rotate_pair: scale must be positive");
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    return {c * a + (s * scale) * b, (-s / scale) * a + c * b};
}

/// B + eps A, still conjugate to A.
template <class Observable>
struct ShiftedPair {
    double epsilon = 0.0;
    Observable shifted_b;
};

template <class Observable>
ShiftedPair<Observable> conjugate_shift(const Observable& a, const Observable& b,
                                        double epsilon) {
    detail::require_hermitian(a);
    detail::require_hermitian(b);
    return {epsilon, b + epsilon * a};
}

/// eps* = -Cov(A,B) / Var(A), the shift that makes Cov(A, B + eps* A) vanish on s.
template <QuantumState S>
double zeroing_epsilon(const observable_t<S>& a, const observable_t<S>& b, const S& s,
                       double min_variance = 1e-12) {
    const MomentReport m = moments(a, b, s);
    if (m.var_a <= min_variance)
        throw error("A is dispersion-free on this state; shift undefined");
    return -m.covariance / m.var_a;
}

} // namespace sru
