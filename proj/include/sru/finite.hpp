#pragma once

#include <algorithm>
#include <complex>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>

#include <Eigen/Dense>

#include "sru/error.hpp"

namespace sru {

using complex = std::complex<double>;
using cvector = Eigen::VectorXcd;
using cmatrix = Eigen::MatrixXcd;

inline constexpr double default_hermitian_tol = 1e-10;

// ---------------------------------------------------------------------------
// FiniteState
// ---------------------------------------------------------------------------

/// Normalized amplitude vector of dimension >= 2. Only make_state builds one.
class FiniteState {
public:
    const cvector& amplitudes() const noexcept { return amplitudes_; }
    Eigen::Index dim() const noexcept { return amplitudes_.size(); }
    complex operator[](Eigen::Index k) const { return amplitudes_(k); }

private:
    explicit FiniteState(cvector amplitudes) : amplitudes_(std::move(amplitudes)) {}
    friend FiniteState make_state(cvector amplitudes);

    cvector amplitudes_;
};

/// Divides the amplitudes by their Euclidean norm.
inline FiniteState make_state(cvector amplitudes) {
    if (amplitudes.size() == 0)
        throw error("empty state");
    if (amplitudes.size() < 2)
        throw error("state dimension must be at least 2");
    if (!amplitudes.allFinite())
        throw error("state amplitudes must be finite");
    const double norm = amplitudes.norm();
    if (norm == 0.0)
        throw error("unnormalizable state");
    amplitudes /= norm;
    return FiniteState(std::move(amplitudes));
}

inline FiniteState make_state(std::span<const complex> amplitudes) {
    cvector v(static_cast<Eigen::Index>(amplitudes.size()));
    std::copy(amplitudes.begin(), amplitudes.end(), v.begin());
    return make_state(std::move(v));
}

inline FiniteState make_state(std::initializer_list<complex> amplitudes) {
    return make_state(std::span<const complex>(amplitudes.begin(), amplitudes.size()));
}

// ---------------------------------------------------------------------------
// inner products
// ---------------------------------------------------------------------------

/// sum_k conj(f_k) g_k
inline complex inner(const cvector& f, const cvector& g) {
    if (f.size() != g.size())
        throw error("inner: dimension mismatch (" + std::to_string(f.size()) + " vs " +
                    std::to_string(g.size()) + ")");
    return f.dot(g);
}

inline complex inner(const FiniteState& f, const FiniteState& g) {
    return inner(f.amplitudes(), g.amplitudes());
}

// ---------------------------------------------------------------------------
// FiniteOperator
// ---------------------------------------------------------------------------

/// Dense square matrix acting on FiniteState amplitudes. The optional units
/// string is carried along for reporting and never interpreted.
class FiniteOperator {
public:
    explicit FiniteOperator(cmatrix entries, std::string units = {})
        : entries_(std::move(entries)), units_(std::move(units)) {
        if (entries_.rows() != entries_.cols())
            throw error("operator matrix must be square");
        if (entries_.rows() == 0)
            throw error("operator matrix must be nonempty");
    }

    static FiniteOperator identity(Eigen::Index dim) {
        return FiniteOperator(cmatrix::Identity(dim, dim));
    }

    const cmatrix& entries() const noexcept { return entries_; }
    Eigen::Index dim() const noexcept { return entries_.rows(); }
    const std::string& units() const noexcept { return units_; }

    FiniteOperator adjoint() const { return FiniteOperator(entries_.adjoint(), units_); }

    cvector apply(const cvector& v) const {
        if (v.size() != dim())
            throw error("operator/vector dimension mismatch");
        return entries_ * v;
    }

    friend FiniteOperator operator+(const FiniteOperator& a, const FiniteOperator& b) {
        check_same_dim(a, b);
        return FiniteOperator(a.entries_ + b.entries_, a.units_);
    }
    friend FiniteOperator operator-(const FiniteOperator& a, const FiniteOperator& b) {
        check_same_dim(a, b);
        return FiniteOperator(a.entries_ - b.entries_, a.units_);
    }
    friend FiniteOperator operator*(const FiniteOperator& a, const FiniteOperator& b) {
        check_same_dim(a, b);
        return FiniteOperator(a.entries_ * b.entries_);
    }
    friend FiniteOperator operator*(complex s, const FiniteOperator& a) {
        return FiniteOperator(s * a.entries_, a.units_);
    }
    friend FiniteOperator operator*(double s, const FiniteOperator& a) {
        return FiniteOperator(s * a.entries_, a.units_);
    }

    static void check_same_dim(const FiniteOperator& a, const FiniteOperator& b) {
        if (a.dim() != b.dim())
            throw error("operator dimension mismatch (" + std::to_string(a.dim()) + " vs " +
                        std::to_string(b.dim()) + ")");
    }

private:
    cmatrix entries_;
    std::string units_;
};

/// max_ij |M_ij - conj(M_ji)| <= tol
inline bool is_hermitian(const FiniteOperator& m, double tol = default_hermitian_tol) {
    return (m.entries() - m.entries().adjoint()).cwiseAbs().maxCoeff() <= tol;
}

inline bool is_skew_hermitian(const FiniteOperator& m, double tol = default_hermitian_tol) {
    return (m.entries() + m.entries().adjoint()).cwiseAbs().maxCoeff() <= tol;
}

/// AB split into its Hermitian symmetrized product (AB+BA)/2 and the
/// skew-Hermitian half commutator (AB-BA)/2.
struct OperatorSplit {
    FiniteOperator symmetric_part;
    FiniteOperator commutator_part;
};

inline OperatorSplit hermitian_split(const FiniteOperator& a, const FiniteOperator& b) {
    FiniteOperator::check_same_dim(a, b);
    if (!is_hermitian(a) || !is_hermitian(b))
        throw error("hermitian_split: operands must be Hermitian");
    const cmatrix ab = a.entries() * b.entries();
    const cmatrix ba = b.entries() * a.entries();
    return {FiniteOperator(0.5 * (ab + ba)), FiniteOperator(0.5 * (ab - ba))};
}

/// AB - BA
inline FiniteOperator commutator(const FiniteOperator& a, const FiniteOperator& b) {
    return 2.0 * hermitian_split(a, b).commutator_part;
}

/// AB + BA
inline FiniteOperator anticommutator(const FiniteOperator& a, const FiniteOperator& b) {
    return 2.0 * hermitian_split(a, b).symmetric_part;
}

} // namespace sru
