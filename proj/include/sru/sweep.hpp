#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <span>

#include "sru/error.hpp"
#include "sru/states.hpp"
#include "sru/uncertainty.hpp"

namespace sru {

/// Covariances above this magnitude count as "nonzero" when tallying
/// instances where the covariance term strictly strengthens the bound.
inline constexpr double sweep_covariance_floor = 1e-6;

struct RandomInstance {
    FiniteState state;
    FiniteOperator a;
    FiniteOperator b;
};

/// Trial `index` of a sweep: generator seeded with seed + index, dimension
/// dims[index % dims.size()], then state, A and B drawn in that order.
inline RandomInstance random_instance(std::uint64_t seed, std::uint64_t index,
                                      std::span<const Eigen::Index> dims) {
    if (dims.empty())
        throw error("sweep: no dimensions given");
    SplitMix64 rng(seed + index);
    const Eigen::Index dim = dims[index % dims.size()];
    FiniteState state = random_state(dim, rng);
    FiniteOperator a = random_hermitian(dim, rng);
    FiniteOperator b = random_hermitian(dim, rng);
    return {std::move(state), std::move(a), std::move(b)};
}

struct SweepSummary {
    std::uint64_t trials = 0;
    double min_slack = std::numeric_limits<double>::infinity();
    std::uint64_t saturating = 0;          ///< |slack| <= tol
    std::uint64_t nonzero_covariance = 0;  ///< |Cov| > sweep_covariance_floor
    std::uint64_t strictly_stronger = 0;   ///< of those, schrodinger_rhs > robertson_rhs
    std::uint64_t violations = 0;          ///< slack < -tol

    bool passed() const noexcept { return violations == 0; }
};

inline SweepSummary run_sweep(std::uint64_t seed, std::uint64_t trials,
                              std::span<const Eigen::Index> dims) {
    if (trials == 0)
        throw error("sweep: trials must be at least 1");
    SweepSummary out;
    out.trials = trials;
    for (std::uint64_t i = 0; i < trials; ++i) {
        const auto inst = random_instance(seed, i, dims);
        const auto r = check_schrodinger(inst.a, inst.b, inst.state);
        out.min_slack = std::min(out.min_slack, r.slack);
        if (r.saturates_schrodinger())
            ++out.saturating;
        if (!r.holds())
            ++out.violations;
        if (std::abs(r.moments.covariance) > sweep_covariance_floor) {
            ++out.nonzero_covariance;
            if (r.schrodinger_rhs > r.robertson_rhs)
                ++out.strictly_stronger;
        }
    }
    return out;
}

} // namespace sru
