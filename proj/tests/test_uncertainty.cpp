#include <catch2/catch_amalgamated.hpp>

#include <numbers>

#include "sru/states.hpp"
#include "sru/sweep.hpp"
#include "sru/uncertainty.hpp"

using namespace sru;

namespace {
const complex I(0.0, 1.0);
const Grid default_grid(-20.0, 20.0, 1024);
const auto q = GridObservable::position();
const auto p = GridObservable::momentum();

GridState plain() { return gaussian(default_grid, 1.0, 0.0, 0.0, 1.0, 0.0); }
GridState chirped(double c = 1.0) { return gaussian(default_grid, 1.0, 0.0, 0.0, 1.0, c); }
} // namespace

TEST_CASE("check_schrodinger on the plain Gaussian", "[uncertainty]") {
    const auto r = check_schrodinger(q, p, plain());
    CHECK(std::abs(r.lhs - 0.25) <= 1e-6);
    CHECK(r.cov_sq <= 1e-12);
    CHECK(std::abs(r.comm_sq - 0.25) <= 1e-6);
    CHECK(std::abs(r.slack) <= 1e-6);
    CHECK(r.classification == Classification::robertson_saturating);
    CHECK(r.saturates_schrodinger());
    CHECK(r.holds());
}

TEST_CASE("check_schrodinger on the chirped Gaussian", "[uncertainty]") {
    const auto r = check_schrodinger(q, p, chirped());
    CHECK(std::abs(r.lhs - 0.5) <= 1e-6);
    CHECK(std::abs(r.cov_sq - 0.25) <= 1e-6);
    CHECK(std::abs(r.comm_sq - 0.25) <= 1e-6);
    CHECK(std::abs(r.slack) <= 1e-6);
    CHECK(r.classification == Classification::schrodinger_saturating);
    // Robertson alone leaves a gap of cov^2
    CHECK(r.lhs - r.robertson_rhs > 0.2);
    CHECK(std::abs(r.det_form - (r.lhs - r.cov_sq)) <= 1e-10);
}

TEST_CASE("check_schrodinger on spin", "[uncertainty]") {
    const auto spin = spin_triple();
    const auto r = check_schrodinger(spin.x, spin.y, make_state({1.0, 0.0}));
    CHECK(r.lhs == 1.0);
    CHECK(r.cov_sq == 0.0);
    CHECK(r.comm_sq == 1.0);
    CHECK(r.slack == 0.0);
    CHECK(r.tolerance == finite_inequality_tol);
    CHECK(r.classification == Classification::robertson_saturating);

    // x-eigenstate: Var(X) = 0, nothing else to say but the bound holds trivially
    const auto plus = make_state({1.0, 1.0});
    const auto rp = check_schrodinger(spin.x, spin.y, plus);
    CHECK(rp.lhs <= 1e-15);
    CHECK(rp.holds());
}

TEST_CASE("classification strings round-trip", "[uncertainty]") {
    for (auto c : {Classification::schrodinger_saturating, Classification::robertson_saturating,
                   Classification::strict})
        CHECK(parse_classification(to_string(c)) == c);
    CHECK_FALSE(parse_classification("heisenberg").has_value());
}

TEST_CASE("check_canonical", "[uncertainty]") {
    const auto cc = check_canonical(q, p, chirped());
    CHECK(std::abs(cc.det_form - 0.25) <= 1e-6);
    CHECK(std::abs(cc.bound - 0.25) <= 1e-6);
    CHECK(cc.holds);

    const auto pc = check_canonical(q, p, plain());
    CHECK(std::abs(pc.det_form - 0.25) <= 1e-6);

    std::uint64_t failures = 0;
    for (std::uint64_t seed = 0; seed < 10000; ++seed) {
        SplitMix64 rng(seed);
        const auto s = random_state(8, rng);
        const auto a = random_hermitian(8, rng);
        const auto b = random_hermitian(8, rng);
        if (!check_canonical(a, b, s).holds)
            ++failures;
    }
    CHECK(failures == 0);
}

TEST_CASE("check_heisenberg", "[uncertainty]") {
    const auto h = check_heisenberg(q, p, plain());
    CHECK(std::abs(h.product - 0.5) <= 1e-6);
    CHECK(h.bound == 0.5);
    CHECK(h.holds);
    CHECK(check_heisenberg(q, p, chirped()).product > 0.7);
    CHECK_THROWS(check_heisenberg(q, q, plain()));
}

TEST_CASE("rotate_pair", "[uncertainty]") {
    const auto s = chirped();
    const double det0 = covariance_matrix(q, p, s).det();
    const complex comm0 = commutator_expectation(q, p, s);

    const auto same = rotate_pair(q, p, 0.0, 1.0);
    CHECK(std::abs(covariance(same.a, same.b, s) - covariance(q, p, s)) <= 1e-12);

    const auto quarter = rotate_pair(q, p, std::numbers::pi / 2, 1.0);
    CHECK(std::abs(expectation(quarter.a, s) - expectation(p, s)) <= 1e-12);
    CHECK(std::abs(variance(quarter.b, s) - variance(q, s)) <= 1e-12);

    for (double theta : {std::numbers::pi / 6, std::numbers::pi / 4, std::numbers::pi / 2, 1.0}) {
        for (double scale : {1.0, 2.5}) {
            const auto rot = rotate_pair(q, p, theta, scale);
            const auto m = moments(rot.a, rot.b, s);
            CHECK(std::abs(m.covariance_matrix().det() - det0) <= 1e-9);
            CHECK(std::abs(m.commutator_expectation - comm0) <= 1e-9);
        }
    }
    const auto rot = rotate_pair(q, p, std::numbers::pi / 4, 1.0);
    CHECK(std::abs(variance(rot.a, s) * variance(rot.b, s) - 0.5) > 1e-3);
    CHECK_THROWS(rotate_pair(q, p, 0.3, 0.0));
}

TEST_CASE("rotation preserves saturation", "[uncertainty][property]") {
    for (double c : {-2.0, 0.0, 1.0}) {
        const auto s = chirped(c);
        const auto before = check_schrodinger(q, p, s);
        REQUIRE(std::abs(before.slack) <= before.tolerance);
        for (double theta = 0.0; theta < 3.2; theta += 0.4) {
            const auto rot = rotate_pair(q, p, theta, 1.0);
            const auto after = check_schrodinger(rot.a, rot.b, s);
            CHECK(std::abs(after.slack) <= before.tolerance + 1e-9);
        }
    }
    SplitMix64 rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        const auto s = random_state(4, rng);
        const auto a = random_hermitian(4, rng);
        const auto b = random_hermitian(4, rng);
        const double theta = 6.0 * rng.uniform();
        const auto rot = rotate_pair(a, b, theta, 0.5 + rng.uniform());
        const auto r0 = check_schrodinger(a, b, s);
        const auto r1 = check_schrodinger(rot.a, rot.b, s);
        CHECK(std::abs(r0.det_form - r1.det_form) <= 1e-9);
        CHECK(std::abs(r0.comm_sq - r1.comm_sq) <= 1e-9);
    }
}

TEST_CASE("conjugate_shift", "[uncertainty]") {
    const auto s = chirped();
    const auto none = conjugate_shift(q, p, 0.0);
    CHECK(covariance(q, none.shifted_b, s) == covariance(q, p, s));

    const auto shifted = conjugate_shift(q, p, -0.5);
    CHECK(shifted.epsilon == -0.5);
    CHECK(std::abs(covariance(q, shifted.shifted_b, s)) <= 1e-6);
    CHECK(std::abs(commutator_expectation(q, shifted.shifted_b, s) -
                   commutator_expectation(q, p, s)) <= 1e-10);

    SplitMix64 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        const auto st = random_state(6, rng);
        const auto a = random_hermitian(6, rng);
        const auto b = random_hermitian(6, rng);
        const double eps = 4.0 * rng.uniform() - 2.0;
        const auto sh = conjugate_shift(a, b, eps);
        CHECK(std::abs(covariance(a, sh.shifted_b, st) -
                       (covariance(a, b, st) + eps * variance(a, st))) <= 1e-9);
        CHECK(std::abs(commutator_expectation(a, sh.shifted_b, st) -
                       commutator_expectation(a, b, st)) <= 1e-10);
        CHECK((commutator(a, sh.shifted_b) - commutator(a, b)).entries().cwiseAbs().maxCoeff() <=
              1e-10);
    }

    cmatrix raising(2, 2);
    raising << 0.0, 1.0, 0.0, 0.0;
    CHECK_THROWS(conjugate_shift(FiniteOperator(raising), spin_triple().x, 1.0));
}

TEST_CASE("zeroing_epsilon", "[uncertainty]") {
    const auto s = chirped();
    const double eps = zeroing_epsilon(q, p, s);
    CHECK(std::abs(eps + 0.5) <= 1e-6);
    CHECK(std::abs(covariance(q, p + eps * q, s)) <= 1e-9);
    CHECK(std::abs(zeroing_epsilon(q, p, plain())) <= 1e-9);

    const auto spin = spin_triple();
    CHECK(zeroing_epsilon(spin.x, spin.y, make_state({1.0, 0.0})) == 0.0);
    CHECK_THROWS_WITH(zeroing_epsilon(spin.z, spin.x, make_state({1.0, 0.0})),
                      Catch::Matchers::ContainsSubstring("dispersion-free"));

    SplitMix64 rng(17);
    for (int trial = 0; trial < 300; ++trial) {
        const Eigen::Index dim = 2 + trial % 9;
        const auto st = random_state(dim, rng);
        const auto a = random_hermitian(dim, rng);
        const auto b = random_hermitian(dim, rng);
        if (variance(a, st) < 1e-6)
            continue;
        const double e = zeroing_epsilon(a, b, st);
        CHECK(std::abs(covariance(a, b + e * a, st)) <= 1e-9);
    }

    // one shift cannot zero the covariance of every state
    const auto other = chirped(2.0);
    CHECK(std::abs(covariance(q, p + eps * q, other)) > 1e-3);
}

TEST_CASE("universal validity and strength ordering", "[uncertainty][property]") {
    const std::vector<Eigen::Index> dims{2, 4, 8, 16};
    for (std::uint64_t i = 0; i < 10000; ++i) {
        const auto inst = random_instance(12345, i, dims);
        const auto r = check_schrodinger(inst.a, inst.b, inst.state);
        REQUIRE(r.slack >= -1e-9);
        REQUIRE(r.schrodinger_rhs >= r.robertson_rhs);
        REQUIRE(r.robertson_rhs >= 0.0);
        if (std::abs(r.moments.covariance) > 1e-9)
            REQUIRE(r.schrodinger_rhs > r.robertson_rhs);
    }
}
