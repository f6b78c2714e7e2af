// Walks through the covariance story for a chirped Gaussian: the Heisenberg
// product is well above hbar^2/4, yet the state saturates the covariance-aware
// bound, and a conjugate shift B -> B + eps A removes the covariance.

#include <cstdio>

#include "sru/sru.hpp"

int main() {
    using namespace sru;
    const Grid grid(-20.0, 20.0, 1024);
    const auto q = GridObservable::position();
    const auto p = GridObservable::momentum();

    for (double chirp : {0.0, 1.0, 2.0}) {
        const auto s = gaussian(grid, 1.0, 0.0, 0.0, 1.0, chirp);
        const auto r = check_schrodinger(q, p, s);
        const double eps = zeroing_epsilon(q, p, s);
        std::printf("chirp %.1f  Var(q)Var(p) %.6f  Cov^2 %.6f  |<[q,p]>/2|^2 %.6f  slack %+.1e  %s"
                    "  eps* %.3f\n",
                    chirp, r.lhs, r.cov_sq, r.comm_sq, r.slack,
                    std::string(to_string(r.classification)).c_str(), eps);
    }

    const auto s = gaussian(grid, 1.0, 0.0, 0.0, 1.0, -1.0);
    const auto m = moments(q, p, s);
    const SpreadingProblem prob(m.var_a, m.var_b, m.covariance, 1.0, 1.0);
    std::printf("\nfocusing packet (chirp -1):\n   t   closed form   propagated\n");
    for (double t : {0.0, 0.5, 1.0, 2.0, 4.0})
        std::printf("%4.1f   %.9f   %.9f\n", t, spread_variance(prob, t),
                    variance(q, evolve_free(s, t, 1.0)));
}
