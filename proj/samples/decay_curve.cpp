// Prints P(tau), kappa and gamma/gamma0 for beta = 10 around the cross-over.
#include <cstdio>

#include "bwdecay/bwdecay.hpp"

int main() {
    const auto model = bwdecay::BreitWignerModel::from_beta(10.0);
    const auto cross = bwdecay::crossover_time(model);
    std::printf("beta = 10, N = %.12f, tau_T = %.6f\n", bwdecay::normalization(model), cross.tau_t);
    std::printf("%8s %14s %12s %12s\n", "tau", "P", "kappa", "gamma/g0");
    for (double tau : bwdecay::make_grid(1.0, 4.0 * cross.tau_t, 16, bwdecay::GridKind::log)) {
        const auto h = bwdecay::effective_hamiltonian(model, tau);
        std::printf("%8.3f %14.6e %12.6f %12.6f\n", tau, bwdecay::survival_probability(model, tau),
                    h.kappa(10.0), h.rate);
    }
}
