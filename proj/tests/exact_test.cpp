#include <cmath>
#include <complex>
#include <numbers>

#include <gtest/gtest.h>

#include "bwdecay/exact.hpp"
#include "bwdecay/quad_oracle.hpp"

using bwdecay::BreitWignerModel;
using bwdecay::ComplexValue;

namespace {
double rel_err(ComplexValue got, ComplexValue want) { return std::abs(got - want) / std::abs(want); }
}  // namespace

TEST(Exact, AmplitudeIsOneAtZero) {
    for (double b : {0.5, 2.0, 10.0, 100.0}) {
        const auto a = bwdecay::amplitude(BreitWignerModel::from_beta(b), 0.0);
        EXPECT_EQ(a.value, ComplexValue(1.0, 0.0));
    }
}

TEST(Exact, SmallTauApproachesNormalization) {
    for (double b : {0.5, 2.0, 10.0}) {
        const auto m = BreitWignerModel::from_beta(b);
        EXPECT_NEAR(std::abs(bwdecay::i_beta(b, 1e-9)), bwdecay::i_beta_at_zero(b), 1e-6);
        EXPECT_NEAR(bwdecay::survival_probability(m, 1e-9), 1.0, 1e-6);
    }
    EXPECT_NEAR(bwdecay::i_beta_at_zero(2.0), 5.793227980925858, 1e-14);
}

TEST(Exact, ReferenceValuesAtBetaTen) {
    // Arbitrary-precision evaluation of the defining integrals.
    const auto m = BreitWignerModel::from_beta(10.0);
    EXPECT_NEAR(bwdecay::survival_probability(m, 1.0), 0.379141728, 1e-9);
    EXPECT_NEAR(bwdecay::survival_probability(m, 5.0), 0.006941419, 1e-9);
    const struct {
        double tau, kappa, rate;
    } rows[] = {{1.0, 1.001069, 1.046880},    {5.0, 1.001260, 0.926792},        {10.0, 1.012890, 0.598300},
                {50.0, -8.201e-6, 0.04000628}, {100.0, -1.99497e-6, 0.019999841}, {1000.0, -1.995e-8, 0.001999999841}};
    for (const auto& r : rows) {
        const auto h = bwdecay::effective_hamiltonian(m, r.tau);
        EXPECT_NEAR(h.kappa(10.0), r.kappa, std::abs(r.kappa) > 0.01 ? 1e-6 : 1e-3 * std::abs(r.kappa))
            << r.tau;
        EXPECT_NEAR(h.rate, r.rate, 1e-6 * r.rate) << r.tau;
    }
}

TEST(Exact, CanonicalEraFollowsExponential) {
    const auto m = BreitWignerModel::from_beta(2.0);
    const double n = bwdecay::normalization(m);
    const double p = bwdecay::survival_probability(m, 5.0);
    // 0.939512269706... from an arbitrary-precision quadrature: the tail
    // already interferes at the 6% level.
    EXPECT_NEAR(p / (n * n * std::exp(-5.0)), 0.939512269706152, 1e-9);
}

TEST(Exact, MatchesQuadratureOracle) {
    for (double b : {0.5, 2.0, 10.0}) {
        for (double tau : {0.05, 0.7, 3.0, 12.0, 40.0}) {
            EXPECT_LT(rel_err(bwdecay::i_beta(b, tau), bwdecay::i_by_quadrature(b, tau)), 1e-9) << b << ' ' << tau;
            EXPECT_LT(rel_err(bwdecay::j_beta(b, tau), bwdecay::j_by_quadrature(b, tau)), 1e-9) << b << ' ' << tau;
        }
    }
}

TEST(Exact, JIsDerivativeOfI) {
    for (double b : {2.0, 10.0}) {
        for (double tau : {0.3, 2.0, 9.0, 30.0}) {
            const double h = 1e-3;
            const ComplexValue d = (bwdecay::i_beta(b, tau - 2 * h) - 8.0 * bwdecay::i_beta(b, tau - h) +
                                    8.0 * bwdecay::i_beta(b, tau + h) - bwdecay::i_beta(b, tau + 2 * h)) /
                                   (12.0 * h);
            EXPECT_LT(rel_err(ComplexValue(0.0, 1.0) * d, bwdecay::j_beta(b, tau)), 1e-7) << b << ' ' << tau;
        }
    }
}

TEST(Exact, HamiltonianRoutesAgree) {
    for (double b : {2.0, 10.0, 100.0}) {
        const auto m = BreitWignerModel::from_beta(b);
        for (double tau : {0.1, 1.0, 7.0, 25.0, 60.0, 500.0}) {
            const auto h1 = bwdecay::effective_hamiltonian(m, tau).h();
            const auto h2 = bwdecay::effective_hamiltonian_alt(m, tau).h();
            EXPECT_LT(rel_err(h1, h2), 1e-10) << b << ' ' << tau;
        }
    }
}

TEST(Exact, NoOverflowAtLateTimes) {
    const auto m = BreitWignerModel::from_beta(10.0);
    for (double tau : {2000.0, 1e4, 1e5}) {
        const double p = bwdecay::survival_probability(m, tau);
        EXPECT_TRUE(std::isfinite(p));
        EXPECT_GT(p, 0.0);
        const auto h = bwdecay::effective_hamiltonian(m, tau);
        EXPECT_NEAR(h.rate * tau / 2.0, 1.0, 1e-4) << tau;
    }
}

TEST(Exact, ChiDerivativeMatchesFiniteDifference) {
    for (double tau : {1.0, 4.0, 15.0}) {
        const double h = 1e-3;
        const ComplexValue d = (bwdecay::chi(2.0, tau - 2 * h) - 8.0 * bwdecay::chi(2.0, tau - h) +
                                8.0 * bwdecay::chi(2.0, tau + h) - bwdecay::chi(2.0, tau + 2 * h)) /
                               (12.0 * h);
        EXPECT_LT(rel_err(d, bwdecay::chi_derivative(2.0, tau)), 1e-7) << tau;
    }
    EXPECT_THROW(bwdecay::chi(2.0, 3000.0), bwdecay::DomainError);
}

TEST(Exact, RejectsBadArguments) {
    const auto m = BreitWignerModel::from_beta(2.0);
    EXPECT_THROW(bwdecay::amplitude(m, -1.0), bwdecay::DomainError);
    EXPECT_THROW(bwdecay::effective_hamiltonian(m, 0.0), bwdecay::DomainError);
    EXPECT_THROW(bwdecay::i_beta(-1.0, 1.0), bwdecay::DomainError);
    EXPECT_THROW(bwdecay::j_beta(2.0, 0.0), bwdecay::DomainError);
}
