#include <cmath>
#include <complex>
#include <random>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <gtest/gtest.h>

#include "bwdecay/special_functions.hpp"

using bwdecay::ComplexValue;
using bwdecay::exp_integral_e1;
using bwdecay::exp_integral_e1_scaled;

namespace {

double rel_err(ComplexValue got, ComplexValue want) { return std::abs(got - want) / std::abs(want); }

struct Reference {
    ComplexValue z;
    ComplexValue e1;
    ComplexValue scaled;
};

// 30-digit values from an arbitrary-precision library.
const Reference references[] = {
    {{1, 1}, {0.00028162445198141833, -0.17932453503935894}, {0.41059254346912249, -0.26272868271130174}},
    {{-2, 3}, {0.3615519445996403, 2.1289557822239014}, {-0.089100956958056093, -0.2783343378537171}},
    {{0.5, -20}, {-0.026554304983849051, 0.014321885717034198}, {0.0036910945607599811, 0.049605293305528782}},
    {{-9, 0.01}, {-1037.8382757626128, 5.8617135169119014}, {-0.12808024817657578, -0.00055741608900231671}},
    {{30, 5}, {1.2915471612495814e-15, 2.6886717329166353e-15}, {0.03146734690517475, -0.0050848535640577671}},
    {{-30, 16.5}, {308485958300.96785, -86678238076.233597}, {-0.02604936984904498, -0.014849915457190667}},
    {{5, -100}, {3.7465448550340324e-5, 5.5849411810795023e-5}, {0.00059765090569161889, 0.0099631560910741232}},
};

// e^z E1(z) = int_0^inf e^{-s} / (z + s) ds whenever the ray z + s misses 0.
ComplexValue scaled_by_quadrature(ComplexValue z) {
    boost::math::quadrature::exp_sinh<double> integrator;
    const auto part = [&](bool imag) {
        return integrator.integrate(
            [&](double s) {
                const ComplexValue v = std::exp(-s) / (z + s);
                return imag ? v.imag() : v.real();
            },
            1e-14);
    };
    return {part(false), part(true)};
}

}  // namespace

TEST(ExpIntegral, RealReferenceValues) {
    EXPECT_NEAR(exp_integral_e1(1.0).real(), 0.21938393439552027, 1e-15);
    EXPECT_NEAR(exp_integral_e1(0.001).real(), 6.331539364136149, 1e-14);
    EXPECT_NEAR(exp_integral_e1_scaled(10.0).real(), 0.09156333393978808, 1e-16);
    EXPECT_NEAR(exp_integral_e1_scaled(100.0).real(), 0.009901942286733018, 1e-17);
    EXPECT_EQ(exp_integral_e1(2.5).imag(), 0.0);
}

TEST(ExpIntegral, ComplexReferenceValues) {
    for (const auto& r : references) {
        EXPECT_LT(rel_err(exp_integral_e1(r.z), r.e1), 1e-13) << r.z;
        EXPECT_LT(rel_err(exp_integral_e1_scaled(r.z), r.scaled), 1e-13) << r.z;
    }
}

TEST(ExpIntegral, ConjugateSymmetry) {
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> re(-40.0, 60.0);
    std::uniform_real_distribution<double> im(-200.0, 200.0);
    for (int i = 0; i < 1000; ++i) {
        const ComplexValue z(re(rng), im(rng));
        const ComplexValue a = exp_integral_e1_scaled(z);
        const ComplexValue b = exp_integral_e1_scaled(std::conj(z));
        EXPECT_LT(std::abs(a - std::conj(b)), 1e-15 * std::abs(a)) << z;
    }
}

TEST(ExpIntegral, DerivativeMatchesIntegrand) {
    // dE1/dz = -e^{-z}/z
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> re(-8.0, 8.0);
    std::uniform_real_distribution<double> im(0.3, 20.0);
    for (int i = 0; i < 200; ++i) {
        const ComplexValue z(re(rng), im(rng));
        const double h = 1e-3 * std::max(1.0, std::abs(z));
        const ComplexValue d = (exp_integral_e1(z - 2.0 * h) - 8.0 * exp_integral_e1(z - h) +
                                8.0 * exp_integral_e1(z + h) - exp_integral_e1(z + 2.0 * h)) /
                               (12.0 * h);
        const ComplexValue want = -std::exp(-z) / z;
        EXPECT_LT(std::abs(d - want), 1e-8 * std::abs(want) + 1e-12) << z;
    }
}

TEST(ExpIntegral, SmallArgumentLimit) {
    for (double r : {1e-6, 1e-8, 1e-10}) {
        for (double arg : {0.0, 1.0, -2.5, 3.0}) {
            const ComplexValue z = std::polar(r, arg);
            const ComplexValue want = -bwdecay::euler_gamma - std::log(z) + z - 0.25 * z * z;
            EXPECT_LT(std::abs(exp_integral_e1(z) - want), 1e-14) << z;
        }
    }
}

TEST(ExpIntegral, AgreesWithLaplaceIntegral) {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> re(-30.0, 30.0);
    std::uniform_real_distribution<double> im(0.5, 60.0);
    for (int i = 0; i < 50; ++i) {
        ComplexValue z(re(rng), im(rng));
        if (i % 2 == 1) z = std::conj(z);
        const ComplexValue want = scaled_by_quadrature(z);
        EXPECT_LT(rel_err(exp_integral_e1_scaled(z), want), 1e-11) << z;
        if (z.real() > -700.0) {
            EXPECT_LT(rel_err(exp_integral_e1(z), std::exp(-z) * want), 1e-11) << z;
        }
    }
}

TEST(ExpIntegral, ScaledStaysFiniteForHugeArguments) {
    const ComplexValue z(800.0, -3000.0);
    const ComplexValue g = exp_integral_e1_scaled(z);
    EXPECT_TRUE(std::isfinite(g.real()) && std::isfinite(g.imag()));
    const ComplexValue series = 1.0 / z - 1.0 / (z * z) + 2.0 / (z * z * z) - 6.0 / (z * z * z * z);
    EXPECT_LT(std::abs(g - series), 1e-12 * std::abs(g));
}

TEST(ExpIntegral, RejectsPointsOffTheDomain) {
    EXPECT_THROW(exp_integral_e1(0.0), bwdecay::DomainError);
    EXPECT_THROW(exp_integral_e1(-1.0), bwdecay::DomainError);
    EXPECT_THROW(exp_integral_e1_scaled(ComplexValue(-3.0, 0.0)), bwdecay::DomainError);
    EXPECT_THROW(exp_integral_e1(ComplexValue(std::nan(""), 1.0)), bwdecay::DomainError);
    EXPECT_THROW(exp_integral_e1(ComplexValue(-800.0, 1.0)), bwdecay::DomainError);
}
