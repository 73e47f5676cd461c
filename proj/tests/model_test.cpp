#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <gtest/gtest.h>

#include "bwdecay/model.hpp"

using bwdecay::BreitWignerModel;

TEST(Model, RejectsInvalidParameters) {
    EXPECT_THROW(BreitWignerModel(1.0, 0.0, 0.0), bwdecay::DomainError);
    EXPECT_THROW(BreitWignerModel(1.0, -1.0, 0.0), bwdecay::DomainError);
    EXPECT_THROW(BreitWignerModel(1.0, 1.0, 0.0, 0.0), bwdecay::DomainError);
    EXPECT_THROW(BreitWignerModel(0.0, 1.0, 0.0), bwdecay::DomainError);
    EXPECT_THROW(BreitWignerModel(-1.0, 1.0, 0.0), bwdecay::DomainError);
    EXPECT_THROW(BreitWignerModel(NAN, 1.0, 0.0), bwdecay::DomainError);
    EXPECT_THROW(BreitWignerModel(1e308, 1e-308, -1e308), bwdecay::DomainError);
}

TEST(Model, DimensionlessVariables) {
    const BreitWignerModel m(7.0, 0.5, 2.0, 3.0);
    EXPECT_DOUBLE_EQ(bwdecay::beta(m), 10.0);
    EXPECT_DOUBLE_EQ(m.lifetime(), 6.0);
    EXPECT_DOUBLE_EQ(bwdecay::tau_of_t(m, 12.0), 2.0);
    EXPECT_DOUBLE_EQ(bwdecay::t_of_tau(m, 2.0), 12.0);
    EXPECT_THROW(bwdecay::tau_of_t(m, -1.0), bwdecay::DomainError);
    EXPECT_THROW(bwdecay::t_of_tau(m, -1.0), bwdecay::DomainError);
}

TEST(Model, NormalizationClosedForm) {
    EXPECT_NEAR(bwdecay::normalization(BreitWignerModel::from_beta(2.0)), 1.0845741489661563, 1e-15);
    EXPECT_DOUBLE_EQ(bwdecay::normalization_for_beta(0.0), 2.0);
    EXPECT_NEAR(bwdecay::normalization_for_beta(1e8), 1.0, 1e-8);
    EXPECT_THROW(bwdecay::normalization_for_beta(-1.0), bwdecay::DomainError);
    double previous = 2.0;
    for (double b : {0.1, 0.5, 1.0, 2.0, 10.0, 100.0}) {
        const double n = bwdecay::normalization_for_beta(b);
        EXPECT_LT(n, previous);
        EXPECT_GT(n, 1.0);
        previous = n;
    }
}

TEST(Model, DensityIntegratesToOne) {
    for (double b : {0.5, 2.0, 10.0}) {
        const BreitWignerModel m(1.0 + b * 0.3, 0.3, 1.0);
        const auto w = [&](double e) { return bwdecay::density(m, e); };
        boost::math::quadrature::exp_sinh<double> tail;
        const double body = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(w, m.emin(), m.e0(), 15, 1e-13);
        const double rest = tail.integrate(w, m.e0(), std::numeric_limits<double>::infinity(), 1e-13);
        EXPECT_NEAR(body + rest, 1.0, 1e-10) << b;
    }
}

TEST(Model, DensityShape) {
    const BreitWignerModel m(3.0, 2.0, 1.0);
    EXPECT_EQ(bwdecay::density(m, 0.999), 0.0);
    EXPECT_GT(bwdecay::density(m, 1.0), 0.0);
    EXPECT_DOUBLE_EQ(bwdecay::density(m, 3.0), bwdecay::peak_density(m));
    EXPECT_NEAR(bwdecay::density(m, 4.0), 0.5 * bwdecay::peak_density(m), 1e-15);
}
