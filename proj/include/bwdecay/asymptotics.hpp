#pragma once

// Late-time expansions, x = i/tau, B = beta^2 + 1/4.
//
//   I ~ (x / B) e^{i beta tau} sum_k c_k x^k      c_k = B (-1)^{k+1} f^{(k)}(-beta)
//   J ~ (x / B) e^{i beta tau} sum_k d_k x^k      d_k = B (-1)^{k+1} g^{(k)}(-beta)
//   J/I ~ sum_k r_k x^k
//
// with f = 1/(eta^2+1/4), g = eta/(eta^2+1/4) (boundary terms of repeated
// integration by parts at eta = -beta). r_k follows from dividing the two
// series:
//
//   r0 = -beta, r1 = -1, r2 = 2 beta / B, r3 = -(8 beta^2 - 1) / B^2,
//   r4 = beta (44 beta^2 - 15) / B^3.
//
// r3 and r4 are regenerated by that division rather than copied from an
// older closed form, which gets both wrong; tests/asymptotics_test.cpp
// rederives every coefficient from the derivatives of f and g.

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "errors.hpp"
#include "model.hpp"
#include "special_functions.hpp"

namespace bwdecay {

enum class SeriesKind { i_series, j_series, ratio, amplitude, energy, rate };

inline constexpr int max_series_order = 5;

/// Truncated series sum_k coefficients[k] * x^k.
struct AsymptoticSeries {
    SeriesKind kind;
    std::vector<ComplexValue> coefficients;
    int order;
};

/// Value of a truncated series plus a flag raised when the last retained term
/// is larger than the one before it (past the optimal truncation point).
struct SeriesValue {
    ComplexValue value;
    bool beyond_optimal_truncation;
};

namespace asymptotics_detail {

inline void check_order(int order, int max_order, const char* who) {
    if (order < 1 || order > max_order) {
        throw DomainError(std::string(who) + ": order must be in 1.." + std::to_string(max_order));
    }
}

inline void check_tau(double tau, const char* who) {
    if (!(tau > 0.0) || !std::isfinite(tau)) throw DomainError(std::string(who) + ": tau must be positive");
}

inline void check_beta(double beta_value, const char* who) {
    if (!(beta_value > 0.0) || !std::isfinite(beta_value)) {
        throw DomainError(std::string(who) + ": beta must be positive");
    }
}

inline double b_of(double beta_value) { return beta_value * beta_value + 0.25; }

}  // namespace asymptotics_detail

inline AsymptoticSeries i_series_coefficients(double beta_value) {
    asymptotics_detail::check_beta(beta_value, "i_series_coefficients");
    const double b = beta_value;
    const double bb = asymptotics_detail::b_of(b);
    const double b2 = b * b;
    return {SeriesKind::i_series,
            {-1.0, 2.0 * b / bb, 2.0 / bb * (1.0 - 4.0 * b2 / bb),
             24.0 * b / (bb * bb) * (2.0 * b2 / bb - 1.0),
             24.0 / (bb * bb) * (-16.0 * b2 * b2 / (bb * bb) + 12.0 * b2 / bb - 1.0)},
            max_series_order};
}

inline AsymptoticSeries j_series_coefficients(double beta_value) {
    asymptotics_detail::check_beta(beta_value, "j_series_coefficients");
    const double b = beta_value;
    const double bb = asymptotics_detail::b_of(b);
    const double b2 = b * b;
    return {SeriesKind::j_series,
            {b, 1.0 - 2.0 * b2 / bb, 2.0 * b / bb * (4.0 * b2 / bb - 3.0),
             6.0 / bb * (-8.0 * b2 * b2 / (bb * bb) + 8.0 * b2 / bb - 1.0),
             24.0 * b / (bb * bb) * (16.0 * b2 * b2 / (bb * bb) - 20.0 * b2 / bb + 5.0)},
            max_series_order};
}

inline AsymptoticSeries ratio_series_coefficients(double beta_value) {
    asymptotics_detail::check_beta(beta_value, "ratio_series_coefficients");
    const double b = beta_value;
    const double bb = asymptotics_detail::b_of(b);
    return {SeriesKind::ratio,
            {-b, -1.0, 2.0 * b / bb, -(8.0 * b * b - 1.0) / (bb * bb),
             b * (44.0 * b * b - 15.0) / (bb * bb * bb)},
            max_series_order};
}

/// Horner evaluation of the first `order` terms at x.
inline SeriesValue evaluate(const AsymptoticSeries& series, ComplexValue x, int order) {
    asymptotics_detail::check_order(order, series.order, "evaluate");
    ComplexValue sum = 0.0;
    for (int k = order - 1; k >= 0; --k) sum = sum * x + series.coefficients[static_cast<std::size_t>(k)];

    bool flagged = false;
    if (order >= 2) {
        const double last = std::abs(series.coefficients[static_cast<std::size_t>(order - 1)] *
                                     std::pow(x, order - 1));
        const double previous = std::abs(series.coefficients[static_cast<std::size_t>(order - 2)] *
                                         std::pow(x, order - 2));
        flagged = last > previous;
    }
    return {sum, flagged};
}

inline SeriesValue i_series(double beta_value, double tau, int order) {
    asymptotics_detail::check_tau(tau, "i_series");
    asymptotics_detail::check_order(order, max_series_order, "i_series");
    const ComplexValue x(0.0, 1.0 / tau);
    auto v = evaluate(i_series_coefficients(beta_value), x, order);
    v.value *= x * std::polar(1.0, beta_value * tau) / asymptotics_detail::b_of(beta_value);
    return v;
}

inline SeriesValue j_series(double beta_value, double tau, int order) {
    asymptotics_detail::check_tau(tau, "j_series");
    asymptotics_detail::check_order(order, max_series_order, "j_series");
    const ComplexValue x(0.0, 1.0 / tau);
    auto v = evaluate(j_series_coefficients(beta_value), x, order);
    v.value *= x * std::polar(1.0, beta_value * tau) / asymptotics_detail::b_of(beta_value);
    return v;
}

/// J/I ~ -beta - i/tau - 2beta/(B tau^2) - i r3/tau^3 + r4/tau^4.
inline SeriesValue ratio_series(double beta_value, double tau, int order) {
    asymptotics_detail::check_tau(tau, "ratio_series");
    asymptotics_detail::check_order(order, max_series_order, "ratio_series");
    return evaluate(ratio_series_coefficients(beta_value), ComplexValue(0.0, 1.0 / tau), order);
}

/// Late-time amplitude, same phase convention as the exact amplitude:
///   (N / 2pi B) sum_{k<order} c_k x^{k+1}.
inline SeriesValue amplitude_late(const BreitWignerModel& model, double tau, int order) {
    asymptotics_detail::check_tau(tau, "amplitude_late");
    asymptotics_detail::check_order(order, 4, "amplitude_late");
    const double b = beta(model);
    const ComplexValue x(0.0, 1.0 / tau);
    auto v = evaluate(i_series_coefficients(b), x, order);
    v.value *= x * normalization(model) / (2.0 * std::numbers::pi * asymptotics_detail::b_of(b));
    return v;
}

/// E(t) for t past the cross-over, physical units:
///   E_min + gamma0 [ -2 beta / (B tau^2) + r4 / tau^4 ].
inline double energy_late(const BreitWignerModel& model, double tau) {
    asymptotics_detail::check_tau(tau, "energy_late");
    const auto r = ratio_series_coefficients(beta(model)).coefficients;
    const double inv2 = 1.0 / (tau * tau);
    const double relative = -r[2].real() * inv2 + r[4].real() * inv2 * inv2;
    return model.emin() + model.gamma0() * relative;
}

/// gamma(t) for t past the cross-over, physical units:
///   gamma0 [ 2 / tau + 2 r3 / tau^3 ].
inline double decay_rate_late(const BreitWignerModel& model, double tau) {
    asymptotics_detail::check_tau(tau, "decay_rate_late");
    const auto r = ratio_series_coefficients(beta(model)).coefficients;
    const double inv = 1.0 / tau;
    return model.gamma0() * (2.0 * inv + 2.0 * r[3].real() * inv * inv * inv);
}

/// Lambda(t) = Lambda_bare + D2/t^2 + D4/t^4, Dk = (8 pi G / c^2) dk.
struct LambdaCoefficients {
    double lambda_bare;
    double d2;
    double d4;
    double big_d2;
    double big_d4;
};

inline LambdaCoefficients lambda_coefficients(double rho_bare, double d2, double d4, double g_newton,
                                              double c_light) {
    if (!(g_newton > 0.0) || !(c_light > 0.0)) {
        throw DomainError("lambda_coefficients: G and c must be positive");
    }
    const double k = 8.0 * std::numbers::pi * g_newton / (c_light * c_light);
    return {k * rho_bare, d2, d4, k * d2, k * d4};
}

inline double lambda_of_t(double rho_bare, double d2, double d4, double t, double g_newton, double c_light) {
    if (!(t > 0.0)) throw DomainError("lambda_of_t: t must be positive");
    const auto c = lambda_coefficients(rho_bare, d2, d4, g_newton, c_light);
    const double inv2 = 1.0 / (t * t);
    return c.lambda_bare + (c.big_d2 + c.big_d4 * inv2) * inv2;
}

}  // namespace bwdecay
