#pragma once

// Direct quadrature of the defining Fourier integrals
//
//   I(beta, tau) = int_{-beta}^inf e^{-i eta tau} / (eta^2 + 1/4) d eta
//   J(beta, tau) = int_{-beta}^inf eta e^{-i eta tau} / (eta^2 + 1/4) d eta
//
// Shares no code with the E1 route: finite range [-beta, X] by globally
// adaptive Gauss-Kronrod (15-point, embedded 7-point Gauss error estimate),
// tail (X, inf) by repeated integration by parts using closed-form
// derivatives of the rational weights.
//
// Panels: geometric breakpoints around the peak at eta = 0, then every panel
// is cut to at most half an oscillation (width pi/|omega|).

#include <algorithm>
#include <array>
#include <limits>
#include <cmath>
#include <complex>
#include <numbers>
#include <queue>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "errors.hpp"
#include "model.hpp"
#include "special_functions.hpp"

namespace bwdecay {

struct QuadratureSettings {
    double rel_tol = 1e-10;
    double abs_tol = 1e-14;
    /// Truncation point of the semi-infinite range. Raised to
    /// tail_phase_floor / |omega| when smaller, so the integration-by-parts
    /// tail stays in its convergent regime.
    double eta_max = 1e4;
    /// Adaptive bisections allowed beyond the initial panel grid.
    int max_subdivisions = 10'000;

    void validate() const {
        if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) {
            throw DomainError("QuadratureSettings: tolerances must be positive");
        }
        if (!(eta_max > 1.0)) throw DomainError("QuadratureSettings: eta_max must exceed 1");
        if (max_subdivisions <= 0) throw DomainError("QuadratureSettings: max_subdivisions must be positive");
    }
};

enum class Weight {
    lorentzian,  ///< 1 / (eta^2 + 1/4)
    first_moment ///< eta / (eta^2 + 1/4)
};

struct QuadratureResult {
    ComplexValue value;
    double error_estimate;
    int subdivisions;
    double truncation_point;
};

namespace quad_detail {

inline constexpr double tail_phase_floor = 400.0;
inline constexpr int tail_max_terms = 40;

inline double weight_value(Weight w, double eta) {
    const double d = eta * eta + 0.25;
    return w == Weight::lorentzian ? 1.0 / d : eta / d;
}

// k-th derivative at x from the partial fractions
//   1/(eta^2+1/4)   = -i [1/(eta - i/2) - 1/(eta + i/2)]
//   eta/(eta^2+1/4) = 1/2 [1/(eta - i/2) + 1/(eta + i/2)]
inline double weight_derivative(Weight w, int k, double x) {
    const ComplexValue half_i(0.0, 0.5);
    double factorial = 1.0;
    for (int j = 2; j <= k; ++j) factorial *= j;
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    const ComplexValue a = std::pow(x - half_i, -(k + 1));
    const ComplexValue b = std::pow(x + half_i, -(k + 1));
    if (w == Weight::lorentzian) {
        return (ComplexValue(0.0, -1.0) * sign * factorial * (a - b)).real();
    }
    return (0.5 * sign * factorial * (a + b)).real();
}

struct Tail {
    ComplexValue value;
    double error;
};

// int_X^inf w(eta) e^{i omega eta} d eta
//   = -e^{i omega X} sum_k (-1)^k w^{(k)}(X) / (i omega)^{k+1},
// summed until the terms stop shrinking.
inline Tail oscillatory_tail(Weight w, double x, double omega) {
    const ComplexValue i_omega(0.0, omega);
    ComplexValue inv_power = 1.0 / i_omega;
    ComplexValue sum = 0.0;
    double last = std::numeric_limits<double>::infinity();
    for (int k = 0; k < tail_max_terms; ++k) {
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        const ComplexValue term = sign * weight_derivative(w, k, x) * inv_power;
        const double mag = std::abs(term);
        if (mag >= last) break;
        sum += term;
        last = mag;
        if (mag <= 1e-18 * std::abs(sum)) break;
        inv_power /= i_omega;
    }
    return {-std::polar(1.0, omega * x) * sum, last};
}

struct Panel {
    double a;
    double b;
    ComplexValue value;
    double error;
    double roundoff;  // error floor set by cancellation in the rule itself
    bool operator<(const Panel& other) const { return error < other.error; }
};

// QUADPACK-style estimate: resasc * min(1, (200 |K - G| / resasc)^1.5),
// floored at 50 eps * int |f|.
template <class F>
Panel gauss_kronrod_panel(const F& f, double a, double b) {
    using kronrod = boost::math::quadrature::gauss_kronrod<double, 15>;
    using gauss = boost::math::quadrature::gauss<double, 7>;
    constexpr std::size_t n = 8;
    const auto& x = kronrod::abscissa();
    const auto& wk = kronrod::weights();
    const auto& wg = gauss::weights();
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    std::array<ComplexValue, n> fp{};
    std::array<ComplexValue, n> fm{};
    fp[0] = fm[0] = f(center);
    for (std::size_t i = 1; i < n; ++i) {
        fp[i] = f(center + half * x[i]);
        fm[i] = f(center - half * x[i]);
    }

    ComplexValue k_sum = wk[0] * fp[0];
    ComplexValue g_sum = wg[0] * fp[0];
    double abs_sum = wk[0] * std::abs(fp[0]);
    for (std::size_t i = 1; i < n; ++i) {
        k_sum += wk[i] * (fp[i] + fm[i]);
        abs_sum += wk[i] * (std::abs(fp[i]) + std::abs(fm[i]));
        if (i % 2 == 0) g_sum += wg[i / 2] * (fp[i] + fm[i]);
    }
    const ComplexValue mean = 0.5 * k_sum;
    double asc_sum = wk[0] * std::abs(fp[0] - mean);
    for (std::size_t i = 1; i < n; ++i) {
        asc_sum += wk[i] * (std::abs(fp[i] - mean) + std::abs(fm[i] - mean));
    }

    const double resabs = std::abs(half) * abs_sum;
    const double resasc = std::abs(half) * asc_sum;
    double error = std::abs((k_sum - g_sum) * half);
    if (resasc != 0.0 && error != 0.0) {
        error = resasc * std::min(1.0, std::pow(200.0 * error / resasc, 1.5));
    }
    const double roundoff = 50.0 * std::numeric_limits<double>::epsilon() * resabs;
    return {a, b, k_sum * half, std::max(error, roundoff), roundoff};
}

inline std::vector<double> breakpoints(double lower, double upper, double omega) {
    std::vector<double> cuts{lower, upper};
    if (lower < 0.0 && upper > 0.0) cuts.push_back(0.0);
    for (double p = 0.5; p < std::max(-lower, upper); p *= 2.0) {
        if (p < upper) cuts.push_back(p);
        if (-p > lower) cuts.push_back(-p);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    if (omega == 0.0) return cuts;

    const double max_width = std::numbers::pi / std::abs(omega);
    std::vector<double> out;
    out.reserve(cuts.size());
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double a = cuts[i];
        const double b = cuts[i + 1];
        const auto pieces = static_cast<long>(std::ceil((b - a) / max_width));
        for (long j = 0; j < pieces; ++j) {
            out.push_back(a + (b - a) * static_cast<double>(j) / static_cast<double>(pieces));
        }
    }
    out.push_back(cuts.back());
    return out;
}

}  // namespace quad_detail

/// int_{-beta}^inf w(eta) e^{i omega eta} d eta for real omega.
/// omega = -tau gives I or J; omega = +tau gives their complex conjugates.
inline QuadratureResult oscillatory_integral(Weight w, double beta_value, double omega,
                                             const QuadratureSettings& settings = {}) {
    using namespace quad_detail;
    settings.validate();
    if (!(beta_value > 0.0) || !std::isfinite(beta_value)) {
        throw DomainError("oscillatory_integral: beta must be positive and finite");
    }
    if (!std::isfinite(omega)) throw DomainError("oscillatory_integral: non-finite frequency");
    if (omega == 0.0 && w == Weight::first_moment) {
        throw DomainError("oscillatory_integral: first-moment integral diverges at tau = 0");
    }

    double x_max = settings.eta_max;
    if (omega != 0.0) x_max = std::max(x_max, tail_phase_floor / std::abs(omega));

    const auto integrand = [w, omega](double eta) {
        return weight_value(w, eta) * std::polar(1.0, omega * eta);
    };

    Tail tail{};
    if (omega == 0.0) {
        tail = {2.0 * std::atan(0.5 / x_max), 0.0};
    } else {
        tail = oscillatory_tail(w, x_max, omega);
    }

    std::vector<Panel> panels;
    const auto cuts = breakpoints(-beta_value, x_max, omega);
    panels.reserve(cuts.size() + 2 * static_cast<std::size_t>(settings.max_subdivisions));
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        panels.push_back(gauss_kronrod_panel(integrand, cuts[i], cuts[i + 1]));
    }
    std::make_heap(panels.begin(), panels.end());

    // Running sums drift under repeated add/subtract; resum before trusting them.
    ComplexValue total;
    double total_error = 0.0;
    const auto resum = [&] {
        total = tail.value;
        total_error = tail.error;
        for (const Panel& p : panels) {
            total += p.value;
            total_error += p.error;
        }
    };
    const auto target = [&] { return std::max(settings.abs_tol, settings.rel_tol * std::abs(total)); };
    resum();

    int subdivisions = 0;
    while (total_error > target()) {
        if (subdivisions >= settings.max_subdivisions) {
            resum();
            if (total_error <= target()) break;
            throw ToleranceNotMet("oscillatory_integral: subdivision budget exhausted at error estimate " +
                                      std::to_string(total_error),
                                  total_error);
        }
        std::pop_heap(panels.begin(), panels.end());
        const Panel worst = panels.back();
        if (worst.error <= worst.roundoff) {
            // Worst panel already at its roundoff floor; bisection cannot help.
            std::push_heap(panels.begin(), panels.end());
            break;
        }
        panels.pop_back();
        const double mid = 0.5 * (worst.a + worst.b);
        const Panel left = gauss_kronrod_panel(integrand, worst.a, mid);
        const Panel right = gauss_kronrod_panel(integrand, mid, worst.b);
        panels.push_back(left);
        std::push_heap(panels.begin(), panels.end());
        panels.push_back(right);
        std::push_heap(panels.begin(), panels.end());
        total += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        ++subdivisions;
        if (total_error <= target() || subdivisions % 256 == 0) resum();
    }
    return {total, total_error, subdivisions, x_max};
}

inline ComplexValue i_by_quadrature(double beta_value, double tau, const QuadratureSettings& settings = {}) {
    if (!(tau >= 0.0)) throw DomainError("i_by_quadrature: tau must be non-negative");
    return oscillatory_integral(Weight::lorentzian, beta_value, -tau, settings).value;
}

inline ComplexValue j_by_quadrature(double beta_value, double tau, const QuadratureSettings& settings = {}) {
    if (!(tau > 0.0)) throw DomainError("j_by_quadrature: tau must be positive (divergent at tau = 0)");
    return oscillatory_integral(Weight::first_moment, beta_value, -tau, settings).value;
}

/// Same phase convention as the closed-form amplitude: (N/2pi) e^{-i beta tau} I.
inline ComplexValue amplitude_by_quadrature(const BreitWignerModel& model, double tau,
                                            const QuadratureSettings& settings = {}) {
    const double b = beta(model);
    const ComplexValue i_val = i_by_quadrature(b, tau, settings);
    return normalization(model) / (2.0 * std::numbers::pi) * std::polar(1.0, -b * tau) * i_val;
}

}  // namespace bwdecay
