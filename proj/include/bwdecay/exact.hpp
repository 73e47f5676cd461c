#pragma once

// Closed-form survival amplitude and effective Hamiltonian of the truncated
// Breit-Wigner model.
//
// With z+ = tau/2 - i beta tau, z- = -tau/2 - i beta tau and G = exp(z) E1(z),
//
//   I(beta, tau) = int_{-beta}^inf e^{-i eta tau} / (eta^2 + 1/4) d eta
//                = 2pi e^{-tau/2} - i e^{i beta tau} [G(z+) - G(z-)]
//   J(beta, tau) = int_{-beta}^inf eta e^{-i eta tau} / (eta^2 + 1/4) d eta
//                = -i pi e^{-tau/2} + (1/2) e^{i beta tau} [G(z+) + G(z-)]
//
// The pole term (exp(-tau/2)) and the branch-point term (the G's, O(1/tau))
// are formed separately and added last, so nothing overflows and the
// power-law part keeps full accuracy after exp(-tau/2) underflows.
//
// Phase convention: a(tau) = (N/2pi) e^{-i beta tau} I(beta, tau), i.e. the
// factor exp(-i E_min t / hbar) is dropped. Only |a|^2, E(t), gamma(t) and
// kappa(t) are physical.

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "errors.hpp"
#include "model.hpp"
#include "special_functions.hpp"

namespace bwdecay {

struct AmplitudeValue {
    ComplexValue value;
    double tau;
};

/// h(t) in units of gamma0, measured from E_min:
///   h - E_min = gamma0 * (energy - i rate / 2).
struct EffectiveHamiltonianValue {
    double energy;  ///< (E(t) - E_min) / gamma0
    double rate;    ///< gamma(t) / gamma0
    double tau;

    ComplexValue h() const noexcept { return {energy, -0.5 * rate}; }
    double kappa(double beta_value) const noexcept { return energy / beta_value; }
};

/// |I| below this makes J/I meaningless.
inline constexpr double near_zero_i_threshold = 1e-280;

namespace exact_detail {

struct BranchTerms {
    ComplexValue g_plus;   // G(tau/2 - i beta tau)
    ComplexValue g_minus;  // G(-tau/2 - i beta tau)
};

inline void check_args(double beta_value, double tau, const char* who) {
    if (!(beta_value > 0.0) || !std::isfinite(beta_value)) {
        throw DomainError(std::string(who) + ": beta must be positive and finite");
    }
    if (!(tau > 0.0) || !std::isfinite(tau)) {
        throw DomainError(std::string(who) + ": tau must be positive and finite");
    }
}

inline BranchTerms branch_terms(double beta_value, double tau) {
    const double im = -beta_value * tau;
    return {exp_integral_e1_scaled({0.5 * tau, im}), exp_integral_e1_scaled({-0.5 * tau, im})};
}

inline ComplexValue phase(double beta_value, double tau) {
    return std::polar(1.0, beta_value * tau);
}

}  // namespace exact_detail

/// Limit of I(beta, tau) as tau -> 0+.
inline double i_beta_at_zero(double beta_value) {
    return std::numbers::pi + 2.0 * std::atan(2.0 * beta_value);
}

inline ComplexValue i_beta(double beta_value, double tau) {
    exact_detail::check_args(beta_value, tau, "i_beta");
    const auto [gp, gm] = exact_detail::branch_terms(beta_value, tau);
    const ComplexValue pole = 2.0 * std::numbers::pi * std::exp(-0.5 * tau);
    const ComplexValue branch = ComplexValue(0.0, -1.0) * exact_detail::phase(beta_value, tau) * (gp - gm);
    return pole + branch;
}

/// J = i dI/dtau. Diverges logarithmically as tau -> 0+.
inline ComplexValue j_beta(double beta_value, double tau) {
    exact_detail::check_args(beta_value, tau, "j_beta");
    const auto [gp, gm] = exact_detail::branch_terms(beta_value, tau);
    const ComplexValue pole(0.0, -std::numbers::pi * std::exp(-0.5 * tau));
    const ComplexValue branch = 0.5 * exact_detail::phase(beta_value, tau) * (gp + gm);
    return pole + branch;
}

inline AmplitudeValue amplitude(const BreitWignerModel& model, double tau) {
    if (!(tau >= 0.0) || !std::isfinite(tau)) throw DomainError("amplitude: tau must be >= 0 and finite");
    if (tau == 0.0) return {ComplexValue(1.0, 0.0), 0.0};
    const double b = beta(model);
    const double n = normalization(model);
    const auto [gp, gm] = exact_detail::branch_terms(b, tau);
    const ComplexValue canonical = n * std::exp(ComplexValue(-0.5 * tau, -b * tau));
    const ComplexValue tail = ComplexValue(0.0, -n / (2.0 * std::numbers::pi)) * (gp - gm);
    return {canonical + tail, tau};
}

inline double survival_probability(const BreitWignerModel& model, double tau) {
    return std::norm(amplitude(model, tau).value);
}

/// h via the ratio J/I: h = E0 + gamma0 J/I.
inline EffectiveHamiltonianValue effective_hamiltonian(const BreitWignerModel& model, double tau) {
    const double b = beta(model);
    exact_detail::check_args(b, tau, "effective_hamiltonian");
    const ComplexValue i_val = i_beta(b, tau);
    if (std::abs(i_val) < near_zero_i_threshold) {
        throw NearZeroAmplitude("effective_hamiltonian: |I| below 1e-280 at tau = " + std::to_string(tau));
    }
    const ComplexValue ratio = j_beta(b, tau) / i_val;
    return {b + ratio.real(), -2.0 * ratio.imag(), tau};
}

/// h via the E1 brace form
///   h = E0 - (i/2) gamma0 (c + (i/2pi)(G+ + G-)) / (c - (i/2pi)(G+ - G-)),
/// with c = exp(-tau/2 - i beta tau). Algebraically equal to the J/I route.
inline EffectiveHamiltonianValue effective_hamiltonian_alt(const BreitWignerModel& model, double tau) {
    const double b = beta(model);
    exact_detail::check_args(b, tau, "effective_hamiltonian_alt");
    const auto [gp, gm] = exact_detail::branch_terms(b, tau);
    const ComplexValue c = std::exp(ComplexValue(-0.5 * tau, -b * tau));
    const ComplexValue k(0.0, 1.0 / (2.0 * std::numbers::pi));
    const ComplexValue numerator = c + k * (gp + gm);
    const ComplexValue denominator = c - k * (gp - gm);
    if (2.0 * std::numbers::pi * std::abs(denominator) < near_zero_i_threshold) {
        throw NearZeroAmplitude("effective_hamiltonian_alt: |I| below 1e-280 at tau = " + std::to_string(tau));
    }
    const ComplexValue shift = ComplexValue(0.0, -0.5) * numerator / denominator;
    return {b + shift.real(), -2.0 * shift.imag(), tau};
}

/// (E(t) - E_min) / (E0 - E_min) = 1 + Re(J/I) / beta.
inline double kappa(const BreitWignerModel& model, double tau) {
    return effective_hamiltonian(model, tau).kappa(beta(model));
}

/// chi = e^tau E1(z+) - E1(z-). Grows like e^{tau/2}; throws DomainError once
/// that overflows (tau beyond ~1400).
inline ComplexValue chi(double beta_value, double tau) {
    exact_detail::check_args(beta_value, tau, "chi");
    const auto [gp, gm] = exact_detail::branch_terms(beta_value, tau);
    const ComplexValue v = std::exp(ComplexValue(0.5 * tau, beta_value * tau)) * (gp - gm);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw DomainError("chi: overflow");
    return v;
}

/// d chi / d tau = e^tau E1(z+).
inline ComplexValue chi_derivative(double beta_value, double tau) {
    exact_detail::check_args(beta_value, tau, "chi_derivative");
    const ComplexValue gp = exp_integral_e1_scaled({0.5 * tau, -beta_value * tau});
    const ComplexValue v = std::exp(ComplexValue(0.5 * tau, beta_value * tau)) * gp;
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw DomainError("chi_derivative: overflow");
    return v;
}

}  // namespace bwdecay
