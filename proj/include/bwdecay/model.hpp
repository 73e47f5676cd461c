#pragma once

#include <cmath>
#include <numbers>
#include <string>

#include "errors.hpp"

namespace bwdecay {

/// Truncated Breit-Wigner energy density
///
///   w(E) = (N / 2pi) * Theta(E - E_min) * gamma0 / ((E - E0)^2 + gamma0^2 / 4)
///
/// All downstream numerics work in the dimensionless pair
/// beta = (E0 - E_min) / gamma0 and tau = gamma0 t / hbar.
class BreitWignerModel {
public:
    BreitWignerModel(double e0, double gamma0, double emin, double hbar = 1.0)
        : e0_(e0), gamma0_(gamma0), emin_(emin), hbar_(hbar) {
        if (!std::isfinite(e0) || !std::isfinite(gamma0) || !std::isfinite(emin) ||
            !std::isfinite(hbar)) {
            throw DomainError("BreitWignerModel: parameters must be finite");
        }
        if (!(gamma0 > 0.0)) throw DomainError("BreitWignerModel: gamma0 must be positive");
        if (!(hbar > 0.0)) throw DomainError("BreitWignerModel: hbar must be positive");
        if (!(e0 > emin)) throw DomainError("BreitWignerModel: e0 must exceed emin (beta > 0)");
        if (!std::isfinite((e0 - emin) / gamma0)) {
            throw DomainError("BreitWignerModel: beta is not finite");
        }
    }

    /// Model with gamma0 = 1, E_min = 0 and E0 = beta.
    static BreitWignerModel from_beta(double beta) { return BreitWignerModel(beta, 1.0, 0.0); }

    double e0() const noexcept { return e0_; }
    double gamma0() const noexcept { return gamma0_; }
    double emin() const noexcept { return emin_; }
    double hbar() const noexcept { return hbar_; }

    /// hbar / gamma0, the time unit in which tau is measured.
    double lifetime() const noexcept { return hbar_ / gamma0_; }

private:
    double e0_;
    double gamma0_;
    double emin_;
    double hbar_;
};

inline double beta(const BreitWignerModel& model) noexcept {
    return (model.e0() - model.emin()) / model.gamma0();
}

inline double tau_of_t(const BreitWignerModel& model, double t) {
    if (!(t >= 0.0)) throw DomainError("tau_of_t: negative time");
    return model.gamma0() * t / model.hbar();
}

inline double t_of_tau(const BreitWignerModel& model, double tau) {
    if (!(tau >= 0.0)) throw DomainError("t_of_tau: negative time");
    return tau * model.hbar() / model.gamma0();
}

/// Closed form N = 2pi / (pi + 2 atan(2 beta)). Accepts beta = 0 (N = 2) even
/// though a model cannot be built there.
inline double normalization_for_beta(double beta_value) {
    if (!(beta_value >= 0.0)) throw DomainError("normalization: beta must be non-negative");
    return 2.0 * std::numbers::pi / (std::numbers::pi + 2.0 * std::atan(2.0 * beta_value));
}

inline double normalization(const BreitWignerModel& model) {
    return normalization_for_beta(beta(model));
}

inline double density(const BreitWignerModel& model, double e) {
    if (e < model.emin()) return 0.0;
    const double g = model.gamma0();
    const double de = e - model.e0();
    return normalization(model) / (2.0 * std::numbers::pi) * g / (de * de + 0.25 * g * g);
}

/// Density at E = E0.
inline double peak_density(const BreitWignerModel& model) {
    return normalization(model) / (2.0 * std::numbers::pi) * 4.0 / model.gamma0();
}

}  // namespace bwdecay
