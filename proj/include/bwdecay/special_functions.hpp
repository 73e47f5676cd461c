#pragma once

// Complex exponential integral E1(z) on the principal branch, and its scaled
// companion G(z) = exp(z) E1(z).
//
// Two evaluation routes:
//   * power series  E1(z) = -gamma - ln z - sum_{k>=1} (-z)^k / (k k!)
//   * continued fraction for G(z), modified Lentz,
//       G(z) = 1/(z+1- 1/(z+3- 4/(z+5- 9/(z+7- ...))))
//
// The series loses about exp(|z| + Re z) in relative accuracy through
// cancellation, so it is used where |z| + Re z <= 4. That region holds the
// disc |z| <= 2 and a parabolic strip around the negative real axis, where
// the continued fraction converges too slowly. Everywhere else the continued
// fraction is used.

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>

#include "errors.hpp"

namespace bwdecay {

using ComplexValue = std::complex<double>;

inline constexpr double euler_gamma = 0.57721566490153286060651209008240243;

namespace special_functions_detail {

inline constexpr int series_max_terms = 200;
inline constexpr int fraction_max_iterations = 500;

// exp(|z| + Re z) <= e^4 keeps the series cancellation below ~2^6 ulp.
inline constexpr double series_cancellation_limit = 4.0;
inline constexpr double series_max_modulus = 50.0;

inline void check_argument(ComplexValue z, const char* who) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw DomainError(std::string(who) + ": non-finite argument");
    }
    if (z == ComplexValue(0.0, 0.0)) {
        throw DomainError(std::string(who) + ": logarithmic singularity at z = 0");
    }
    if (z.imag() == 0.0 && z.real() < 0.0) {
        throw DomainError(std::string(who) + ": argument on the branch cut (negative real axis)");
    }
}

inline bool use_series(ComplexValue z) {
    const double r = std::abs(z);
    return r <= series_max_modulus && r + z.real() <= series_cancellation_limit;
}

inline ComplexValue e1_series(ComplexValue z) {
    const double eps = std::numeric_limits<double>::epsilon();
    const ComplexValue head = -euler_gamma - std::log(z);
    ComplexValue power = z;  // (-1)^{k+1} z^k / k!
    ComplexValue sum = z;
    for (int k = 2; k <= series_max_terms; ++k) {
        power *= -z / static_cast<double>(k);
        const ComplexValue term = power / static_cast<double>(k);
        sum += term;
        if (std::abs(term) <= 0.5 * eps * std::abs(head + sum)) {
            return head + sum;
        }
    }
    throw ConvergenceError("exp_integral_e1: power series did not converge in " +
                           std::to_string(series_max_terms) + " terms");
}

inline ComplexValue scaled_continued_fraction(ComplexValue z) {
    const double eps = std::numeric_limits<double>::epsilon();
    const double tiny = 1e-300;
    ComplexValue b = z + 1.0;
    ComplexValue c = 1.0 / tiny;
    ComplexValue d = 1.0 / b;
    ComplexValue h = d;
    for (int i = 1; i <= fraction_max_iterations; ++i) {
        const double an = -static_cast<double>(i) * static_cast<double>(i);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const ComplexValue delta = c * d;
        h *= delta;
        if (std::abs(delta - 1.0) <= 4.0 * eps) {
            return h;
        }
    }
    throw ConvergenceError("exp_integral_e1: continued fraction did not converge in " +
                           std::to_string(fraction_max_iterations) + " iterations");
}

inline ComplexValue require_finite(ComplexValue v, const char* who) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        throw DomainError(std::string(who) + ": result not representable in double precision");
    }
    return v;
}

}  // namespace special_functions_detail

/// E1(z) = integral_z^inf e^{-u}/u du, principal branch.
///
/// Throws DomainError at z = 0, on the cut (Im z == 0, Re z < 0), or when the
/// result overflows; ConvergenceError when the selected route exhausts its
/// budget.
inline ComplexValue exp_integral_e1(ComplexValue z) {
    namespace sd = special_functions_detail;
    sd::check_argument(z, "exp_integral_e1");
    if (sd::use_series(z)) {
        return sd::require_finite(sd::e1_series(z), "exp_integral_e1");
    }
    const ComplexValue g = sd::scaled_continued_fraction(z);
    return sd::require_finite(std::exp(-z) * g, "exp_integral_e1");
}

/// G(z) = exp(z) E1(z). Never forms exp(z) on the continued-fraction route,
/// so it stays finite (~1/z) for arbitrarily large |z|.
inline ComplexValue exp_integral_e1_scaled(ComplexValue z) {
    namespace sd = special_functions_detail;
    sd::check_argument(z, "exp_integral_e1_scaled");
    if (sd::use_series(z)) {
        return sd::require_finite(std::exp(z) * sd::e1_series(z), "exp_integral_e1_scaled");
    }
    return sd::require_finite(sd::scaled_continued_fraction(z), "exp_integral_e1_scaled");
}

}  // namespace bwdecay
