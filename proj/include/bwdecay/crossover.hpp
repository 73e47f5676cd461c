#pragma once

// Cross-over time T: where the canonical exponential |a_c|^2 = A^2 e^{-tau}
// and the late-time power law |a_lt|^2 become equal. Solved as the largest
// root in [1, 1e4] of
//
//   F(tau) = ln(A^2 e^{-tau}) - ln |a_lt(tau)|^2.
//
// A defaults to N, the prefactor the exact amplitude carries in its
// exponential era.

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include <boost/math/tools/toms748_solve.hpp>

#include "asymptotics.hpp"
#include "errors.hpp"
#include "model.hpp"

namespace bwdecay {

struct CrossoverResult {
    double tau_t;
    std::pair<double, double> bracket;
    double residual;
    int order;
    int iterations;
    double time;  ///< hbar tau_t / gamma0
};

inline constexpr double crossover_search_min = 1.0;
inline constexpr double crossover_search_max = 1e4;
inline constexpr int crossover_max_iterations = 200;

/// F(tau) above, for a given a_lt order and canonical constant A.
inline double crossover_residual(const BreitWignerModel& model, double tau, int order, double amp_const) {
    const double late = std::norm(amplitude_late(model, tau, order).value);
    return 2.0 * std::log(amp_const) - tau - std::log(late);
}

inline CrossoverResult crossover_time(const BreitWignerModel& model, int order = 1, double tol = 1e-10,
                                      std::optional<double> amp_const = std::nullopt) {
    if (order < 1 || order > 4) throw DomainError("crossover_time: order must be in 1..4");
    if (!(tol > 0.0)) throw DomainError("crossover_time: tol must be positive");
    const double a = amp_const.value_or(normalization(model));
    if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("crossover_time: amplitude constant must be positive");

    const auto f = [&](double tau) { return crossover_residual(model, tau, order, a); };

    // Walk down from the top of the search range; the first sign change met is
    // the largest root.
    constexpr int grid = 4000;
    const double log_lo = std::log(crossover_search_min);
    const double log_hi = std::log(crossover_search_max);
    double hi = crossover_search_max;
    double f_hi = f(hi);
    double lo = hi;
    double f_lo = f_hi;
    bool found = false;
    for (int i = grid - 1; i >= 0; --i) {
        lo = std::exp(log_lo + (log_hi - log_lo) * i / grid);
        f_lo = f(lo);
        if (f_lo == 0.0 || (f_lo > 0.0) != (f_hi > 0.0)) {
            found = true;
            break;
        }
        hi = lo;
        f_hi = f_lo;
    }
    if (!found) {
        throw BracketError("crossover_time: no sign change of the cross-over condition in [1, 1e4]");
    }
    if (f_lo == 0.0) {
        return {lo, {lo, hi}, 0.0, order, 0, t_of_tau(model, lo)};
    }

    std::uintmax_t iterations = crossover_max_iterations;
    const auto width_ok = [tol](double x0, double x1) { return std::abs(x1 - x0) <= 0.25 * tol; };
    const auto [r0, r1] = boost::math::tools::toms748_solve(f, lo, hi, f_lo, f_hi, width_ok, iterations);
    const double f0 = f(r0);
    const double f1 = f(r1);
    const double root = std::abs(f0) <= std::abs(f1) ? r0 : r1;
    const double residual = std::abs(f0) <= std::abs(f1) ? f0 : f1;
    if (std::abs(residual) > tol) {
        throw ToleranceNotMet("crossover_time: residual " + std::to_string(residual) + " above tolerance after " +
                                  std::to_string(iterations) + " iterations",
                              std::abs(residual));
    }
    return {root, {lo, hi}, residual, order, static_cast<int>(iterations), t_of_tau(model, root)};
}

/// Expected survivors p * N of a population created together, with a flag for
/// p * N >> 1 (taken as p * N >= many).
struct SurvivorCount {
    double expected;
    bool observable;
};

inline SurvivorCount survivor_count(double p_at_t, double n_created, double many = 100.0) {
    if (!std::isfinite(p_at_t) || p_at_t < 0.0 || p_at_t > 1.0) {
        throw DomainError("survivor_count: probability must lie in [0, 1]");
    }
    if (!std::isfinite(n_created) || !(n_created > 0.0)) {
        throw DomainError("survivor_count: created count must be positive and finite");
    }
    const double expected = p_at_t * n_created;
    return {expected, expected >= many};
}

}  // namespace bwdecay
