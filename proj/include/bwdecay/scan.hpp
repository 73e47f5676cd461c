#pragma once

// Time scans of P, kappa, gamma/gamma0 and h, plus their CSV/JSON encodings.
//
// CSV schema (header line exactly):
//   tau,p,kappa,gamma_ratio,re_h,im_h,method
// Floats use 17 significant digits, '.' decimal separator, LF line endings.
// Fields that are undefined for a row (h at tau = 0) are left empty; JSON
// uses null for them. re_h = (E - E_min)/gamma0, im_h = Im h / gamma0.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "asymptotics.hpp"
#include "errors.hpp"
#include "exact.hpp"
#include "model.hpp"
#include "quad_oracle.hpp"

namespace bwdecay {

enum class Method { exact, asymptotic, quadrature };
enum class GridKind { linear, log };

inline std::string_view to_string(Method m) {
    switch (m) {
        case Method::exact: return "exact";
        case Method::asymptotic: return "asymptotic";
        case Method::quadrature: return "quadrature";
    }
    return "exact";
}

inline std::optional<Method> parse_method(std::string_view s) {
    if (s == "exact") return Method::exact;
    if (s == "asymptotic") return Method::asymptotic;
    if (s == "quadrature") return Method::quadrature;
    return std::nullopt;
}

inline std::string_view to_string(GridKind g) { return g == GridKind::log ? "log" : "linear"; }

struct ScanRow {
    double tau;
    double t_over_lifetime;  // equals tau: lifetimes are hbar/gamma0
    double p;
    std::optional<double> kappa;
    std::optional<double> gamma_ratio;
    std::optional<double> re_h;
    std::optional<double> im_h;
    Method method;

    bool operator==(const ScanRow&) const = default;
};

struct ScanSpec {
    BreitWignerModel model = BreitWignerModel::from_beta(10.0);
    double tau_min = 0.01;
    double tau_max = 40.0;
    int points = 200;
    GridKind grid = GridKind::log;
    Method method = Method::exact;
    int terms = 2;
    QuadratureSettings quadrature{};
};

inline std::vector<double> make_grid(double tau_min, double tau_max, int points, GridKind kind) {
    if (points < 2) throw DomainError("make_grid: need at least 2 points");
    if (!(tau_min >= 0.0) || !(tau_max > tau_min) || !std::isfinite(tau_max)) {
        throw DomainError("make_grid: need 0 <= tau_min < tau_max");
    }
    if (kind == GridKind::log && !(tau_min > 0.0)) throw DomainError("make_grid: log grid needs tau_min > 0");
    std::vector<double> out(static_cast<std::size_t>(points));
    const double last = static_cast<double>(points - 1);
    for (int i = 0; i < points; ++i) {
        const double s = static_cast<double>(i) / last;
        out[static_cast<std::size_t>(i)] =
            kind == GridKind::log ? tau_min * std::pow(tau_max / tau_min, s) : tau_min + (tau_max - tau_min) * s;
    }
    out.back() = tau_max;
    return out;
}

inline ScanRow evaluate_row(const ScanSpec& spec, double tau) {
    const double b = beta(spec.model);
    ScanRow row{tau, tau, 0.0, {}, {}, {}, {}, spec.method};

    const auto set_ratio = [&](ComplexValue ratio) {
        row.kappa = 1.0 + ratio.real() / b;
        row.gamma_ratio = -2.0 * ratio.imag();
        row.re_h = b + ratio.real();
        row.im_h = ratio.imag();
    };

    switch (spec.method) {
        case Method::exact: {
            row.p = survival_probability(spec.model, tau);
            if (tau > 0.0) {
                try {
                    const auto h = effective_hamiltonian(spec.model, tau);
                    set_ratio({h.energy - b, -0.5 * h.rate});
                } catch (const NearZeroAmplitude&) {
                    // h undefined here; leave the fields empty
                }
            }
            break;
        }
        case Method::asymptotic: {
            if (!(tau > 0.0)) throw DomainError("asymptotic scan needs tau > 0");
            const int order = std::min(spec.terms, max_series_order);
            const ComplexValue i_late = i_series(b, tau, order).value;
            row.p = std::norm(normalization(spec.model) / (2.0 * std::numbers::pi) * i_late);
            set_ratio(ratio_series(b, tau, order).value);
            break;
        }
        case Method::quadrature: {
            const ComplexValue i_val = i_by_quadrature(b, tau, spec.quadrature);
            row.p = std::norm(normalization(spec.model) / (2.0 * std::numbers::pi) * i_val);
            if (tau > 0.0 && std::abs(i_val) >= near_zero_i_threshold) {
                set_ratio(j_by_quadrature(b, tau, spec.quadrature) / i_val);
            }
            break;
        }
    }
    return row;
}

inline std::vector<ScanRow> run_scan(const ScanSpec& spec) {
    if (spec.terms < 1 || spec.terms > max_series_order) throw DomainError("scan: terms must be in 1..5");
    if (spec.method != Method::exact && !(spec.tau_min > 0.0)) {
        throw DomainError("scan: tau_min = 0 is only allowed with the exact method");
    }
    std::vector<ScanRow> rows;
    const auto grid = make_grid(spec.tau_min, spec.tau_max, spec.points, spec.grid);
    rows.reserve(grid.size());
    for (double tau : grid) rows.push_back(evaluate_row(spec, tau));
    return rows;
}

// ---- encodings ------------------------------------------------------------

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline constexpr std::string_view csv_header = "tau,p,kappa,gamma_ratio,re_h,im_h,method";

inline std::string metadata_line(const ScanSpec& spec) {
    const auto& m = spec.model;
    std::ostringstream os;
    os << "# bwdecay scan beta=" << format_double(beta(m)) << " e0=" << format_double(m.e0())
       << " gamma0=" << format_double(m.gamma0()) << " emin=" << format_double(m.emin())
       << " hbar=" << format_double(m.hbar()) << " N=" << format_double(normalization(m))
       << " grid=" << to_string(spec.grid) << " points=" << spec.points << " method=" << to_string(spec.method)
       << " terms=" << spec.terms;
    return os.str();
}

inline void write_csv(std::ostream& os, const std::vector<ScanRow>& rows, const std::string& metadata = {}) {
    const auto field = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string{}; };
    if (!metadata.empty()) os << metadata << '\n';
    os << csv_header << '\n';
    for (const auto& r : rows) {
        os << format_double(r.tau) << ',' << format_double(r.p) << ',' << field(r.kappa) << ','
           << field(r.gamma_ratio) << ',' << field(r.re_h) << ',' << field(r.im_h) << ',' << to_string(r.method)
           << '\n';
    }
}

/// Inverse of write_csv; skips '#' lines.
inline std::vector<ScanRow> read_csv(std::istream& is) {
    std::vector<ScanRow> rows;
    std::string line;
    bool header_seen = false;
    const auto number = [](const std::string& s) -> std::optional<double> {
        if (s.empty()) return std::nullopt;
        char* end = nullptr;
        const double v = std::strtod(s.c_str(), &end);
        if (end != s.c_str() + s.size()) throw DomainError("read_csv: bad number '" + s + "'");
        return v;
    };
    while (std::getline(is, line)) {
        if (line.empty() || line.front() == '#') continue;
        if (!header_seen) {
            if (line != csv_header) throw DomainError("read_csv: unexpected header '" + line + "'");
            header_seen = true;
            continue;
        }
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (!line.empty() && line.back() == ',') cells.emplace_back();
        if (cells.size() != 7) throw DomainError("read_csv: expected 7 fields in '" + line + "'");
        const auto method = parse_method(cells[6]);
        if (!method) throw DomainError("read_csv: unknown method '" + cells[6] + "'");
        const auto tau = number(cells[0]);
        const auto p = number(cells[1]);
        if (!tau || !p) throw DomainError("read_csv: tau and p are required");
        rows.push_back({*tau, *tau, *p, number(cells[2]), number(cells[3]), number(cells[4]), number(cells[5]),
                        *method});
    }
    return rows;
}

inline nlohmann::json to_json(const ScanRow& r) {
    const auto opt = [](const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); };
    return {{"tau", r.tau},
            {"p", r.p},
            {"kappa", opt(r.kappa)},
            {"gamma_ratio", opt(r.gamma_ratio)},
            {"re_h", opt(r.re_h)},
            {"im_h", opt(r.im_h)},
            {"method", std::string(to_string(r.method))}};
}

inline void write_json(std::ostream& os, const std::vector<ScanRow>& rows, const ScanSpec* meta = nullptr) {
    nlohmann::json doc;
    if (meta != nullptr) {
        const auto& m = meta->model;
        doc["meta"] = {{"beta", beta(m)},        {"e0", m.e0()},
                       {"gamma0", m.gamma0()},   {"emin", m.emin()},
                       {"hbar", m.hbar()},       {"normalization", normalization(m)},
                       {"grid", std::string(to_string(meta->grid))},
                       {"points", meta->points}, {"method", std::string(to_string(meta->method))},
                       {"terms", meta->terms}};
    }
    doc["rows"] = nlohmann::json::array();
    for (const auto& r : rows) doc["rows"].push_back(to_json(r));
    os << doc.dump(2) << '\n';
}

// ---- regime classification --------------------------------------------------

enum class Regime { exponential, transition, power_law };

inline std::string_view to_string(Regime r) {
    switch (r) {
        case Regime::exponential: return "exponential";
        case Regime::transition: return "transition";
        case Regime::power_law: return "power_law";
    }
    return "transition";
}

/// |ln P - ln P_ref| allowed for a row to count as following a reference law.
inline constexpr double regime_log_tolerance = 0.25;

/// Exponential when P tracks N^2 e^{-tau} only, power law when it tracks the
/// leading |a_lt|^2 = (N / (2pi B tau))^2 only, transition otherwise. The
/// power law only counts where the late series is usable at all, i.e. its
/// first correction is smaller than its leading term (tau > 2 beta / B).
inline Regime classify_regime(const BreitWignerModel& model, double tau, double p) {
    const double n = normalization(model);
    const double canonical = n * n * std::exp(-tau);
    const bool exp_ok = p > 0.0 && std::abs(std::log(p / canonical)) <= regime_log_tolerance;
    bool late_ok = false;
    if (tau > 0.0 && p > 0.0 && !amplitude_late(model, tau, 2).beyond_optimal_truncation) {
        const double late = std::norm(amplitude_late(model, tau, 1).value);
        late_ok = std::abs(std::log(p / late)) <= regime_log_tolerance;
    }
    if (exp_ok && !late_ok) return Regime::exponential;
    if (late_ok && !exp_ok) return Regime::power_law;
    return Regime::transition;
}

}  // namespace bwdecay
