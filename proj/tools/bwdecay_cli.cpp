// bwdecay: time scans, cross-over reports and model info for the truncated
// Breit-Wigner decay model.
//
//   bwdecay scan --beta 10 --tau-min 0.01 --tau-max 40 --points 2000 --grid log
//   bwdecay crossover --beta 2 --output json
//   bwdecay info --e0 5 --gamma0 0.5 --emin 0
//
// Exit codes: 0 success, 2 usage error or invalid model, 3 numerical failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "bwdecay/bwdecay.hpp"

namespace {

constexpr int exit_usage = 2;
constexpr int exit_numerical = 3;

struct ModelFlags {
    std::optional<double> beta;
    std::optional<double> e0;
    double gamma0 = 1.0;
    double emin = 0.0;
    double hbar = 1.0;

    bwdecay::BreitWignerModel build() const {
        if (beta) {
            if (!(*beta > 0.0)) throw bwdecay::DomainError("--beta must be positive");
            return {emin + *beta * gamma0, gamma0, emin, hbar};
        }
        if (!e0) throw bwdecay::DomainError("a model needs --beta or --e0");
        return {*e0, gamma0, emin, hbar};
    }
};

struct ScanFlags {
    double tau_min = 0.01;
    double tau_max = 40.0;
    int points = 200;
    std::string grid = "log";
    std::string method = "exact";
    int terms = 2;
    std::string output = "csv";
    std::string out;
    bool no_metadata = false;
};

struct CrossoverFlags {
    int terms = 1;
    std::optional<double> amp_const;
    std::string output = "text";
    std::string out;
};

struct InfoFlags {
    std::string output = "text";
    std::string out;
};

// Writes to --out when given, standard output otherwise.
template <class Fn>
void emit(const std::string& path, Fn&& fn) {
    if (path.empty() || path == "-") {
        fn(std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw bwdecay::DomainError("cannot open output file '" + path + "'");
    fn(file);
    if (!file) throw bwdecay::DomainError("failed writing '" + path + "'");
}

int run_scan(const ModelFlags& mf, const ScanFlags& sf) {
    bwdecay::ScanSpec spec;
    spec.model = mf.build();
    spec.tau_min = sf.tau_min;
    spec.tau_max = sf.tau_max;
    spec.points = sf.points;
    spec.grid = sf.grid == "linear" ? bwdecay::GridKind::linear : bwdecay::GridKind::log;
    spec.method = *bwdecay::parse_method(sf.method);
    spec.terms = sf.terms;
    if (sf.tau_min < 0.0 || (sf.tau_min == 0.0 && spec.method != bwdecay::Method::exact)) {
        throw bwdecay::DomainError("--tau-min must be > 0 (0 is allowed only with --method exact)");
    }
    if (!(sf.tau_max > sf.tau_min)) throw bwdecay::DomainError("--tau-max must exceed --tau-min");
    if (spec.grid == bwdecay::GridKind::log && sf.tau_min == 0.0) {
        throw bwdecay::DomainError("--grid log needs --tau-min > 0");
    }

    const auto rows = bwdecay::run_scan(spec);
    emit(sf.out, [&](std::ostream& os) {
        if (sf.output == "json") {
            bwdecay::write_json(os, rows, sf.no_metadata ? nullptr : &spec);
        } else {
            bwdecay::write_csv(os, rows, sf.no_metadata ? std::string{} : bwdecay::metadata_line(spec));
        }
    });
    return 0;
}

int run_crossover(const ModelFlags& mf, const CrossoverFlags& cf) {
    const auto model = mf.build();
    const auto r = bwdecay::crossover_time(model, cf.terms, 1e-10, cf.amp_const);
    const double amp = cf.amp_const.value_or(bwdecay::normalization(model));
    const double time = bwdecay::t_of_tau(model, r.tau_t);
    emit(cf.out, [&](std::ostream& os) {
        if (cf.output == "json") {
            nlohmann::json doc = {{"beta", bwdecay::beta(model)},
                                  {"tau_t", r.tau_t},
                                  {"t", time},
                                  {"bracket", {r.bracket.first, r.bracket.second}},
                                  {"residual", r.residual},
                                  {"terms", r.order},
                                  {"amp_const", amp},
                                  {"iterations", r.iterations}};
            os << doc.dump(2) << '\n';
            return;
        }
        using bwdecay::format_double;
        os << "beta      " << format_double(bwdecay::beta(model)) << '\n'
           << "tau_T     " << format_double(r.tau_t) << '\n'
           << "T         " << format_double(time) << " (hbar/gamma0 = " << format_double(model.lifetime()) << ")\n"
           << "bracket   [" << format_double(r.bracket.first) << ", " << format_double(r.bracket.second) << "]\n"
           << "residual  " << format_double(r.residual) << '\n'
           << "terms     " << r.order << '\n'
           << "amp_const " << format_double(amp) << '\n';
    });
    return 0;
}

int run_info(const ModelFlags& mf, const InfoFlags& inf) {
    const auto model = mf.build();
    const double b = bwdecay::beta(model);
    const double n = bwdecay::normalization(model);
    emit(inf.out, [&](std::ostream& os) {
        if (inf.output == "json") {
            nlohmann::json doc = {{"beta", b},
                                  {"e0", model.e0()},
                                  {"gamma0", model.gamma0()},
                                  {"emin", model.emin()},
                                  {"hbar", model.hbar()},
                                  {"normalization", n},
                                  {"lifetime", model.lifetime()},
                                  {"peak_density", bwdecay::peak_density(model)},
                                  {"reference_gamma_ratio", 1.0},
                                  {"reference_kappa", 1.0}};
            os << doc.dump(2) << '\n';
            return;
        }
        using bwdecay::format_double;
        os << "beta           " << format_double(b) << '\n'
           << "normalization  " << format_double(n) << '\n'
           << "lifetime       " << format_double(model.lifetime()) << '\n'
           << "peak_density   " << format_double(bwdecay::peak_density(model)) << '\n'
           << "reference      gamma/gamma0 = 1, kappa = 1\n";
    });
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Survival probability and effective Hamiltonian of a truncated Breit-Wigner resonance"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "key=value file with default flag values");

    ModelFlags mf;
    auto* beta_opt = app.add_option("--beta", mf.beta, "(E0 - Emin) / gamma0");
    auto* e0_opt = app.add_option("--e0", mf.e0, "resonance energy");
    beta_opt->excludes(e0_opt);
    app.add_option("--gamma0", mf.gamma0, "canonical width")->capture_default_str();
    app.add_option("--emin", mf.emin, "lower bound of the spectrum")->capture_default_str();
    app.add_option("--hbar", mf.hbar, "reduced Planck constant in the chosen units")->capture_default_str();

    ScanFlags sf;
    auto* scan = app.add_subcommand("scan", "tabulate P, kappa, gamma/gamma0 and h over a time grid");
    scan->add_option("--tau-min", sf.tau_min, "first grid point")->capture_default_str();
    scan->add_option("--tau-max", sf.tau_max, "last grid point")->capture_default_str();
    scan->add_option("--points", sf.points, "number of grid points")
        ->check(CLI::Range(2, 100000000))
        ->capture_default_str();
    scan->add_option("--grid", sf.grid, "grid spacing")
        ->check(CLI::IsMember({"linear", "log"}))
        ->capture_default_str();
    scan->add_option("--method", sf.method, "evaluation path")
        ->check(CLI::IsMember({"exact", "asymptotic", "quadrature"}))
        ->capture_default_str();
    scan->add_option("--terms", sf.terms, "series terms for --method asymptotic")
        ->check(CLI::Range(1, bwdecay::max_series_order))
        ->capture_default_str();
    scan->add_option("--output", sf.output, "encoding")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    scan->add_option("--out", sf.out, "output file (default: standard output)");
    scan->add_flag("--no-metadata", sf.no_metadata, "omit the metadata line / object");

    CrossoverFlags cf;
    auto* cross = app.add_subcommand("crossover", "cross-over time between exponential and power-law decay");
    cross->add_option("--terms", cf.terms, "terms of the late-time amplitude")
        ->check(CLI::Range(1, 4))
        ->capture_default_str();
    cross->add_option("--amp-const", cf.amp_const, "prefactor A of the canonical amplitude (default N)")
        ->check(CLI::PositiveNumber);
    cross->add_option("--output", cf.output, "encoding")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
    cross->add_option("--out", cf.out, "output file (default: standard output)");

    InfoFlags inf;
    auto* info = app.add_subcommand("info", "model summary");
    info->add_option("--output", inf.output, "encoding")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
    info->add_option("--out", inf.out, "output file (default: standard output)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        if (scan->parsed()) return run_scan(mf, sf);
        if (cross->parsed()) return run_crossover(mf, cf);
        return run_info(mf, inf);
    } catch (const bwdecay::DomainError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_usage;
    } catch (const bwdecay::ToleranceNotMet& e) {
        std::fprintf(stderr, "numerical failure: %s (achieved error %.3g)\n", e.what(), e.achieved_error());
        return exit_numerical;
    } catch (const bwdecay::Error& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return exit_numerical;
    }
}
