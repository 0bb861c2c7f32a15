#include "kravchuk_cli/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "kravchuk/acceptance.hpp"
#include "kravchuk/basis.hpp"
#include "kravchuk/errors.hpp"
#include "kravchuk/evolution.hpp"
#include "kravchuk/experiments.hpp"
#include "kravchuk/transform.hpp"

namespace kravchuk::cli {

namespace {

struct Options {
    std::vector<int> N;
    std::optional<int> n;
    std::optional<int> n_max;
    std::vector<int> modes;
    double sigma = 0.0;
    std::vector<double> t;
    std::string out;
    std::string f = "gaussian";
    std::vector<std::string> tol;
    std::uint64_t seed = kDefaultSeed;
    /// Effective non-default options, one "key=value" per entry.
    std::string echo;
};

std::vector<int> or_default(const std::vector<int>& v, std::vector<int> fallback) { return v.empty() ? fallback : v; }

int single_N(const Options& o, int fallback) {
    if (o.N.size() > 1) throw ConfigError("this subcommand takes a single --N");
    return o.N.empty() ? fallback : o.N.front();
}

void emit(std::ostream& out, const Options& o, const std::string& file, const CsvTable& table) {
    const std::string text = table.str();
    out << text;
    if (!o.out.empty()) write_file_atomic(std::filesystem::path(o.out) / file, text);
}

AcceptanceConfig acceptance_config(const Options& o) {
    AcceptanceConfig cfg;
    cfg.sigma = o.sigma;
    cfg.seed = o.seed;
    if (!o.out.empty()) cfg.out_dir = o.out;
    for (const auto& entry : o.tol) {
        const auto eq = entry.find('=');
        if (eq == std::string::npos) throw ConfigError("--tol expects name=value, got '" + entry + "'");
        double value = 0.0;
        try {
            std::size_t used = 0;
            value = std::stod(entry.substr(eq + 1), &used);
            if (used != entry.size() - eq - 1) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw ConfigError("--tol value is not a number: '" + entry + "'");
        }
        cfg.tol.set(entry.substr(0, eq), value);
    }
    return cfg;
}

std::vector<std::string> metadata(const Options& o, const std::string& command) {
    std::ostringstream seed;
    seed << "seed=0x" << std::hex << o.seed;
    return {std::string("kravchuk ") + library_version(), seed.str(), "command=" + command + " " + o.echo};
}

void print_report(std::ostream& out, const AcceptanceReport& report) {
    for (const auto& c : report.criteria) {
        out << (c.passed ? "PASS" : "FAIL") << " [" << c.id << "] " << c.name << ": " << c.detail << '\n';
    }
    out << (report.all_passed() ? "all criteria passed" : "acceptance FAILED") << '\n';
}

int cmd_basis(const Options& o, std::ostream& out) {
    const Grid grid(single_N(o, 8));
    const auto basis = make_basis(grid);
    if (!o.n) {
        std::ostringstream s;
        write_basis_csv(s, basis);
        out << s.str();
        if (!o.out.empty()) {
            write_file_atomic(std::filesystem::path(o.out) / ("basis_N" + std::to_string(grid.N()) + ".csv"), s.str());
        }
        return kExitOk;
    }
    const auto phi = phi_h(basis, *o.n);
    CsvTable t;
    t.metadata = metadata(o, "basis");
    t.metadata.push_back("N=" + std::to_string(grid.N()) + " n=" + std::to_string(*o.n));
    t.header = {"k", "a", "phi_h"};
    for (int k = 0; k <= grid.N(); ++k) {
        t.add_row({std::to_string(k), format_double(grid.tau(k)), format_double(phi[static_cast<std::size_t>(k)].real())});
    }
    emit(out, o, "basis_N" + std::to_string(grid.N()) + "_n" + std::to_string(*o.n) + ".csv", t);
    return kExitOk;
}

int cmd_rho(const Options& o, std::ostream& out) {
    const auto sweep = sweep_rho_convergence(or_default(o.N, {50, 100, 200, 400, 800}), o.sigma);
    emit(out, o, "rho.csv", sweep_csv(sweep, metadata(o, "rho")));
    return kExitOk;
}

int cmd_phi(const Options& o, std::ostream& out) {
    std::vector<int> modes = o.modes;
    if (o.n) modes.push_back(*o.n);
    if (modes.empty()) modes = {10};
    std::sort(modes.begin(), modes.end());
    modes.erase(std::unique(modes.begin(), modes.end()), modes.end());
    const auto sweeps = sweep_phi_convergence(or_default(o.N, {100, 200, 400, 800}), modes, o.sigma);
    emit(out, o, "phi.csv", sweep_family_csv(sweeps, metadata(o, "phi")));
    return kExitOk;
}

int cmd_consistency(const Options& o, std::ostream& out) {
    const auto sweep = sweep_operator_consistency(find_test_function(o.f), or_default(o.N, {64, 128, 256, 512}));
    emit(out, o, "consistency.csv", sweep_csv(sweep, metadata(o, "consistency")));
    return kExitOk;
}

int cmd_transform(const Options& o, std::ostream& out) {
    const auto Ns = or_default(o.N, {128});
    for (int N : Ns) {
        const Grid grid(N);
        const auto basis = make_basis(grid);
        const Eigen::MatrixXcd Ld = build_L_direct(basis).cast<Complex>();
        const auto Lf = build_L_factored(grid);
        out << "N=" << N << " unitarity_factored=" << format_double(unitarity_residual(Lf))
            << " unitarity_direct=" << format_double(unitarity_residual(build_L_direct(basis)))
            << " direct_vs_factored_max=" << format_double((Ld - Lf).cwiseAbs().maxCoeff())
            << " identity=" << format_double(transform_identity_residual(basis)) << '\n';
        if (!o.out.empty()) {
            std::ostringstream s;
            write_matrix_csv(s, Lf);
            write_file_atomic(std::filesystem::path(o.out) / ("transform_N" + std::to_string(N) + ".csv"), s.str());
        }
    }
    return kExitOk;
}

int cmd_evolve(const Options& o, std::ostream& out) {
    const Grid grid(single_N(o, 100));
    const auto basis = make_basis(grid);
    const int n_max = o.n_max ? *o.n_max : default_n_max(grid);
    if (n_max < 0 || n_max > grid.N()) throw ConfigError("--n-max must lie in 0..N");
    const std::vector<double> times = o.t.empty() ? std::vector<double>{0.0, 1.0, 10.0, 100.0} : o.t;
    const auto table = evolve_and_compare(find_test_function(o.f), basis, n_max, times);
    CsvTable t;
    t.metadata = metadata(o, "evolve");
    t.metadata.push_back("function=" + table.function_name + " N=" + std::to_string(table.N) +
                         " n_max=" + std::to_string(table.n_max) + " n_ref=" + std::to_string(table.n_ref) +
                         " uniform_bound=" + format_double(table.bound));
    t.header = {"t", "error_l2", "mass", "energy"};
    for (const auto& row : table.rows) {
        t.add_row({format_double(row.t), format_double(row.error), format_double(row.mass), format_double(row.energy)});
    }
    emit(out, o, "evolve.csv", t);
    return kExitOk;
}

int cmd_check(const Options& o, std::ostream& out) {
    const auto report = run_identity_suite(acceptance_config(o));
    print_report(out, report);
    return report.all_passed() ? kExitOk : kExitFailure;
}

int cmd_all(const Options& o, std::ostream& out) {
    Options with_out = o;
    if (with_out.out.empty()) with_out.out = "results";
    const auto report = run_all(acceptance_config(with_out));
    print_report(out, report);
    out << "results written to " << with_out.out << '\n';
    return report.all_passed() ? kExitOk : kExitFailure;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Kravchuk discretization of the quantum harmonic oscillator: library checks and experiments",
                 "kravchuk"};
    app.set_version_flag("--version", std::string(library_version()));
    app.set_config("--config", "", "Read options from a key=value file; command-line flags take precedence");
    app.require_subcommand(1, 1);

    Options o;
    app.add_option("--N", o.N, "Grid size(s), even >= 2; comma-separated list for sweeps")->delimiter(',');
    app.add_option("--n", o.n, "Mode index")->check(CLI::NonNegativeNumber);
    app.add_option("--n-max", o.n_max, "Spectral truncation for evolve (default floor(|log h|/3) in [4, N])")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--modes", o.modes, "Mode indices for phi, comma-separated (default 10)")
        ->delimiter(',')
        ->check(CLI::NonNegativeNumber);
    app.add_option("--sigma", o.sigma, "Weight exponent of <a>^sigma in error norms")
        ->check(CLI::IsMember({0.0, 1.0, 2.0}))
        ->capture_default_str();
    app.add_option("--t", o.t, "Times for evolve, comma-separated (default 0,1,10,100)")->delimiter(',');
    app.add_option("--out", o.out, "Output directory for CSV files (all: default ./results)");
    app.add_option("--f", o.f, "Test function name for consistency/evolve")->capture_default_str();
    app.add_option("--tol", o.tol, "Tolerance override name=value, repeatable (check/all)");
    app.add_option("--seed", o.seed, "Seed for randomized identity tests")->capture_default_str();

    struct Command {
        const char* name;
        const char* help;
        int (*fn)(const Options&, std::ostream&);
    };
    const Command commands[] = {
        {"basis", "Dump the phi matrix (no --n) or phi_{n,h} on the grid", cmd_basis},
        {"rho", "Binomial to Gaussian convergence sweep", cmd_rho},
        {"phi", "Kravchuk to Hermite convergence sweep", cmd_phi},
        {"consistency", "Operator consistency sweep pi_h(Hg) - H_h(pi_h g)", cmd_consistency},
        {"transform", "Build the transform both ways; print unitarity and factorization residuals", cmd_transform},
        {"evolve", "Compare discrete and continuous evolution of a test function", cmd_evolve},
        {"check", "Identity checks: spectrum, orthonormality, ladder, transform, oracles", cmd_check},
        {"all", "Full acceptance suite with CSV output", cmd_all},
    };
    std::vector<CLI::App*> subs;
    for (const auto& c : commands) subs.push_back(app.add_subcommand(c.name, c.help)->fallthrough());

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::CallForVersion&) {
        out << library_version() << '\n';
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kExitUsage;
    }

    o.echo = app.config_to_str(false, false);
    std::replace(o.echo.begin(), o.echo.end(), '\n', ' ');
    while (!o.echo.empty() && o.echo.back() == ' ') o.echo.pop_back();

    for (std::size_t i = 0; i < subs.size(); ++i) {
        if (!subs[i]->parsed()) continue;
        try {
            return commands[i].fn(o, out);
        } catch (const ConfigError& e) {
            err << "error: " << e.what() << "\n\n" << app.help();
            return kExitUsage;
        } catch (const IndexError& e) {
            err << "error: " << e.what() << "\n\n" << app.help();
            return kExitUsage;
        } catch (const std::exception& e) {
            err << "error: " << e.what() << '\n';
            return kExitFailure;
        }
    }
    return kExitUsage;
}

}  // namespace kravchuk::cli
