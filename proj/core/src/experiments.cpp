#include "kravchuk/experiments.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>

#include "kravchuk/basis.hpp"
#include "kravchuk/errors.hpp"
#include "kravchuk/operators.hpp"

namespace kravchuk {

namespace {

constexpr int kMinRhoN = 10;

SweepResult finish_sweep(SweepResult s) {
    std::vector<double> xs(s.N.begin(), s.N.end());
    std::vector<double> l2, linf, h1;
    for (const auto& e : s.errors) {
        l2.push_back(e.l2);
        linf.push_back(e.linf);
        h1.push_back(e.h1);
    }
    if (xs.size() >= 2) {
        s.l2 = fit_loglog(xs, l2);
        s.linf = fit_loglog(xs, linf);
        s.h1 = fit_loglog(xs, h1);
    }
    return s;
}

double gaussian_density(double a) { return std::exp(-a * a) / std::sqrt(std::numbers::pi); }

}  // namespace

NormTriple error_norms(const GridFunction& e) { return {norm_l2(e), norm_linf(e), norm_h1(e)}; }

SlopeFit fit_loglog(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) throw ConfigError("log-log fit needs at least two (x, y) pairs");
    const auto n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::vector<double> lx(x.size()), ly(y.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw NumericError("log-log fit needs positive data");
        lx[i] = std::log(x[i]);
        ly[i] = std::log(y[i]);
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) throw NumericError("log-log fit with identical abscissae");
    SlopeFit fit;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    const double mean = sy / n;
    double ss_res = 0, ss_tot = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = ly[i] - (fit.intercept + fit.slope * lx[i]);
        ss_res += r * r;
        ss_tot += (ly[i] - mean) * (ly[i] - mean);
    }
    fit.r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    return fit;
}

void validate_N_list(const std::vector<int>& N_list, int min_N) {
    if (N_list.empty()) throw ConfigError("N list is empty");
    for (std::size_t i = 0; i < N_list.size(); ++i) {
        const int N = N_list[i];
        if (N < min_N || N % 2 != 0) {
            throw ConfigError("N list entries must be even and >= " + std::to_string(min_N) + ", got " +
                              std::to_string(N));
        }
        if (i > 0 && N <= N_list[i - 1]) throw ConfigError("N list must be strictly increasing");
    }
}

SweepResult sweep_rho_convergence(const std::vector<int>& N_list, double sigma) {
    validate_N_list(N_list, kMinRhoN);
    SweepResult s{"rho", -1, sigma, N_list, {}, {}, {}, {}};
    s.errors = parallel_map<NormTriple>(N_list.size(), [&](std::size_t i) {
        const Grid grid(N_list[i]);
        const auto w = make_weight(grid);
        GridFunction e(grid);
        for (int k = 0; k <= grid.N(); ++k) {
            e[static_cast<std::size_t>(k)] = w.rho_h(k) - gaussian_density(grid.tau(k));
        }
        return error_norms(weighted(e, sigma));
    });
    return finish_sweep(std::move(s));
}

std::vector<SweepResult> sweep_phi_convergence(const std::vector<int>& N_list, const std::vector<int>& modes,
                                               double sigma) {
    validate_N_list(N_list);
    if (modes.empty()) throw ConfigError("no modes requested");
    for (int n : modes) {
        if (n < 0 || n > N_list.front()) {
            throw ConfigError("mode " + std::to_string(n) + " exceeds the smallest N=" + std::to_string(N_list.front()));
        }
    }
    // per_N[i][j]: errors for N_list[i], modes[j].
    const auto per_N = parallel_map<std::vector<NormTriple>>(N_list.size(), [&](std::size_t i) {
        const Grid grid(N_list[i]);
        const auto basis = make_basis(grid);
        std::vector<NormTriple> row;
        for (int n : modes) {
            GridFunction e = phi_h(basis, n) - project_real([n](double x) { return psi(n, x); }, grid);
            row.push_back(error_norms(weighted(e, sigma)));
        }
        return row;
    });
    std::vector<SweepResult> out;
    for (std::size_t j = 0; j < modes.size(); ++j) {
        SweepResult s{"phi", modes[j], sigma, N_list, {}, {}, {}, {}};
        for (std::size_t i = 0; i < N_list.size(); ++i) s.errors.push_back(per_N[i][j]);
        out.push_back(finish_sweep(std::move(s)));
    }
    return out;
}

SweepResult sweep_operator_consistency(const TestFunction& g, const std::vector<int>& N_list, double amplitude) {
    validate_N_list(N_list);
    SweepResult s{"consistency:" + g.name, -1, 0.0, N_list, {}, {}, {}, {}};
    s.errors = parallel_map<NormTriple>(N_list.size(), [&](std::size_t i) {
        const Grid grid(N_list[i]);
        const auto H = make_hamiltonian(grid);
        const GridFunction Hg = project_real([&](double x) { return amplitude * g.apply_H(x); }, grid);
        const GridFunction HhG = apply_Hh(H, project_real([&](double x) { return amplitude * g.eval(x); }, grid));
        return error_norms(Hg - HhG);
    });
    return finish_sweep(std::move(s));
}

Profile rho_profile(int N) {
    const Grid grid(N);
    const auto w = make_weight(grid);
    Profile p{N, grid.nodes(), {"rho_h", "gaussian"}, {{}, {}}};
    for (int k = 0; k <= N; ++k) {
        p.columns[0].push_back(w.rho_h(k));
        p.columns[1].push_back(gaussian_density(grid.tau(k)));
    }
    return p;
}

Profile phi_profiles(int N, int first, int last) {
    const Grid grid(N);
    if (first < 0 || last > N || first > last) throw ConfigError("invalid mode range for phi profiles");
    const auto basis = make_basis(grid);
    Profile p{N, grid.nodes(), {}, {}};
    for (int n = first; n <= last; ++n) {
        p.names.push_back("phi_" + std::to_string(n));
        p.names.push_back("psi_" + std::to_string(n));
        const auto phi = phi_h(basis, n).real_part();
        std::vector<double> ref;
        for (double a : p.a) ref.push_back(psi(n, a));
        p.columns.push_back(phi);
        p.columns.push_back(std::move(ref));
    }
    return p;
}

CsvTable sweep_csv(const SweepResult& sweep, const std::vector<std::string>& metadata) {
    CsvTable t;
    t.metadata = metadata;
    t.metadata.push_back("experiment=" + sweep.name + (sweep.mode >= 0 ? " mode=" + std::to_string(sweep.mode) : ""));
    t.metadata.push_back("sigma=" + format_double(sweep.sigma));
    t.header = {"N", "h", "err_l2", "err_linf", "err_h1"};
    for (std::size_t i = 0; i < sweep.N.size(); ++i) {
        const double h = std::sqrt(2.0 / sweep.N[i]);
        t.add_row({std::to_string(sweep.N[i]), format_double(h), format_double(sweep.errors[i].l2),
                   format_double(sweep.errors[i].linf), format_double(sweep.errors[i].h1)});
    }
    auto fit_line = [](const char* norm, const SlopeFit& f) {
        return std::string("slope_") + norm + "=" + format_double(f.slope) + " intercept=" + format_double(f.intercept) +
               " r2=" + format_double(f.r2);
    };
    t.footer = {fit_line("l2", sweep.l2), fit_line("linf", sweep.linf), fit_line("h1", sweep.h1)};
    return t;
}

CsvTable sweep_family_csv(const std::vector<SweepResult>& sweeps, const std::vector<std::string>& metadata) {
    CsvTable t;
    t.metadata = metadata;
    if (!sweeps.empty()) {
        t.metadata.push_back("experiment=" + sweeps.front().name);
        t.metadata.push_back("sigma=" + format_double(sweeps.front().sigma));
    }
    t.header = {"n", "N", "h", "err_l2", "err_linf", "err_h1"};
    for (const auto& s : sweeps) {
        for (std::size_t i = 0; i < s.N.size(); ++i) {
            t.add_row({std::to_string(s.mode), std::to_string(s.N[i]), format_double(std::sqrt(2.0 / s.N[i])),
                       format_double(s.errors[i].l2), format_double(s.errors[i].linf),
                       format_double(s.errors[i].h1)});
        }
        t.footer.push_back("n=" + std::to_string(s.mode) + " slope_l2=" + format_double(s.l2.slope) +
                           " slope_linf=" + format_double(s.linf.slope) + " slope_h1=" + format_double(s.h1.slope) +
                           " r2_l2=" + format_double(s.l2.r2));
    }
    return t;
}

CsvTable profile_csv(const Profile& profile, const std::vector<std::string>& metadata) {
    CsvTable t;
    t.metadata = metadata;
    t.metadata.push_back("N=" + std::to_string(profile.N));
    t.header = {"k", "a"};
    for (const auto& name : profile.names) t.header.push_back(name);
    for (std::size_t k = 0; k < profile.a.size(); ++k) {
        std::vector<std::string> row = {std::to_string(k), format_double(profile.a[k])};
        for (const auto& col : profile.columns) row.push_back(format_double(col[k]));
        t.add_row(std::move(row));
    }
    return t;
}

unsigned thread_count() {
    if (const char* env = std::getenv("KRAVCHUK_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

}  // namespace kravchuk
