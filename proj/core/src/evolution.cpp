#include "kravchuk/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "kravchuk/errors.hpp"
#include "kravchuk/transform.hpp"

namespace kravchuk {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kEnergyImagTolerance = 1e-12;

}  // namespace

SpectralState SpectralState::truncated(int n_max) const {
    if (n_max < 0 || n_max > this->n_max() || n_max > grid.N()) {
        throw IndexError("cannot truncate a state with " + std::to_string(coeffs.size()) + " modes to n_max=" +
                         std::to_string(n_max));
    }
    return SpectralState{grid, std::vector<Complex>(coeffs.begin(), coeffs.begin() + n_max + 1)};
}

SpectralState propagate(const SpectralState& state, double t) {
    // All eigenvalues are odd integers, so t can be reduced modulo 2 pi first.
    const double reduced = std::fmod(t, kTwoPi);
    SpectralState out = state;
    for (std::size_t n = 0; n < out.coeffs.size(); ++n) {
        const double lambda = SpectralState::lambda(static_cast<int>(n));
        const double angle = std::fmod(lambda * reduced, kTwoPi);
        out.coeffs[n] *= std::polar(1.0, -angle);
    }
    return out;
}

double mass(const GridFunction& u) {
    const double l2 = norm_l2(u);
    return l2 * l2;
}

double energy(const DiscreteHamiltonian& H, const GridFunction& u) {
    const Complex e = inner(u, apply_Hh(H, u));
    if (std::abs(e.imag()) > kEnergyImagTolerance * std::max(1.0, std::abs(e.real()))) {
        throw NumericError("energy has imaginary part " + std::to_string(e.imag()));
    }
    return e.real();
}

EnergyReport energy_report(const DiscreteHamiltonian& H, const GridFunction& u, double t) {
    return {t, mass(u), energy(H, u)};
}

GridFunction propagate_dense(const DiscreteHamiltonian& H, const GridFunction& u, double t) {
    require_same_grid(H.grid, u.grid(), "propagate_dense");
    const Eigen::MatrixXcd U = expm_tridiagonal(H.matrix, Complex(0.0, -t));
    const auto n = static_cast<Eigen::Index>(u.size());
    Eigen::VectorXcd x(n);
    for (Eigen::Index k = 0; k < n; ++k) x(k) = u[static_cast<std::size_t>(k)];
    const Eigen::VectorXcd y = U * x;
    return GridFunction(u.grid(), std::vector<Complex>(y.data(), y.data() + y.size()));
}

int default_n_max(const Grid& grid) {
    const int guess = static_cast<int>(std::floor(std::abs(std::log(grid.h())) / 3.0));
    return std::min(std::max(guess, 4), grid.N());
}

EvolutionTable evolve_and_compare(const TestFunction& f, const KravchukBasis& basis, int n_max,
                                  const std::vector<double>& times, const EvolutionOptions& options) {
    const Grid& grid = basis.grid();
    if (n_max < 0 || n_max > grid.N()) {
        throw IndexError("n_max=" + std::to_string(n_max) + " outside 0.." + std::to_string(grid.N()));
    }
    if (options.n_ref < 10) throw ConfigError("reference truncation n_ref must be at least 10");

    double scale = 1.0;
    if (options.normalize) {
        const auto rule = composite_gauss_legendre(-12.0, 12.0, 200, 10);
        double norm2 = 0.0;
        for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
            const double v = f.eval(rule.nodes[q]);
            norm2 += rule.weights[q] * v * v;
        }
        if (!(norm2 > 0.0)) throw NumericError("test function '" + f.name + "' has zero norm");
        scale = 1.0 / std::sqrt(norm2);
    }
    auto g = [&f, scale](double x) { return scale * f.eval(x); };

    const auto c = hermite_coefficients(g, options.n_ref);
    double tail = 0.0;
    for (int n = std::max(0, options.n_ref - 9); n <= options.n_ref; ++n) {
        tail = std::max(tail, std::abs(c[static_cast<std::size_t>(n)]));
    }
    if (tail > options.tail_tolerance) {
        throw NumericError("reference expansion of '" + f.name + "' not converged: |c_n| = " +
                           std::to_string(tail) + " near n_ref=" + std::to_string(options.n_ref));
    }

    // psi_n at every node, n = 0..n_ref.
    std::vector<std::vector<double>> psi_nodes(grid.size());
    for (int k = 0; k <= grid.N(); ++k) psi_nodes[static_cast<std::size_t>(k)] = psi_all(options.n_ref, grid.tau(k));

    const DiscreteHamiltonian H = make_hamiltonian(grid);
    const GridFunction u0 = project_real(g, grid);
    const SpectralState state0 = analyze(basis, u0).truncated(n_max);

    EvolutionTable table{f.name, grid.N(), n_max, options.n_ref, 0.0, {}};
    for (int n = 0; n <= options.n_ref; ++n) {
        const auto nn = static_cast<std::size_t>(n);
        GridFunction psi_n(grid);
        for (std::size_t k = 0; k < grid.size(); ++k) psi_n[k] = psi_nodes[k][nn];
        if (n > n_max) {
            table.bound += std::abs(c[nn]) * norm_l2(psi_n);
            continue;
        }
        const Complex c_h = state0.coeffs[nn];
        table.bound += std::abs(c[nn] - c_h) * norm_l2(psi_n);
        table.bound += std::abs(c_h) * norm_l2(psi_n - phi_h(basis, n));
    }
    table.rows.reserve(times.size());
    for (double t : times) {
        GridFunction exact(grid);
        const double reduced = std::fmod(t, kTwoPi);
        std::vector<Complex> phases(c.size());
        for (std::size_t n = 0; n < c.size(); ++n) {
            phases[n] = c[n] * std::polar(1.0, -std::fmod((2.0 * n + 1.0) * reduced, kTwoPi));
        }
        for (std::size_t k = 0; k < grid.size(); ++k) {
            Complex v{};
            for (std::size_t n = 0; n < c.size(); ++n) v += phases[n] * psi_nodes[k][n];
            exact[k] = v;
        }
        const GridFunction discrete = synthesize(basis, propagate(state0, t));
        const auto report = energy_report(H, discrete, t);
        table.rows.push_back({t, norm_l2(exact - discrete), report.mass, report.energy});
    }
    return table;
}

}  // namespace kravchuk
