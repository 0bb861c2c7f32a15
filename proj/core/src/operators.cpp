#include "kravchuk/operators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kravchuk/errors.hpp"

namespace kravchuk {

namespace {

int grid_N(std::span<const double> f) {
    if (f.empty()) throw DimensionError("operator applied to an empty vector");
    return static_cast<int>(f.size()) - 1;
}

double sqrt_clamped(double x) { return std::sqrt(std::max(0.0, x)); }

// sqrt((k+1)(N-k)): coupling between nodes k and k+1 of the unscaled oscillator.
double coupling(int k, int N) { return std::sqrt(static_cast<double>(k + 1) * (N - k)); }

}  // namespace

std::vector<double> apply_H_unscaled(std::span<const double> f) {
    const int N = grid_N(f);
    std::vector<double> out(f.size());
    for (int k = 0; k <= N; ++k) {
        double v = -static_cast<double>(N) * f[static_cast<std::size_t>(k)];
        if (k < N) v += coupling(k, N) * f[static_cast<std::size_t>(k + 1)];
        if (k > 0) v += coupling(k - 1, N) * f[static_cast<std::size_t>(k - 1)];
        out[static_cast<std::size_t>(k)] = v;
    }
    return out;
}

std::vector<double> apply_lowering_unscaled(int n, std::span<const double> f) {
    const int N = grid_N(f);
    std::vector<double> out(f.size());
    for (int k = 0; k <= N; ++k) {
        double v = static_cast<double>(k - N + n) * f[static_cast<std::size_t>(k)];
        if (k < N) v += coupling(k, N) * f[static_cast<std::size_t>(k + 1)];
        out[static_cast<std::size_t>(k)] = v;
    }
    return out;
}

std::vector<double> apply_raising_unscaled(int n, std::span<const double> f) {
    const int N = grid_N(f);
    std::vector<double> out(f.size());
    for (int k = 0; k <= N; ++k) {
        double v = static_cast<double>(k - N + n) * f[static_cast<std::size_t>(k)];
        if (k > 0) v += coupling(k - 1, N) * f[static_cast<std::size_t>(k - 1)];
        out[static_cast<std::size_t>(k)] = v;
    }
    return out;
}

DiscreteHamiltonian make_hamiltonian(const Grid& grid) {
    const double h = grid.h();
    const double inv_h2 = 1.0 / (h * h);
    DiscreteHamiltonian H{grid, {std::vector<double>(grid.size(), 1.0 + 2.0 * inv_h2),
                                 std::vector<double>(static_cast<std::size_t>(grid.N()))}};
    for (int k = 0; k < grid.N(); ++k) {
        const double ah = grid.tau(k) * h;
        H.matrix.off[static_cast<std::size_t>(k)] = -inv_h2 * sqrt_clamped((1.0 + ah + h * h) * (1.0 - ah));
    }
    return H;
}

GridFunction apply_Hh(const DiscreteHamiltonian& H, const GridFunction& u) {
    require_same_grid(H.grid, u.grid(), "apply_Hh");
    return GridFunction(H.grid, H.matrix.apply(u.values()));
}

GridFunction discrete_laplacian(const GridFunction& u) {
    const double inv_h2 = 1.0 / (u.grid().h() * u.grid().h());
    GridFunction out(u.grid());
    for (long k = 0; k <= u.grid().N(); ++k) {
        out[static_cast<std::size_t>(k)] =
            (u.at_padded(k + 1) + u.at_padded(k - 1) - 2.0 * u.at_padded(k)) * inv_h2;
    }
    return out;
}

LadderPair make_ladder(const Grid& grid, int n) {
    const int N = grid.N();
    if (n < 0 || n > N) {
        throw IndexError("ladder mode " + std::to_string(n) + " outside 0.." + std::to_string(N));
    }
    const double h = grid.h();
    LadderPair pair{grid, n, std::vector<double>(grid.size()), std::vector<double>(static_cast<std::size_t>(N)),
                    std::vector<double>(static_cast<std::size_t>(N))};
    for (int k = 0; k <= N; ++k) {
        const double a = grid.tau(k);
        pair.diag[static_cast<std::size_t>(k)] = n * h - 1.0 / h + a;
        const double ah = a * h;
        if (k < N) pair.upper[static_cast<std::size_t>(k)] = sqrt_clamped((1.0 - ah) * (1.0 + ah + h * h)) / h;
        if (k > 0) pair.lower[static_cast<std::size_t>(k - 1)] = sqrt_clamped((1.0 + ah) * (1.0 - ah + h * h)) / h;
    }
    return pair;
}

GridFunction apply_lowering(const LadderPair& pair, const GridFunction& u) {
    require_same_grid(pair.grid, u.grid(), "apply_lowering");
    const int N = pair.grid.N();
    GridFunction out(pair.grid);
    for (int k = 0; k <= N; ++k) {
        const auto kk = static_cast<std::size_t>(k);
        Complex v = pair.diag[kk] * u[kk];
        if (k < N) v += pair.upper[kk] * u[kk + 1];
        out[kk] = v;
    }
    return out;
}

GridFunction apply_raising(const LadderPair& pair, const GridFunction& u) {
    require_same_grid(pair.grid, u.grid(), "apply_raising");
    const int N = pair.grid.N();
    GridFunction out(pair.grid);
    for (int k = 0; k <= N; ++k) {
        const auto kk = static_cast<std::size_t>(k);
        Complex v = pair.diag[kk] * u[kk];
        if (k > 0) v += pair.lower[kk - 1] * u[kk - 1];
        out[kk] = v;
    }
    return out;
}

double lowering_coefficient(const Grid& grid, int n) {
    const double h2 = grid.h() * grid.h();
    return sqrt_clamped(n * (2.0 - n * h2 + h2));
}

double raising_coefficient(const Grid& grid, int n) {
    const double h2 = grid.h() * grid.h();
    return sqrt_clamped((2.0 - n * h2) * (n + 1.0));
}

double factorization_residual(const DiscreteHamiltonian& H, int n, const GridFunction& u) {
    const Grid& grid = H.grid;
    require_same_grid(grid, u.grid(), "factorization_residual");
    if (n < 1 || n > grid.N() - 1) {
        throw IndexError("factorization needs 1 <= n <= N-1, got n=" + std::to_string(n));
    }
    const auto L_n = make_ladder(grid, n);
    const auto R_nm1 = make_ladder(grid, n - 1);
    const auto L_np1 = make_ladder(grid, n + 1);
    const auto R_n = make_ladder(grid, n);

    GridFunction lhs = apply_raising(R_nm1, apply_lowering(L_n, u)) + apply_lowering(L_np1, apply_raising(R_n, u));
    lhs *= 0.5;

    const GridFunction Hu = apply_Hh(H, u);
    const double h = grid.h();
    const double h2 = h * h;
    GridFunction rhs(grid);
    for (int k = 0; k <= grid.N(); ++k) {
        const auto kk = static_cast<std::size_t>(k);
        const double ah = grid.tau(k) * h;
        rhs[kk] = (1.0 - ah - n * h2) * Hu[kk] + ((2.0 * n + 1.0) * ah + (n + 1.0) * n * h2) * u[kk];
    }
    return norm_l2(lhs - rhs);
}

double unscaled_lowering_factorization_residual(int n, std::span<const double> f) {
    const int N = grid_N(f);
    const auto lhs = apply_raising_unscaled(n - 1, apply_lowering_unscaled(n, f));
    const auto Hf = apply_H_unscaled(f);
    double worst = 0.0;
    for (int k = 0; k <= N; ++k) {
        const auto kk = static_cast<std::size_t>(k);
        const double rhs = (k + n - 1.0 - N) * (Hf[kk] + n * f[kk]) + static_cast<double>(n) * k * f[kk];
        worst = std::max(worst, std::abs(lhs[kk] - rhs));
    }
    return worst;
}

double unscaled_raising_factorization_residual(int n, std::span<const double> f) {
    const int N = grid_N(f);
    const auto lhs = apply_lowering_unscaled(n + 1, apply_raising_unscaled(n, f));
    const auto Hf = apply_H_unscaled(f);
    double worst = 0.0;
    for (int k = 0; k <= N; ++k) {
        const auto kk = static_cast<std::size_t>(k);
        const double rhs =
            (k + n + 1.0 - N) * (Hf[kk] + n * f[kk]) + (static_cast<double>(n) * k + N) * f[kk];
        worst = std::max(worst, std::abs(lhs[kk] - rhs));
    }
    return worst;
}

}  // namespace kravchuk
