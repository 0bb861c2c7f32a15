#include "kravchuk/transform.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <string>

#include "kravchuk/errors.hpp"

namespace kravchuk {

namespace {

using std::numbers::pi;

// Degree-13 diagonal Pade coefficients and the backward-error bound theta_13.
constexpr std::array<double, 14> kPade13 = {
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
    129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
    1323241920.0,        40840800.0,          960960.0,           16380.0,
    182.0,               1.0};
constexpr double kTheta13 = 5.371920351148152;
constexpr double kFactoredUnitarityTolerance = 1e-8;

Complex unit_phase(double angle) { return std::polar(1.0, angle); }

bool all_finite(const Eigen::MatrixXcd& M) {
    for (Eigen::Index j = 0; j < M.cols(); ++j) {
        for (Eigen::Index i = 0; i < M.rows(); ++i) {
            if (!std::isfinite(M(i, j).real()) || !std::isfinite(M(i, j).imag())) return false;
        }
    }
    return true;
}

}  // namespace

TridiagonalHermitian make_transform_generator(int N) {
    if (N < 1) throw ConfigError("transform generator needs N >= 1");
    TridiagonalHermitian A{std::vector<double>(static_cast<std::size_t>(N) + 1, N + 1.0),
                           std::vector<double>(static_cast<std::size_t>(N))};
    for (int k = 1; k <= N; ++k) {
        A.off[static_cast<std::size_t>(k - 1)] = -std::sqrt(static_cast<double>(k) * (N - k + 1));
    }
    return A;
}

Eigen::MatrixXd build_L_direct(const KravchukBasis& basis) {
    const auto n = static_cast<Eigen::Index>(basis.grid().size());
    Eigen::MatrixXd L(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index k = 0; k < n; ++k) L(i, k) = basis.phi(static_cast<int>(i), static_cast<int>(k));
    }
    return L;
}

Eigen::VectorXcd phase_diagonal(int N) {
    Eigen::VectorXcd d(N + 1);
    // e^{i pi k/2} cycles through 1, i, -1, -i; set exactly.
    constexpr std::array<Complex, 4> cycle = {Complex(1, 0), Complex(0, 1), Complex(-1, 0), Complex(0, -1)};
    for (int k = 0; k <= N; ++k) d(k) = cycle[static_cast<std::size_t>(k % 4)];
    return d;
}

Eigen::MatrixXcd expm_tridiagonal(const TridiagonalHermitian& A, Complex scale) {
    if (!std::isfinite(scale.real()) || !std::isfinite(scale.imag())) {
        throw NumericError("expm_tridiagonal: non-finite scale");
    }
    const auto n = static_cast<Eigen::Index>(A.size());
    const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(n, n);
    if (scale == Complex(0.0, 0.0)) return I;

    const double norm = std::abs(scale) * A.one_norm();
    int squarings = 0;
    if (norm > kTheta13) squarings = static_cast<int>(std::ceil(std::log2(norm / kTheta13)));

    const Complex s = scale / std::ldexp(1.0, squarings);
    Eigen::MatrixXcd X = s * A.dense().cast<Complex>();

    const Eigen::MatrixXcd X2 = X * X;
    const Eigen::MatrixXcd X4 = X2 * X2;
    const Eigen::MatrixXcd X6 = X4 * X2;
    const auto& b = kPade13;

    Eigen::MatrixXcd inner_u = b[13] * X6 + b[11] * X4 + b[9] * X2;
    Eigen::MatrixXcd U = X6 * inner_u;
    U += b[7] * X6 + b[5] * X4 + b[3] * X2 + b[1] * I;
    U = X * U;

    Eigen::MatrixXcd inner_v = b[12] * X6 + b[10] * X4 + b[8] * X2;
    Eigen::MatrixXcd V = X6 * inner_v;
    V += b[6] * X6 + b[4] * X4 + b[2] * X2 + b[0] * I;

    Eigen::MatrixXcd R = (V - U).partialPivLu().solve(V + U);
    for (int i = 0; i < squarings; ++i) R = R * R;

    if (!all_finite(R)) throw NumericError("expm_tridiagonal: non-finite result");
    return R;
}

Eigen::MatrixXcd expm_tridiagonal_eigen(const TridiagonalHermitian& A, Complex scale) {
    const auto eig = eigen_decomposition(A);
    const auto n = static_cast<Eigen::Index>(A.size());
    Eigen::VectorXcd phases(n);
    for (Eigen::Index j = 0; j < n; ++j) phases(j) = std::exp(scale * eig.values[static_cast<std::size_t>(j)]);
    const Eigen::MatrixXcd V = eig.vectors.cast<Complex>();
    return V * phases.asDiagonal() * V.transpose();
}

Eigen::MatrixXcd build_L_factored(const Grid& grid) {
    const int N = grid.N();
    const auto A = make_transform_generator(N);
    const Eigen::MatrixXcd E = expm_tridiagonal(A, Complex(0.0, -pi / 4.0));
    const Eigen::VectorXcd D = phase_diagonal(N);
    Eigen::MatrixXcd L = D.asDiagonal() * E * D.conjugate().asDiagonal();
    L *= unit_phase(pi * (N + 1) / 4.0);
    const double residual = unitarity_residual(L);
    if (residual > kFactoredUnitarityTolerance) {
        throw ConstructionError("factored Kravchuk transform unitarity residual " + std::to_string(residual));
    }
    return L;
}

Eigen::MatrixXcd build_K(const KravchukBasis& basis) {
    const int N = basis.N();
    const Eigen::VectorXcd D = phase_diagonal(N);
    Eigen::MatrixXcd K = D.conjugate().asDiagonal() * build_L_direct(basis).cast<Complex>() * D.asDiagonal();
    K *= unit_phase(-pi * N / 4.0);
    return K;
}

double unitarity_residual(const Eigen::MatrixXcd& M) {
    const Eigen::MatrixXcd G = M.adjoint() * M - Eigen::MatrixXcd::Identity(M.rows(), M.cols());
    return G.cwiseAbs().maxCoeff();
}

double unitarity_residual(const Eigen::MatrixXd& M) {
    const Eigen::MatrixXd G = M.transpose() * M - Eigen::MatrixXd::Identity(M.rows(), M.cols());
    return G.cwiseAbs().maxCoeff();
}

double transform_identity_residual(const KravchukBasis& basis) {
    const int N = basis.N();
    constexpr std::array<Complex, 4> cycle = {Complex(1, 0), Complex(0, 1), Complex(-1, 0), Complex(0, -1)};
    auto quarter_turns = [&cycle](long j) { return cycle[static_cast<std::size_t>(((j % 4) + 4) % 4)]; };
    const Complex global = unit_phase(-pi * N / 4.0);
    double worst = 0.0;
    for (int n = 0; n <= N; ++n) {
        for (int m = 0; m <= N; ++m) {
            Complex lhs{};
            for (int k = 0; k <= N; ++k) lhs += basis.phi(k, n) * basis.phi(m, k) * quarter_turns(k - m);
            const Complex rhs = basis.phi(m, n) * quarter_turns(n) * global;
            worst = std::max(worst, std::abs(lhs - rhs));
        }
    }
    return worst;
}

SpectralState analyze(const KravchukBasis& basis, const GridFunction& f) {
    require_same_grid(basis.grid(), f.grid(), "analyze");
    SpectralState state{basis.grid(), std::vector<Complex>(basis.grid().size())};
    for (int n = 0; n <= basis.N(); ++n) state.coeffs[static_cast<std::size_t>(n)] = inner(f, phi_h(basis, n));
    return state;
}

SpectralState analyze(const Eigen::MatrixXcd& L, const GridFunction& f) {
    const auto n = static_cast<Eigen::Index>(f.grid().size());
    if (L.rows() != n || L.cols() != n) {
        throw DimensionError("analyze: transform matrix is " + std::to_string(L.rows()) + "x" +
                             std::to_string(L.cols()) + ", grid has " + std::to_string(n) + " nodes");
    }
    const double sqrt_h = std::sqrt(f.grid().h());
    Eigen::VectorXcd F(n);
    for (Eigen::Index k = 0; k < n; ++k) F(k) = sqrt_h * f[static_cast<std::size_t>(k)];
    const Eigen::VectorXcd C = L * F;
    return SpectralState{f.grid(), std::vector<Complex>(C.data(), C.data() + C.size())};
}

GridFunction synthesize(const KravchukBasis& basis, const SpectralState& state) {
    require_same_grid(basis.grid(), state.grid, "synthesize");
    if (state.coeffs.size() > basis.grid().size()) {
        throw IndexError("state has " + std::to_string(state.coeffs.size()) + " modes, grid supports " +
                         std::to_string(basis.grid().size()));
    }
    const double inv_sqrt_h = 1.0 / std::sqrt(basis.grid().h());
    GridFunction u(basis.grid());
    for (std::size_t n = 0; n < state.coeffs.size(); ++n) {
        const Complex c = state.coeffs[n] * inv_sqrt_h;
        if (c == Complex{}) continue;
        const auto row = basis.row(static_cast<int>(n));
        for (std::size_t k = 0; k < row.size(); ++k) u[k] += c * row[k];
    }
    return u;
}

KravchukTransform::KravchukTransform(const KravchukBasis& basis, Mode mode)
    : grid_(basis.grid()),
      mode_(mode),
      L_(mode == Mode::direct ? Eigen::MatrixXcd(build_L_direct(basis).cast<Complex>())
                              : build_L_factored(basis.grid())) {}

SpectralState KravchukTransform::analyze(const GridFunction& f) const {
    require_same_grid(grid_, f.grid(), "KravchukTransform::analyze");
    return kravchuk::analyze(L_, f);
}

GridFunction KravchukTransform::synthesize(const SpectralState& state) const {
    require_same_grid(grid_, state.grid, "KravchukTransform::synthesize");
    const auto n = L_.rows();
    if (static_cast<Eigen::Index>(state.coeffs.size()) > n) {
        throw IndexError("state has more modes than the transform supports");
    }
    Eigen::VectorXcd C = Eigen::VectorXcd::Zero(n);
    for (std::size_t i = 0; i < state.coeffs.size(); ++i) C(static_cast<Eigen::Index>(i)) = state.coeffs[i];
    const Eigen::VectorXcd F = L_.adjoint() * C;
    const double inv_sqrt_h = 1.0 / std::sqrt(grid_.h());
    GridFunction u(grid_);
    for (Eigen::Index k = 0; k < n; ++k) u[static_cast<std::size_t>(k)] = F(k) * inv_sqrt_h;
    return u;
}

void write_matrix_csv(std::ostream& os, const Eigen::MatrixXcd& M) {
    char buf[64];
    for (Eigen::Index i = 0; i < M.rows(); ++i) {
        for (Eigen::Index j = 0; j < M.cols(); ++j) {
            std::snprintf(buf, sizeof buf, "%s%.17g,%.17g", j == 0 ? "" : ",", M(i, j).real(), M(i, j).imag());
            os << buf;
        }
        os << '\n';
    }
}

}  // namespace kravchuk
