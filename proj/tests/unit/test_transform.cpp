#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "kravchuk/basis.hpp"
#include "kravchuk/errors.hpp"
#include "kravchuk/hermite.hpp"
#include "kravchuk/transform.hpp"
#include "support/oracles.hpp"

using namespace kravchuk;
using doctest::Approx;
using std::numbers::pi;

namespace {

Eigen::MatrixXcd dense(const TridiagonalHermitian& A) { return A.dense().cast<Complex>(); }

}  // namespace

TEST_CASE("generator") {
    for (int N : {2, 9, 64}) {
        const auto A = make_transform_generator(N);
        CHECK(A.size() == static_cast<std::size_t>(N) + 1);
        for (double d : A.diag) CHECK(d == N + 1.0);
        for (int k = 1; k <= N; ++k) {
            CHECK(A.off[static_cast<std::size_t>(k - 1)] == Approx(-std::sqrt(k * (N - k + 1.0))));
            CHECK(A.off[static_cast<std::size_t>(k - 1)] == A.off[static_cast<std::size_t>(N - k)]);
        }
    }
    for (int N : {16, 256}) {
        const auto A = make_transform_generator(N);
        const auto b = make_basis(Grid(N));
        for (int n = 0; n <= N; ++n) {
            const auto row = b.row(n);
            const auto Av = A.apply(row);
            double r = 0.0;
            for (int k = 0; k <= N; ++k) r = std::max(r, std::abs(Av[static_cast<std::size_t>(k)] - (2.0 * n + 1) * row[static_cast<std::size_t>(k)]));
            CHECK(r <= 1e-10);
        }
    }
}

TEST_CASE("direct transform") {
    const auto L = build_L_direct(make_basis(Grid(2)));
    const double s = 1.0 / std::sqrt(2.0);
    const Eigen::Matrix3d ref{{0.5, s, 0.5}, {-s, 0.0, s}, {0.5, -s, 0.5}};
    CHECK((L - ref).cwiseAbs().maxCoeff() <= 1e-15);
    CHECK(unitarity_residual(Eigen::MatrixXd(L)) <= 1e-12);
    const auto L50 = build_L_direct(make_basis(Grid(50)));
    for (int k = 0; k <= 50; ++k) CHECK(L50(0, k) >= 0.0);
}

TEST_CASE("pade exponential against oracles") {
    const auto A = make_transform_generator(2);
    const auto I = expm_tridiagonal(A, Complex(0.0));
    CHECK((I - Eigen::MatrixXcd::Identity(3, 3)).cwiseAbs().maxCoeff() == 0.0);

    // frozen from 40-digit arithmetic
    const auto E = expm_tridiagonal(A, Complex(0.5));
    CHECK(E(0, 0).real() == Approx(5.6986483430199328075).epsilon(1e-14));
    CHECK(E(0, 1).real() == Approx(-3.724251050289512793).epsilon(1e-14));
    CHECK(E(0, 2).real() == Approx(1.2169592726818679849).epsilon(1e-14));
    CHECK(E(1, 1).real() == Approx(6.9156076157018007925).epsilon(1e-14));
    const auto U = expm_tridiagonal(A, Complex(0.0, -pi / 4));
    const double q = 0.353553390593273762;
    CHECK(std::abs(U(0, 0) - Complex(-q, -q)) <= 1e-15);
    CHECK(std::abs(U(0, 1) - Complex(0.5, -0.5)) <= 1e-15);
    CHECK(std::abs(U(1, 1)) <= 1e-15);

    for (int N : {8, 40, 128}) {
        const auto An = make_transform_generator(N);
        for (Complex scale : {Complex(0.0, -pi / 4), Complex(0.0, 1.3), Complex(-0.01, 0.0)}) {
            const auto mine = expm_tridiagonal(An, scale);
            const auto ref = oracle::expm(scale * dense(An));
            const double size = ref.cwiseAbs().maxCoeff();
            CHECK((mine - ref).cwiseAbs().maxCoeff() <= 1e-11 * std::max(1.0, size));
            const auto eig = expm_tridiagonal_eigen(An, scale);
            CHECK((mine - eig).cwiseAbs().maxCoeff() <= 1e-10 * std::max(1.0, size));
        }
    }
    CHECK_THROWS_AS(expm_tridiagonal(A, Complex(std::nan(""), 0.0)), NumericError);
}

TEST_CASE("exponential acts on eigenvectors by phases") {
    const int N = 16;
    const auto A = make_transform_generator(N);
    const auto b = make_basis(Grid(N));
    const Complex scale(0.0, -pi / 4);
    const auto U = expm_tridiagonal(A, scale);
    for (int n = 0; n <= N; ++n) {
        Eigen::VectorXcd v(N + 1);
        for (int k = 0; k <= N; ++k) v(k) = b.phi(n, k);
        CHECK((U * v - std::exp(scale * (2.0 * n + 1)) * v).norm() <= 1e-9);
    }
}

TEST_CASE("factored transform") {
    for (int N : {2, 16, 50, 64, 128}) {
        const Grid g(N);
        const auto Lf = build_L_factored(g);
        const Eigen::MatrixXcd Ld = build_L_direct(make_basis(g)).cast<Complex>();
        CHECK((Lf - Ld).cwiseAbs().maxCoeff() <= 1e-9);
        CHECK(std::abs(Lf(0, 0).imag()) <= 1e-12);
        CHECK(Lf(0, 0).real() > 0.0);
        CHECK(unitarity_residual(Lf) <= 1e-10);
    }
    // N = 2 through the printed form: e^{i 3pi/4} D U D^*.
    const auto U = expm_tridiagonal(make_transform_generator(2), Complex(0.0, -pi / 4));
    const auto D = phase_diagonal(2);
    const Eigen::MatrixXcd L = std::polar(1.0, 3 * pi / 4) * D.asDiagonal() * U * D.conjugate().asDiagonal();
    CHECK((L - build_L_direct(make_basis(Grid(2))).cast<Complex>()).cwiseAbs().maxCoeff() <= 1e-10);
    CHECK(phase_diagonal(5)(3) == Complex(0.0, -1.0));
}

TEST_CASE("K matrix and identity") {
    for (int N : {4, 16, 64}) {
        const auto b = make_basis(Grid(N));
        const auto K = build_K(b);
        CHECK(unitarity_residual(K) <= 1e-12);
        const auto ref = oracle::expm(Complex(0.0, -pi / 4) * dense(make_transform_generator(N)));
        CHECK((K - std::polar(1.0, pi / 4) * ref).cwiseAbs().maxCoeff() <= 1e-10);
        CHECK(transform_identity_residual(b) <= 1e-10);
    }
}

TEST_CASE("analysis and synthesis") {
    const Grid g(50);
    const auto b = make_basis(g);
    const auto c3 = analyze(b, phi_h(b, 3));
    for (int n = 0; n <= 50; ++n) CHECK(std::abs(c3.coeffs[static_cast<std::size_t>(n)] - Complex(n == 3 ? 1.0 : 0.0)) <= 1e-13);
    const auto zero = analyze(b, GridFunction(g));
    for (auto c : zero.coeffs) CHECK(c == Complex(0.0));

    // frozen from 40-digit arithmetic
    const auto psi0 = project_real([](double x) { return psi(0, x); }, g);
    const auto c = analyze(b, psi0);
    CHECK(c.coeffs[0].real() == Approx(0.99999111492625633357).epsilon(1e-13));
    CHECK(std::abs(c.coeffs[0] - 1.0) <= 0.05);

    // matrix routes agree with the inner-product route and round-trip
    const auto f = project_real([](double x) { return std::exp(-(x - 0.5) * (x - 0.5)) * (1 + x); }, g);
    const auto ref = analyze(b, f);
    for (auto mode : {KravchukTransform::Mode::direct, KravchukTransform::Mode::factored}) {
        const KravchukTransform T(b, mode);
        const auto s = T.analyze(f);
        for (int n = 0; n <= 50; ++n) CHECK(std::abs(s.coeffs[static_cast<std::size_t>(n)] - ref.coeffs[static_cast<std::size_t>(n)]) <= 1e-12);
        CHECK(norm_linf(T.synthesize(s) - f) <= 1e-12);
    }
    CHECK(norm_linf(synthesize(b, ref) - f) <= 1e-12);
    CHECK_THROWS_AS(analyze(Eigen::MatrixXcd::Identity(3, 3), f), DimensionError);
    CHECK_THROWS_AS(synthesize(b, SpectralState{g, std::vector<Complex>(60)}), IndexError);
}

TEST_CASE("matrix csv") {
    Eigen::MatrixXcd M(1, 2);
    M << Complex(1.0, -0.5), Complex(0.25, 0.0);
    std::ostringstream s;
    write_matrix_csv(s, M);
    CHECK(s.str() == "1,-0.5,0.25,0\n");
}
