#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "kravchuk/basis.hpp"
#include "kravchuk/errors.hpp"
#include "kravchuk/grid.hpp"
#include "support/oracles.hpp"

using namespace kravchuk;
using doctest::Approx;

TEST_CASE("grid construction validates N") {
    CHECK_THROWS_AS(Grid(0), ConfigError);
    CHECK_THROWS_AS(Grid(3), ConfigError);
    CHECK_THROWS_AS(Grid(-4), ConfigError);
    CHECK_NOTHROW(Grid(2));
}

TEST_CASE("grid step and endpoints") {
    for (int N : {2, 4, 10, 50, 512, 4096}) {
        const Grid g(N);
        const double ulp = std::numeric_limits<double>::epsilon() * 2.0;
        CHECK(std::abs(g.h() * g.h() * N - 2.0) <= 4.0 * ulp);
        CHECK(g.tau(0) == Approx(-1.0 / g.h()).epsilon(1e-14));
        CHECK(g.tau(N) == Approx(1.0 / g.h()).epsilon(1e-14));
        CHECK(g.tau(N / 2) == 0.0);
        CHECK(g.size() == static_cast<std::size_t>(N) + 1);
    }
}

TEST_CASE("tau examples and errors") {
    CHECK(Grid(4).tau(2) == 0.0);
    CHECK(Grid(4).tau(0) == Approx(-std::sqrt(2.0)).epsilon(1e-15));
    CHECK(Grid(2).tau(2) == Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(Grid(4).tau(5), IndexError);
    CHECK_THROWS_AS(Grid(4).tau(-1), IndexError);
}

TEST_CASE("tau_inv round trip") {
    for (int N : {2, 4, 50, 800}) {
        const Grid g(N);
        for (int k = 0; k <= N; ++k) CHECK(g.tau_inv(g.tau(k)) == k);
    }
    const Grid g(4);
    CHECK(g.tau_inv(0.3) == 2);
    CHECK_THROWS_AS(g.tau_inv(-1.8), IndexError);
    CHECK_THROWS_AS(g.tau_inv(10.0), IndexError);
}

TEST_CASE("inner product examples") {
    const Grid g(4);
    GridFunction e(g);
    e[2] = 1.0;
    CHECK(inner(e, e).real() == Approx(g.h()).epsilon(1e-15));
    CHECK(norm_linf(e) == 1.0);
    CHECK(norm_l2(e) == Approx(std::sqrt(g.h())).epsilon(1e-15));

    const GridFunction zero(g);
    CHECK(std::abs(inner(zero, e)) == 0.0);
    CHECK(norm_l2(zero) == 0.0);
    CHECK(norm_linf(zero) == 0.0);
    CHECK(norm_h1(zero) == 0.0);

    const auto phi0 = phi_h(make_basis(Grid(50)), 0);
    CHECK(inner(phi0, phi0).real() == Approx(1.0).epsilon(1e-14));
    CHECK(norm_l2(phi0) == Approx(1.0).epsilon(1e-14));
}

TEST_CASE("inner product is conjugate symmetric and sesquilinear") {
    const Grid g(16);
    const auto a = oracle::random_vector(g.size(), 1), b = oracle::random_vector(g.size(), 2);
    const auto c = oracle::random_vector(g.size(), 3), d = oracle::random_vector(g.size(), 4);
    GridFunction u(g), v(g);
    for (std::size_t k = 0; k < g.size(); ++k) {
        u[k] = Complex(a[k], b[k]);
        v[k] = Complex(c[k], d[k]);
    }
    const Complex uv = inner(u, v), vu = inner(v, u);
    CHECK(std::abs(uv - std::conj(vu)) < 1e-15);
    const Complex alpha(0.3, -1.2);
    CHECK(std::abs(inner(alpha * u, v) - alpha * uv) < 1e-14);
    CHECK(std::abs(inner(u, alpha * v) - std::conj(alpha) * uv) < 1e-14);
    CHECK(inner(u, u).imag() == Approx(0.0));
}

TEST_CASE("h1 norm uses zero-padded forward differences") {
    const Grid g(4);
    GridFunction e(g);
    e[2] = 1.0;
    // differences at k = 1 and k = 2 have magnitude 1/h.
    const double h = g.h();
    CHECK(norm_h1(e) == Approx(std::sqrt(h + 2.0 * h / (h * h))).epsilon(1e-14));
    GridFunction edge(g);
    edge[0] = 1.0;
    CHECK(norm_h1(edge) == Approx(std::sqrt(h + 2.0 * h / (h * h))).epsilon(1e-14));
}

TEST_CASE("weighted norms") {
    const Grid g(4);
    GridFunction one(g);
    for (std::size_t k = 0; k < g.size(); ++k) one[k] = 1.0;
    const auto w = weighted(one, 2.0);
    for (int k = 0; k <= 4; ++k) CHECK(w[static_cast<std::size_t>(k)].real() == Approx(1.0 + g.tau(k) * g.tau(k)));
    const auto w0 = weighted(one, 0.0);
    CHECK(norm_l2(w0 - one) == 0.0);
}

TEST_CASE("grid mismatch is a dimension error") {
    const GridFunction a(Grid(4)), b(Grid(6));
    CHECK_THROWS_AS(inner(a, b), DimensionError);
    GridFunction c(Grid(4));
    CHECK_THROWS_AS(c += b, DimensionError);
    CHECK_THROWS_AS(GridFunction(Grid(4), std::vector<Complex>(3)), DimensionError);
}

TEST_CASE("projection") {
    const Grid g(4);
    const auto x = project_real([](double a) { return a; }, g);
    const double s = std::sqrt(2.0);
    const double expected[] = {-s, -1.0 / s, 0.0, 1.0 / s, s};
    for (int k = 0; k <= 4; ++k) CHECK(x[static_cast<std::size_t>(k)].real() == Approx(expected[k]).epsilon(1e-14));

    CHECK(norm_linf(project_real([](double) { return 0.0; }, g)) == 0.0);

    const Grid g50(50);
    const auto p = project_real([](double a) { return std::exp(-a * a / 2) / std::pow(std::numbers::pi, 0.25); }, g50);
    for (int k = 0; k <= 50; ++k) {
        CHECK(p[static_cast<std::size_t>(k)].real() ==
              Approx(static_cast<double>(oracle::psi_direct(0, g50.tau(k)))).epsilon(1e-14));
    }

    try {
        project_real([](double a) { return a > 0.5 ? std::numeric_limits<double>::quiet_NaN() : 1.0; }, g);
        FAIL("expected EvaluationError");
    } catch (const EvaluationError& e) {
        CHECK(std::string(e.what()).find("k=3") != std::string::npos);
    }
}

TEST_CASE("projection is linear at the nodes") {
    const Grid g(32);
    auto f = [](double a) { return std::sin(a); };
    auto q = [](double a) { return a * a; };
    const auto lhs = project_real([&](double a) { return 2.0 * f(a) - 3.0 * q(a); }, g);
    const auto rhs = Complex(2.0) * project_real(f, g) - Complex(3.0) * project_real(q, g);
    CHECK(norm_linf(lhs - rhs) == 0.0);
}

TEST_CASE("padded access") {
    const Grid g(4);
    GridFunction u(g);
    u[0] = 2.0;
    CHECK(u.at_padded(-1) == Complex(0.0));
    CHECK(u.at_padded(5) == Complex(0.0));
    CHECK(u.at_padded(0) == Complex(2.0));
}
