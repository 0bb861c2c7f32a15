#include "kravchuk/hermite.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "kravchuk/errors.hpp"

namespace kravchuk {

namespace {

constexpr int kMaxExplicitHermite = 30;
constexpr double kQuadLo = -12.0;
constexpr double kQuadHi = 12.0;
constexpr int kQuadPanels = 200;
constexpr int kQuadOrder = 10;

const double kPiQuarter = std::pow(std::numbers::pi, -0.25);

std::vector<TestFunction> build_registry() {
    std::vector<TestFunction> r;
    r.push_back({"gaussian", [](double x) { return std::exp(-0.5 * x * x); },
                 // g'' = (x^2 - 1) g, so -g'' + x^2 g = g.
                 [](double x) { return std::exp(-0.5 * x * x); }, "Schwartz"});
    for (int n = 0; n <= 5; ++n) {
        r.push_back({"psi" + std::to_string(n), [n](double x) { return psi(n, x); },
                     [n](double x) { return (2.0 * n + 1.0) * psi(n, x); }, "Schwartz (eigenfunction)"});
    }
    r.push_back({"shifted_gaussian",
                 [](double x) { return std::exp(-0.5 * (x - 1.0) * (x - 1.0)); },
                 // g'' = ((x-1)^2 - 1) g, so H g = (1 - (x-1)^2 + x^2) g = 2x g.
                 [](double x) { return 2.0 * x * std::exp(-0.5 * (x - 1.0) * (x - 1.0)); }, "Schwartz"});
    r.push_back({"odd_bump", [](double x) { return x * std::exp(-x * x); },
                 // g'' = (4x^3 - 6x) e^{-x^2}.
                 [](double x) { return (6.0 * x - 3.0 * x * x * x) * std::exp(-x * x); }, "Schwartz"});
    return r;
}

}  // namespace

double psi(int n, double x) {
    if (n < 0) throw IndexError("negative Hermite index " + std::to_string(n));
    double prev = 0.0;
    double cur = kPiQuarter * std::exp(-0.5 * x * x);
    for (int j = 0; j < n; ++j) {
        const double next = std::sqrt(2.0 / (j + 1.0)) * x * cur - std::sqrt(j / (j + 1.0)) * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

std::vector<double> psi_all(int max_n, double x) {
    if (max_n < 0) throw IndexError("negative Hermite index " + std::to_string(max_n));
    std::vector<double> out(static_cast<std::size_t>(max_n) + 1);
    out[0] = kPiQuarter * std::exp(-0.5 * x * x);
    if (max_n >= 1) out[1] = std::sqrt(2.0) * x * out[0];
    for (int j = 1; j < max_n; ++j) {
        out[static_cast<std::size_t>(j + 1)] = std::sqrt(2.0 / (j + 1.0)) * x * out[static_cast<std::size_t>(j)] -
                                               std::sqrt(j / (j + 1.0)) * out[static_cast<std::size_t>(j - 1)];
    }
    return out;
}

double hermite_poly(int n, double x) {
    if (n < 0 || n > kMaxExplicitHermite) {
        throw IndexError("explicit Hermite polynomial supports 0 <= n <= 30, got " + std::to_string(n));
    }
    double prev = 0.0;
    double cur = 1.0;
    for (int j = 0; j < n; ++j) {
        const double next = 2.0 * x * cur - 2.0 * j * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

const std::vector<TestFunction>& registry() {
    static const std::vector<TestFunction> r = build_registry();
    return r;
}

const TestFunction& find_test_function(const std::string& name) {
    const auto& r = registry();
    auto it = std::find_if(r.begin(), r.end(), [&name](const TestFunction& g) { return g.name == name; });
    if (it == r.end()) {
        std::string known;
        for (const auto& g : r) known += (known.empty() ? "" : ", ") + g.name;
        throw ConfigError("unknown test function '" + name + "' (known: " + known + ")");
    }
    return *it;
}

double finite_difference_check(const TestFunction& g, double step) {
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        const double x = -4.0 + 8.0 * i / 19.0;
        const double second = (g.eval(x + step) - 2.0 * g.eval(x) + g.eval(x - step)) / (step * step);
        const double fd = -second + x * x * g.eval(x);
        worst = std::max(worst, std::abs(fd - g.apply_H(x)));
    }
    return worst;
}

QuadratureRule gauss_legendre(int order) {
    if (order < 1) throw ConfigError("Gauss-Legendre order must be positive");
    QuadratureRule rule{std::vector<double>(static_cast<std::size_t>(order)),
                        std::vector<double>(static_cast<std::size_t>(order))};
    for (int i = 0; i < order; ++i) {
        // Chebyshev-like initial guess, then Newton on P_order.
        double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
        double dp = 1.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (int j = 2; j <= order; ++j) {
                const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            const double p = (order == 1) ? x : p1;
            const double pm1 = (order == 1) ? 1.0 : p0;
            dp = order * (x * p - pm1) / (x * x - 1.0);
            const double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        // Guesses run from +1 down; store ascending.
        const auto slot = static_cast<std::size_t>(order - 1 - i);
        rule.nodes[slot] = x;
        rule.weights[slot] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return rule;
}

QuadratureRule composite_gauss_legendre(double lo, double hi, int panels, int order) {
    const auto base = gauss_legendre(order);
    QuadratureRule rule;
    rule.nodes.reserve(static_cast<std::size_t>(panels * order));
    rule.weights.reserve(static_cast<std::size_t>(panels * order));
    const double width = (hi - lo) / panels;
    for (int p = 0; p < panels; ++p) {
        const double mid = lo + (p + 0.5) * width;
        for (std::size_t i = 0; i < base.nodes.size(); ++i) {
            rule.nodes.push_back(mid + 0.5 * width * base.nodes[i]);
            rule.weights.push_back(0.5 * width * base.weights[i]);
        }
    }
    return rule;
}

std::vector<double> hermite_coefficients(const std::function<double(double)>& f, int max_n) {
    static const QuadratureRule rule = composite_gauss_legendre(kQuadLo, kQuadHi, kQuadPanels, kQuadOrder);
    std::vector<double> c(static_cast<std::size_t>(max_n) + 1, 0.0);
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
        const double x = rule.nodes[q];
        const double fw = f(x) * rule.weights[q];
        if (fw == 0.0) continue;
        const auto values = psi_all(max_n, x);
        for (std::size_t n = 0; n < c.size(); ++n) c[n] += fw * values[n];
    }
    return c;
}

double hermite_series(const std::vector<double>& coeffs, double x) {
    if (coeffs.empty()) return 0.0;
    const auto values = psi_all(static_cast<int>(coeffs.size()) - 1, x);
    double s = 0.0;
    for (std::size_t n = 0; n < coeffs.size(); ++n) s += coeffs[n] * values[n];
    return s;
}

}  // namespace kravchuk
