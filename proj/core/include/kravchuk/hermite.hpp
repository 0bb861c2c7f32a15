#pragma once

#include <functional>
#include <string>
#include <vector>

namespace kravchuk {

/// Normalized Hermite function psi_n(x) = e^{-x^2/2} H_n(x) / (pi^{1/4} 2^{n/2} sqrt(n!)),
/// evaluated by psi_{n+1} = sqrt(2/(n+1)) x psi_n - sqrt(n/(n+1)) psi_{n-1}.
double psi(int n, double x);

/// psi_0(x) .. psi_{max_n}(x) in one recurrence pass.
std::vector<double> psi_all(int max_n, double x);

/// Physicists' Hermite polynomial H_n(x), H_{n+1} = 2x H_n - 2n H_{n-1}.
/// Only for n <= 30; larger n throws IndexError.
double hermite_poly(int n, double x);

/// A smooth, rapidly decaying function g together with the analytic H g = -g'' + x^2 g.
struct TestFunction {
    std::string name;
    std::function<double(double)> eval;
    std::function<double(double)> apply_H;
    std::string smoothness;
};

/// Registered test inputs: gaussian, psi0..psi5, shifted_gaussian, odd_bump.
const std::vector<TestFunction>& registry();

/// Throws ConfigError for unknown names.
const TestFunction& find_test_function(const std::string& name);

/// max over 20 points in [-4, 4] of |apply_H(x) - (-(g(x+d) - 2g(x) + g(x-d))/d^2 + x^2 g(x))|.
double finite_difference_check(const TestFunction& g, double step = 1e-4);

/// Gauss-Legendre nodes (ascending) and weights on [-1, 1].
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
QuadratureRule gauss_legendre(int order);

/// Composite Gauss-Legendre rule on [lo, hi]: `panels` panels of `order` points each.
QuadratureRule composite_gauss_legendre(double lo, double hi, int panels, int order);

/// c_n = int f psi_n dx for n = 0..max_n by composite Gauss-Legendre on [-12, 12]
/// (200 panels x 10 points).
std::vector<double> hermite_coefficients(const std::function<double(double)>& f, int max_n);

/// sum_n c_n psi_n(x).
double hermite_series(const std::vector<double>& coeffs, double x);

}  // namespace kravchuk
