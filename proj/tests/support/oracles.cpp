#include "support/oracles.hpp"

#include <cmath>
#include <numbers>

#include <unsupported/Eigen/MatrixFunctions>

namespace oracle {

namespace {

long double binom(int n, int k) {
    if (k < 0 || k > n) return 0.0L;
    long double r = 1.0L;
    for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
    return r;
}

}  // namespace

long double phi_explicit(int n, int k, int N) {
    long double K = 0.0L;
    for (int j = 0; j <= n; ++j) {
        const long double term = binom(k, j) * binom(N - k, n - j);
        K += ((n - j) % 2 == 0 ? term : -term);
    }
    K = std::ldexp(K, -n);
    const long double pi = std::ldexp(binom(N, k), -N);
    const long double d = std::ldexp(std::sqrt(binom(N, n)), -n);
    return K * std::sqrt(pi) / d;
}

Eigen::MatrixXd dense_hamiltonian_unscaled(int N) {
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(N + 1, N + 1);
    for (int k = 0; k <= N; ++k) {
        M(k, k) = N + 1.0;
        if (k < N) {
            const double c = std::sqrt((k + 1.0) * (N - k));
            M(k, k + 1) = -c;
            M(k + 1, k) = -c;
        }
    }
    return M;
}

Eigen::MatrixXd dense_hamiltonian_aform(int N) {
    const double h = std::sqrt(2.0 / N);
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(N + 1, N + 1);
    for (int k = 0; k <= N; ++k) {
        const double a = h * (k - N / 2);
        M(k, k) = 1.0 + 2.0 / (h * h);
        if (k < N) M(k, k + 1) = -std::sqrt(std::max(0.0, (1 + a * h + h * h) * (1 - a * h))) / (h * h);
        if (k > 0) M(k, k - 1) = -std::sqrt(std::max(0.0, (1 - a * h + h * h) * (1 + a * h))) / (h * h);
    }
    return M;
}

Eigen::MatrixXcd expm(const Eigen::MatrixXcd& M) { return M.exp(); }

Eigen::VectorXd dense_eigenvalues(const Eigen::MatrixXd& M) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(M, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

std::vector<double> random_vector(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::vector<double> v(n);
    for (auto& x : v) x = 2.0 * (static_cast<double>(gen() >> 11) * 0x1.0p-53) - 1.0;
    return v;
}

long double psi_direct(int n, long double x) {
    long double hm = 0.0L, h = 1.0L;
    for (int j = 0; j < n; ++j) {
        const long double next = 2.0L * x * h - 2.0L * j * hm;
        hm = h;
        h = next;
    }
    long double fact = 1.0L;
    for (int j = 2; j <= n; ++j) fact *= j;
    const long double norm = std::sqrt(std::sqrt(std::numbers::pi_v<long double>) * std::ldexp(1.0L, n) * fact);
    return h * std::exp(-x * x / 2.0L) / norm;
}

}  // namespace oracle
