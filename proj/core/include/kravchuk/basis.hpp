#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "kravchuk/grid.hpp"

namespace kravchuk {

/// Symmetric binomial law Pi(k) = 2^-N C(N, k) on X_N = {0..N}.
struct BinomialWeight {
    Grid grid;
    std::vector<double> log_pi;
    std::vector<double> pi;

    /// Pi(k), zero outside 0..N.
    double operator()(long k) const noexcept;

    /// rho_h(a_k) = Pi(k) / h.
    double rho_h(int k) const;
};

BinomialWeight make_weight(const Grid& grid);

/// Natural log of C(N, k) via lgamma.
double log_binomial(int N, int k);

struct PolyValue {
    double value = 0.0;
    /// Set when n > N: the polynomial vanishes on X_N and only 0 is returned.
    bool beyond_degree = false;
};

/// K_n(k, N) from the three-term recurrence
/// (n+1) K_{n+1} = (k - N/2) K_n - ((N-n+1)/4) K_{n-1}, K_0 = 1.
/// Throws IndexError for negative n or k outside 0..N.
PolyValue kravchuk_poly(int n, int k, int N);

/// K_n(k, N) = 2^-n sum_j (-1)^(n-j) C(k, j) C(N-k, n-j), evaluated in long double.
/// Reference evaluation for N <= 64.
double kravchuk_poly_explicit(int n, int k, int N);

/// Scaled polynomial k_{n,h}(a) from
/// k_{n+1} = 2a k_n - 2n (1 - h^2 (n-1)/2) k_{n-1}, k_0 = 1.
double scaled_kravchuk_poly(int n, double a, double h);

/**
 * Orthonormal Kravchuk functions phi_n(k) = K_n(k) sqrt(Pi(k)) / d_n on X_N.
 *
 * Rows are indexed by mode n, columns by node k. The sign convention is
 * phi_n(N) > 0 (positive leading coefficient of K_n).
 */
class KravchukBasis {
public:
    const Grid& grid() const noexcept { return weight_.grid; }
    const BinomialWeight& weight() const noexcept { return weight_; }
    int N() const noexcept { return weight_.grid.N(); }

    double phi(int n, int k) const {
        return phi_[static_cast<std::size_t>(n) * stride_ + static_cast<std::size_t>(k)];
    }
    std::span<const double> row(int n) const;

    /// Row-major (N+1) x (N+1) storage, phi[n * (N+1) + k].
    std::span<const double> data() const noexcept { return phi_; }

    /// log d_n with d_n = 2^-n sqrt(C(N, n)) > 0.
    double log_d(int n) const;
    double d(int n) const;

    /// log alpha_{n,h}, alpha_{n,h} = h^-n sqrt((N-n)! / (N! n!)) > 0.
    double log_alpha(int n) const;
    double alpha(int n) const;

    /// max_{n,m} |sum_k phi_n(k) phi_m(k) - delta_nm|, with the worst pair.
    struct GramReport {
        double residual = 0.0;
        int worst_n = 0;
        int worst_m = 0;
    };
    GramReport gram_residual() const;

private:
    friend KravchukBasis make_basis(const Grid& grid);
    explicit KravchukBasis(BinomialWeight weight);

    BinomialWeight weight_;
    std::size_t stride_;
    std::vector<double> phi_;
};

/// Builds phi_0..phi_N. Throws ConstructionError if the Gram residual exceeds 1e-8.
KravchukBasis make_basis(const Grid& grid);

/// phi_{n,h}(a_k) = phi_n(k) / sqrt(h). Throws IndexError for n outside 0..N.
GridFunction phi_h(const KravchukBasis& basis, int n);

/// Writes the phi matrix as CSV: one line per mode n, columns k = 0..N, "%.17g".
void write_basis_csv(std::ostream& os, const KravchukBasis& basis);

// Difference calculus on sequences indexed 0..size-1, zero outside.

/// (Delta+ f)(k) = f(k+1) - f(k).
std::vector<double> forward_diff(std::span<const double> f);
/// (nabla f)(k) = f(k) - f(k-1).
std::vector<double> backward_diff(std::span<const double> f);

/// Right side of the discrete Rodrigues formula,
/// (-1)^n / (2^n n!) (Delta+)^n [Pi(k) prod_{j<n} (k - j)], for k = 0..N.
/// Reference evaluation for N <= 64; compare against K_n(k) Pi(k).
std::vector<double> rodrigues_oracle(int n, int N);

}  // namespace kravchuk
