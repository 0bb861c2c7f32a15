#pragma once

#include <span>
#include <vector>

#include "kravchuk/grid.hpp"
#include "kravchuk/tridiagonal.hpp"

namespace kravchuk {

// Unscaled operators on X_N = {0..N}; arguments have length N+1 and are zero outside.

/// Kravchuk oscillator
/// (Hf)(k) = sqrt((k+1)(N-k)) f(k+1) + sqrt(k(N-k+1)) f(k-1) - N f(k).
/// Eigenvalues -2n with eigenvectors phi_n.
std::vector<double> apply_H_unscaled(std::span<const double> f);

/// L_n f(k) = (k - N + n) f(k) + sqrt((N-k)(k+1)) f(k+1).
std::vector<double> apply_lowering_unscaled(int n, std::span<const double> f);

/// R_n f(k) = (k - N + n) f(k) + sqrt(k(N-k+1)) f(k-1).
std::vector<double> apply_raising_unscaled(int n, std::span<const double> f);

/**
 * Scaled Hamiltonian on hZ,
 *   H_h u(a) = -(1/h^2) sqrt((1+ah+h^2)(1-ah)) u(a+h)
 *              -(1/h^2) sqrt((1-ah+h^2)(1+ah)) u(a-h) + (1 + 2/h^2) u(a),
 * stored as a symmetric tridiagonal matrix over the nodes of A_h.
 */
struct DiscreteHamiltonian {
    Grid grid;
    SymmetricTridiagonal matrix;

    const std::vector<double>& diag() const noexcept { return matrix.diag; }
    const std::vector<double>& off() const noexcept { return matrix.off; }
};

DiscreteHamiltonian make_hamiltonian(const Grid& grid);

/// Throws DimensionError on grid mismatch.
GridFunction apply_Hh(const DiscreteHamiltonian& H, const GridFunction& u);

/// Plain second difference (u(a+h) + u(a-h) - 2u(a)) / h^2, zero-padded.
GridFunction discrete_laplacian(const GridFunction& u);

/**
 * Lowering and raising operators L_{n,h}, R_{n,h} for mode index n.
 * Both share the diagonal (nh - 1/h + a); L couples to u(a+h), R to u(a-h),
 * and R_{n,h} is the adjoint of L_{n,h} in l^2(hZ).
 */
struct LadderPair {
    Grid grid;
    int n;
    std::vector<double> diag;
    /// upper[k] multiplies u(a_{k+1}) in L_{n,h} u(a_k), k = 0..N-1.
    std::vector<double> upper;
    /// lower[k] multiplies u(a_{k-1}) in R_{n,h} u(a_k), stored for k = 1..N at index k-1.
    std::vector<double> lower;
};

/// Throws IndexError unless 0 <= n <= N.
LadderPair make_ladder(const Grid& grid, int n);

GridFunction apply_lowering(const LadderPair& pair, const GridFunction& u);
GridFunction apply_raising(const LadderPair& pair, const GridFunction& u);

/// Coefficient in L_{n,h} phi_{n,h} = sqrt(n(2 - n h^2 + h^2)) phi_{n-1,h}.
double lowering_coefficient(const Grid& grid, int n);
/// Coefficient in R_{n,h} phi_{n,h} = sqrt((2 - n h^2)(n+1)) phi_{n+1,h}.
double raising_coefficient(const Grid& grid, int n);

/// ||[ (R_{n-1,h} L_{n,h} + L_{n+1,h} R_{n,h}) / 2
///      - (1 - ah - nh^2) H_h - ((2n+1) ah + (n+1) n h^2) ] u||_{l^2},
/// where the a-dependent coefficients multiply pointwise after H_h is applied.
/// Requires 1 <= n <= N-1.
double factorization_residual(const DiscreteHamiltonian& H, int n, const GridFunction& u);

/// max_k |[R_{n-1} L_n - (k+n-1-N)(H + n) - nk] f|(k) for the unscaled operators.
double unscaled_lowering_factorization_residual(int n, std::span<const double> f);
/// max_k |[L_{n+1} R_n - (k+n+1-N)(H + n) - (nk + N)] f|(k) for the unscaled operators.
double unscaled_raising_factorization_residual(int n, std::span<const double> f);

}  // namespace kravchuk
