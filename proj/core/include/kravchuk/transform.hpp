#pragma once

#include <iosfwd>
#include <optional>

#include <Eigen/Dense>

#include "kravchuk/basis.hpp"
#include "kravchuk/grid.hpp"
#include "kravchuk/spectral_state.hpp"
#include "kravchuk/tridiagonal.hpp"

namespace kravchuk {

/// Generator of the Kravchuk transform: diagonal N+1, off-diagonal -beta_k with
/// beta_k = sqrt(k(N-k+1)), k = 1..N. Its eigenvalues are 1, 3, ..., 2N+1.
using TridiagonalHermitian = SymmetricTridiagonal;

TridiagonalHermitian make_transform_generator(int N);

/// L with L(n, k) = phi_n(k); real orthogonal.
Eigen::MatrixXd build_L_direct(const KravchukBasis& basis);

/// D = diag(1, e^{i pi/2}, ..., e^{i pi N/2}).
Eigen::VectorXcd phase_diagonal(int N);

/// exp(scale * A) by scaling and squaring with the degree-13 diagonal Pade approximant.
/// Throws NumericError on non-finite scale or result.
Eigen::MatrixXcd expm_tridiagonal(const TridiagonalHermitian& A, Complex scale);

/// exp(scale * A) = V exp(scale * Lambda) V^T from the tridiagonal eigendecomposition.
Eigen::MatrixXcd expm_tridiagonal_eigen(const TridiagonalHermitian& A, Complex scale);

/// e^{i pi (N+1)/4} D exp(-i pi/4 A) D^*. Throws ConstructionError if its unitarity
/// residual exceeds 1e-8.
Eigen::MatrixXcd build_L_factored(const Grid& grid);

/// K = e^{-i pi N/4} D^* L D.
Eigen::MatrixXcd build_K(const KravchukBasis& basis);

/// max_{ij} |(M^* M - I)_{ij}|.
double unitarity_residual(const Eigen::MatrixXcd& M);
double unitarity_residual(const Eigen::MatrixXd& M);

/// max_{n,m} |sum_k phi_k(n) phi_m(k) e^{i(k-m)pi/2} - phi_m(n) e^{i n pi/2} e^{-i pi N/4}|.
double transform_identity_residual(const KravchukBasis& basis);

/// c_{n,h} = <f, phi_{n,h}> = h sum_k phi_{n,h}(a_k) f(a_k), n = 0..N.
SpectralState analyze(const KravchukBasis& basis, const GridFunction& f);

/// The same coefficients through the transform matrix: c = L (sqrt(h) f(a_k)).
/// L must be (N+1) x (N+1) with rows phi_n (direct or factored).
SpectralState analyze(const Eigen::MatrixXcd& L, const GridFunction& f);

/// u = sum_n c_n phi_{n,h}. Throws IndexError if the state has more than N+1 modes.
GridFunction synthesize(const KravchukBasis& basis, const SpectralState& state);

/**
 * Kravchuk transform on one grid, built either from the basis rows (direct) or
 * from the tridiagonal exponential factorization (factored).
 */
class KravchukTransform {
public:
    enum class Mode { direct, factored };

    KravchukTransform(const KravchukBasis& basis, Mode mode);

    Mode mode() const noexcept { return mode_; }
    const Grid& grid() const noexcept { return grid_; }
    const Eigen::MatrixXcd& matrix() const noexcept { return L_; }

    SpectralState analyze(const GridFunction& f) const;
    GridFunction synthesize(const SpectralState& state) const;

private:
    Grid grid_;
    Mode mode_;
    Eigen::MatrixXcd L_;
};

/// CSV with one line per row: re_0,im_0,re_1,im_1,... ("%.17g").
void write_matrix_csv(std::ostream& os, const Eigen::MatrixXcd& M);

}  // namespace kravchuk
