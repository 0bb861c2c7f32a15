#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "kravchuk/grid.hpp"

namespace kravchuk {

/**
 * Real symmetric tridiagonal matrix stored as its diagonal (size n) and
 * off-diagonal (size n-1); off[k] couples rows k and k+1.
 */
struct SymmetricTridiagonal {
    std::vector<double> diag;
    std::vector<double> off;

    std::size_t size() const noexcept { return diag.size(); }

    /// y = T x, same length as diag.
    std::vector<Complex> apply(std::span<const Complex> x) const;
    std::vector<double> apply(std::span<const double> x) const;

    /// max column sum of |T|.
    double one_norm() const;

    Eigen::MatrixXd dense() const;
};

/// Result of a full symmetric tridiagonal eigendecomposition; eigenvalues ascending,
/// vectors(:, j) is the unit eigenvector for values[j].
struct TridiagonalEigen {
    std::vector<double> values;
    Eigen::MatrixXd vectors;
};

/// Eigenvalues by implicit QL with Wilkinson shifts, ascending.
std::vector<double> eigenvalues_ql(const SymmetricTridiagonal& t);

/// Eigenvalues and eigenvectors by implicit QL, ascending.
TridiagonalEigen eigen_decomposition(const SymmetricTridiagonal& t);

/// Number of eigenvalues strictly less than x (Sturm sequence count).
std::size_t sturm_count(const SymmetricTridiagonal& t, double x);

/// All eigenvalues by Sturm bisection, ascending, to absolute tolerance tol.
std::vector<double> eigenvalues_bisection(const SymmetricTridiagonal& t, double tol = 1e-12);

}  // namespace kravchuk
