#pragma once

// Reference implementations used only by tests. They share no code paths with
// the library beyond the Grid type.

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

/// phi_n(k) from the explicit binomial sum, long double.
long double phi_explicit(int n, int k, int N);

/// Dense (N+1)x(N+1) matrix of -H + 1 from the integer-form stencil.
Eigen::MatrixXd dense_hamiltonian_unscaled(int N);

/// Dense H_h built entry by entry from the a-form of the stencil.
Eigen::MatrixXd dense_hamiltonian_aform(int N);

/// exp(M) from Eigen's MatrixFunctions module.
Eigen::MatrixXcd expm(const Eigen::MatrixXcd& M);

/// Sorted eigenvalues from Eigen's dense self-adjoint solver.
Eigen::VectorXd dense_eigenvalues(const Eigen::MatrixXd& M);

/// Fixed-seed real vector with entries in [-1, 1].
std::vector<double> random_vector(std::size_t n, std::uint64_t seed);

/// Hermite function through the physicists' polynomial, long double, n <= 40.
long double psi_direct(int n, long double x);

}  // namespace oracle
