#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace kravchuk {

using Complex = std::complex<double>;

/**
 * Uniform grid hZ restricted to A_h = hZ ∩ [-1/h, 1/h].
 *
 * N is the (even) number of intervals, so the grid has N+1 nodes
 * a_k = h (k - N/2), k = 0..N, with h = sqrt(2/N). The step is computed once
 * and every downstream formula reads it from here.
 */
class Grid {
public:
    /// Throws ConfigError unless N is even and N >= 2.
    explicit Grid(int N);

    int N() const noexcept { return N_; }
    double h() const noexcept { return h_; }
    std::size_t size() const noexcept { return static_cast<std::size_t>(N_) + 1; }

    /// a_k = h (k - N/2). Throws IndexError for k outside 0..N.
    double tau(int k) const;

    /// Inverse of tau: nearest node index for coordinate a. Throws IndexError
    /// when a is not within half a step of a node of A_h.
    int tau_inv(double a) const;

    std::vector<double> nodes() const;

    friend bool operator==(const Grid& lhs, const Grid& rhs) noexcept { return lhs.N_ == rhs.N_; }

private:
    int N_;
    double h_;
};

/// Complex samples indexed by grid nodes; implicitly zero outside A_h.
class GridFunction {
public:
    explicit GridFunction(Grid grid);
    GridFunction(Grid grid, std::vector<Complex> values);
    GridFunction(Grid grid, std::span<const double> real_values);

    const Grid& grid() const noexcept { return grid_; }
    std::size_t size() const noexcept { return values_.size(); }

    Complex operator[](std::size_t k) const { return values_[k]; }
    Complex& operator[](std::size_t k) { return values_[k]; }

    /// Value at an arbitrary integer index; zero outside 0..N.
    Complex at_padded(long k) const noexcept;

    std::span<const Complex> values() const noexcept { return values_; }
    std::span<Complex> values() noexcept { return values_; }

    std::vector<double> real_part() const;

    GridFunction& operator+=(const GridFunction& other);
    GridFunction& operator-=(const GridFunction& other);
    GridFunction& operator*=(Complex s);

    friend GridFunction operator+(GridFunction lhs, const GridFunction& rhs) { return lhs += rhs; }
    friend GridFunction operator-(GridFunction lhs, const GridFunction& rhs) { return lhs -= rhs; }
    friend GridFunction operator*(Complex s, GridFunction u) { return u *= s; }

private:
    Grid grid_;
    std::vector<Complex> values_;
};

/// Throws DimensionError if u and v live on different grids.
void require_same_grid(const Grid& a, const Grid& b, const char* what);

/// <u, v> = h sum_k u_k conj(v_k).
Complex inner(const GridFunction& u, const GridFunction& v);

double norm_l2(const GridFunction& u);
double norm_linf(const GridFunction& u);

/// sqrt(||u||^2 + ||D u||^2) with the forward difference D u(a) = (u(a+h) - u(a)) / h,
/// zero-padded outside A_h.
double norm_h1(const GridFunction& u);

/// Multiplies u by the weight <a>^sigma = (1 + a^2)^(sigma/2) at each node.
GridFunction weighted(const GridFunction& u, double sigma);

/// (pi_h f)(a_k) = f(a_k). Throws EvaluationError naming the node if f is not finite there.
GridFunction project(const std::function<Complex(double)>& f, const Grid& grid);
GridFunction project_real(const std::function<double(double)>& f, const Grid& grid);

}  // namespace kravchuk
