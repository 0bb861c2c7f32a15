#include "kravchuk/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "kravchuk/errors.hpp"

namespace kravchuk {

Grid::Grid(int N) : N_(N), h_(0.0) {
    if (N < 2 || N % 2 != 0) {
        throw ConfigError("grid size N must be an even integer >= 2, got " + std::to_string(N));
    }
    h_ = std::sqrt(2.0 / static_cast<double>(N));
    const double residual = std::abs(h_ * h_ * N - 2.0);
    if (residual > 4.0 * std::numeric_limits<double>::epsilon() * 2.0) {
        throw ConstructionError("h^2 N deviates from 2 by " + std::to_string(residual));
    }
}

double Grid::tau(int k) const {
    if (k < 0 || k > N_) {
        throw IndexError("node index " + std::to_string(k) + " outside 0.." + std::to_string(N_));
    }
    return h_ * static_cast<double>(k - N_ / 2);
}

int Grid::tau_inv(double a) const {
    const double shifted = a / h_ + static_cast<double>(N_ / 2);
    const double k = std::round(shifted);
    if (!std::isfinite(shifted) || std::abs(shifted - k) > 0.5 || k < 0.0 || k > N_) {
        throw IndexError("coordinate " + std::to_string(a) + " is not a node of A_h");
    }
    return static_cast<int>(k);
}

std::vector<double> Grid::nodes() const {
    std::vector<double> a(size());
    for (int k = 0; k <= N_; ++k) a[static_cast<std::size_t>(k)] = tau(k);
    return a;
}

GridFunction::GridFunction(Grid grid) : grid_(grid), values_(grid.size()) {}

GridFunction::GridFunction(Grid grid, std::vector<Complex> values)
    : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.size()) {
        throw DimensionError("grid function needs " + std::to_string(grid_.size()) + " values, got " +
                             std::to_string(values_.size()));
    }
}

GridFunction::GridFunction(Grid grid, std::span<const double> real_values)
    : grid_(grid), values_(real_values.begin(), real_values.end()) {
    if (values_.size() != grid_.size()) {
        throw DimensionError("grid function needs " + std::to_string(grid_.size()) + " values, got " +
                             std::to_string(values_.size()));
    }
}

Complex GridFunction::at_padded(long k) const noexcept {
    if (k < 0 || k > grid_.N()) return {};
    return values_[static_cast<std::size_t>(k)];
}

std::vector<double> GridFunction::real_part() const {
    std::vector<double> out(values_.size());
    std::transform(values_.begin(), values_.end(), out.begin(), [](Complex z) { return z.real(); });
    return out;
}

GridFunction& GridFunction::operator+=(const GridFunction& other) {
    require_same_grid(grid_, other.grid_, "operator+=");
    for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += other.values_[k];
    return *this;
}

GridFunction& GridFunction::operator-=(const GridFunction& other) {
    require_same_grid(grid_, other.grid_, "operator-=");
    for (std::size_t k = 0; k < values_.size(); ++k) values_[k] -= other.values_[k];
    return *this;
}

GridFunction& GridFunction::operator*=(Complex s) {
    for (auto& v : values_) v *= s;
    return *this;
}

void require_same_grid(const Grid& a, const Grid& b, const char* what) {
    if (!(a == b)) {
        throw DimensionError(std::string(what) + ": grid mismatch (N=" + std::to_string(a.N()) +
                             " vs N=" + std::to_string(b.N()) + ")");
    }
}

Complex inner(const GridFunction& u, const GridFunction& v) {
    require_same_grid(u.grid(), v.grid(), "inner");
    Complex sum{};
    for (std::size_t k = 0; k < u.size(); ++k) sum += u[k] * std::conj(v[k]);
    return u.grid().h() * sum;
}

double norm_l2(const GridFunction& u) {
    double sum = 0.0;
    for (Complex z : u.values()) sum += std::norm(z);
    return std::sqrt(u.grid().h() * sum);
}

double norm_linf(const GridFunction& u) {
    double m = 0.0;
    for (Complex z : u.values()) m = std::max(m, std::abs(z));
    return m;
}

double norm_h1(const GridFunction& u) {
    const double h = u.grid().h();
    double diff_sum = 0.0;
    // Forward differences over -1..N cover every nonzero jump of the padded function.
    for (long k = -1; k <= u.grid().N(); ++k) {
        diff_sum += std::norm((u.at_padded(k + 1) - u.at_padded(k)) / h);
    }
    const double l2 = norm_l2(u);
    return std::sqrt(l2 * l2 + h * diff_sum);
}

GridFunction weighted(const GridFunction& u, double sigma) {
    GridFunction out = u;
    if (sigma == 0.0) return out;
    for (int k = 0; k <= u.grid().N(); ++k) {
        const double a = u.grid().tau(k);
        out[static_cast<std::size_t>(k)] *= std::pow(1.0 + a * a, 0.5 * sigma);
    }
    return out;
}

GridFunction project(const std::function<Complex(double)>& f, const Grid& grid) {
    GridFunction out(grid);
    for (int k = 0; k <= grid.N(); ++k) {
        const double a = grid.tau(k);
        const Complex v = f(a);
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            throw EvaluationError("projected function is not finite at node k=" + std::to_string(k) +
                                  " (a=" + std::to_string(a) + ")");
        }
        out[static_cast<std::size_t>(k)] = v;
    }
    return out;
}

GridFunction project_real(const std::function<double(double)>& f, const Grid& grid) {
    return project([&f](double x) { return Complex(f(x), 0.0); }, grid);
}

}  // namespace kravchuk
