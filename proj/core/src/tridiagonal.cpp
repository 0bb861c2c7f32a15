#include "kravchuk/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "kravchuk/errors.hpp"

namespace kravchuk {

namespace {

constexpr int kMaxQlIterations = 60;

// Implicit QL with Wilkinson shifts (EISPACK tql2 / tqli). e[i] couples i and i+1;
// e must have d.size() entries with e.back() == 0. Accumulates rotations into z if given.
void implicit_ql(std::vector<double>& d, std::vector<double>& e, Eigen::MatrixXd* z) {
    const int n = static_cast<int>(d.size());
    const double eps = std::numeric_limits<double>::epsilon();
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m = l;
        do {
            for (m = l; m < n - 1; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= eps * dd) break;
            }
            if (m == l) break;
            if (iter++ == kMaxQlIterations) {
                throw NumericError("tridiagonal QL did not converge at index " + std::to_string(l));
            }
            double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            double r = std::hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
            double s = 1.0;
            double c = 1.0;
            double p = 0.0;
            int i = m - 1;
            bool deflated = false;
            for (; i >= l; --i) {
                double f = s * e[i];
                const double b = c * e[i];
                r = std::hypot(f, g);
                e[i + 1] = r;
                if (r == 0.0) {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                if (z != nullptr) {
                    for (Eigen::Index k = 0; k < z->rows(); ++k) {
                        f = (*z)(k, i + 1);
                        (*z)(k, i + 1) = s * (*z)(k, i) + c * f;
                        (*z)(k, i) = c * (*z)(k, i) - s * f;
                    }
                }
            }
            if (deflated) continue;
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        } while (m != l);
    }
}

std::vector<double> padded_off(const SymmetricTridiagonal& t) {
    std::vector<double> e(t.size(), 0.0);
    std::copy(t.off.begin(), t.off.end(), e.begin());
    return e;
}

}  // namespace

std::vector<Complex> SymmetricTridiagonal::apply(std::span<const Complex> x) const {
    const std::size_t n = size();
    std::vector<Complex> y(n);
    for (std::size_t k = 0; k < n; ++k) {
        Complex v = diag[k] * x[k];
        if (k + 1 < n) v += off[k] * x[k + 1];
        if (k > 0) v += off[k - 1] * x[k - 1];
        y[k] = v;
    }
    return y;
}

std::vector<double> SymmetricTridiagonal::apply(std::span<const double> x) const {
    const std::size_t n = size();
    std::vector<double> y(n);
    for (std::size_t k = 0; k < n; ++k) {
        double v = diag[k] * x[k];
        if (k + 1 < n) v += off[k] * x[k + 1];
        if (k > 0) v += off[k - 1] * x[k - 1];
        y[k] = v;
    }
    return y;
}

double SymmetricTridiagonal::one_norm() const {
    const std::size_t n = size();
    double best = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        double col = std::abs(diag[k]);
        if (k + 1 < n) col += std::abs(off[k]);
        if (k > 0) col += std::abs(off[k - 1]);
        best = std::max(best, col);
    }
    return best;
}

Eigen::MatrixXd SymmetricTridiagonal::dense() const {
    const auto n = static_cast<Eigen::Index>(size());
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        m(k, k) = diag[static_cast<std::size_t>(k)];
        if (k + 1 < n) {
            m(k, k + 1) = off[static_cast<std::size_t>(k)];
            m(k + 1, k) = off[static_cast<std::size_t>(k)];
        }
    }
    return m;
}

std::vector<double> eigenvalues_ql(const SymmetricTridiagonal& t) {
    std::vector<double> d = t.diag;
    std::vector<double> e = padded_off(t);
    implicit_ql(d, e, nullptr);
    std::sort(d.begin(), d.end());
    return d;
}

TridiagonalEigen eigen_decomposition(const SymmetricTridiagonal& t) {
    std::vector<double> d = t.diag;
    std::vector<double> e = padded_off(t);
    const auto n = static_cast<Eigen::Index>(t.size());
    Eigen::MatrixXd z = Eigen::MatrixXd::Identity(n, n);
    implicit_ql(d, e, &z);

    std::vector<std::size_t> order(d.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&d](std::size_t a, std::size_t b) { return d[a] < d[b]; });

    TridiagonalEigen out{std::vector<double>(d.size()), Eigen::MatrixXd(n, n)};
    for (std::size_t j = 0; j < order.size(); ++j) {
        out.values[j] = d[order[j]];
        out.vectors.col(static_cast<Eigen::Index>(j)) = z.col(static_cast<Eigen::Index>(order[j]));
    }
    return out;
}

std::size_t sturm_count(const SymmetricTridiagonal& t, double x) {
    const double tiny = std::numeric_limits<double>::min();
    std::size_t count = 0;
    double q = 1.0;
    for (std::size_t k = 0; k < t.size(); ++k) {
        const double b2 = (k > 0) ? t.off[k - 1] * t.off[k - 1] : 0.0;
        q = t.diag[k] - x - (k > 0 ? b2 / q : 0.0);
        if (q == 0.0) q = -tiny;
        if (q < 0.0) ++count;
    }
    return count;
}

std::vector<double> eigenvalues_bisection(const SymmetricTridiagonal& t, double tol) {
    const std::size_t n = t.size();
    double lo = std::numeric_limits<double>::max();
    double hi = std::numeric_limits<double>::lowest();
    for (std::size_t k = 0; k < n; ++k) {
        double radius = 0.0;
        if (k + 1 < n) radius += std::abs(t.off[k]);
        if (k > 0) radius += std::abs(t.off[k - 1]);
        lo = std::min(lo, t.diag[k] - radius);
        hi = std::max(hi, t.diag[k] + radius);
    }
    std::vector<double> values(n);
    for (std::size_t j = 0; j < n; ++j) {
        // Smallest x with at least j+1 eigenvalues below it.
        double a = lo;
        double b = hi;
        while (b - a > tol) {
            const double mid = 0.5 * (a + b);
            if (mid == a || mid == b) break;
            if (sturm_count(t, mid) > j) {
                b = mid;
            } else {
                a = mid;
            }
        }
        values[j] = 0.5 * (a + b);
    }
    return values;
}

}  // namespace kravchuk
