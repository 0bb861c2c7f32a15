#include "kravchuk/basis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include "kravchuk/errors.hpp"

namespace kravchuk {

namespace {

constexpr int kLinearWeightMaxN = 1024;
constexpr double kRescaleThreshold = 1e200;
constexpr double kGramTolerance = 1e-8;

void check_mode(int n, int N) {
    if (n < 0 || n > N) {
        throw IndexError("mode index " + std::to_string(n) + " outside 0.." + std::to_string(N));
    }
}

}  // namespace

double log_binomial(int N, int k) {
    return std::lgamma(N + 1.0) - std::lgamma(k + 1.0) - std::lgamma(N - k + 1.0);
}

double BinomialWeight::operator()(long k) const noexcept {
    if (k < 0 || k > grid.N()) return 0.0;
    return pi[static_cast<std::size_t>(k)];
}

double BinomialWeight::rho_h(int k) const {
    if (k < 0 || k > grid.N()) {
        throw IndexError("node index " + std::to_string(k) + " outside 0.." + std::to_string(grid.N()));
    }
    return pi[static_cast<std::size_t>(k)] / grid.h();
}

BinomialWeight make_weight(const Grid& grid) {
    const int N = grid.N();
    const auto size = grid.size();
    BinomialWeight w{grid, std::vector<double>(size), std::vector<double>(size)};

    // Ratio recurrence Pi(k+1) = Pi(k) (N-k)/(k+1) on the first half, mirrored.
    const int half = N / 2;
    if (N <= kLinearWeightMaxN) {
        w.pi[0] = std::ldexp(1.0, -N);
        for (int k = 0; k < half; ++k) {
            w.pi[static_cast<std::size_t>(k + 1)] =
                w.pi[static_cast<std::size_t>(k)] * static_cast<double>(N - k) / static_cast<double>(k + 1);
        }
        for (int k = 0; k <= half; ++k) {
            w.pi[static_cast<std::size_t>(N - k)] = w.pi[static_cast<std::size_t>(k)];
        }
        for (std::size_t k = 0; k < size; ++k) w.log_pi[k] = std::log(w.pi[k]);
    } else {
        // Seeded at the centre, Pi(N/2) = prod_j (2j-1)/(2j), and walked outwards with
        // Pi(k-1) = Pi(k) k/(N-k+1); the tails may underflow, log_pi keeps them.
        double centre = 1.0;
        for (int j = 1; j <= half; ++j) centre *= static_cast<double>(2 * j - 1) / static_cast<double>(2 * j);
        const auto mid = static_cast<std::size_t>(half);
        w.pi[mid] = centre;
        w.log_pi[mid] = std::log(centre);
        for (int k = half; k > 0; --k) {
            const double ratio = static_cast<double>(k) / static_cast<double>(N - k + 1);
            const auto i = static_cast<std::size_t>(k);
            w.pi[i - 1] = w.pi[i] * ratio;
            w.log_pi[i - 1] = w.log_pi[i] + std::log(ratio);
        }
        for (int k = 0; k < half; ++k) {
            w.pi[static_cast<std::size_t>(N - k)] = w.pi[static_cast<std::size_t>(k)];
            w.log_pi[static_cast<std::size_t>(N - k)] = w.log_pi[static_cast<std::size_t>(k)];
        }
    }
    return w;
}

PolyValue kravchuk_poly(int n, int k, int N) {
    if (n < 0) throw IndexError("negative polynomial degree " + std::to_string(n));
    if (k < 0 || k > N) {
        throw IndexError("node index " + std::to_string(k) + " outside 0.." + std::to_string(N));
    }
    if (n > N) return {0.0, true};

    const double x = static_cast<double>(k) - 0.5 * N;
    double prev = 0.0;
    double cur = 1.0;
    for (int j = 0; j < n; ++j) {
        const double next = (x * cur - 0.25 * (N - j + 1) * prev) / (j + 1);
        prev = cur;
        cur = next;
    }
    return {cur, false};
}

double kravchuk_poly_explicit(int n, int k, int N) {
    auto binom = [](int a, int b) -> long double {
        if (b < 0 || b > a) return 0.0L;
        long double c = 1.0L;
        for (int i = 1; i <= b; ++i) c = c * (a - b + i) / i;
        return c;
    };
    long double sum = 0.0L;
    for (int j = 0; j <= n; ++j) {
        const long double term = binom(k, j) * binom(N - k, n - j);
        sum += ((n - j) % 2 == 0) ? term : -term;
    }
    return static_cast<double>(std::ldexp(sum, -n));
}

double scaled_kravchuk_poly(int n, double a, double h) {
    double prev = 0.0;
    double cur = 1.0;
    for (int j = 0; j < n; ++j) {
        const double next = 2.0 * a * cur - 2.0 * j * (1.0 - h * h * 0.5 * (j - 1)) * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

KravchukBasis::KravchukBasis(BinomialWeight weight)
    : weight_(std::move(weight)),
      stride_(weight_.grid.size()),
      phi_(stride_ * stride_, 0.0) {}

std::span<const double> KravchukBasis::row(int n) const {
    check_mode(n, N());
    return std::span<const double>(phi_).subspan(static_cast<std::size_t>(n) * stride_, stride_);
}

double KravchukBasis::log_d(int n) const {
    check_mode(n, N());
    return -n * std::log(2.0) + 0.5 * log_binomial(N(), n);
}

double KravchukBasis::d(int n) const { return std::exp(log_d(n)); }

double KravchukBasis::log_alpha(int n) const {
    check_mode(n, N());
    const int N_ = N();
    return -n * std::log(grid().h()) +
           0.5 * (std::lgamma(N_ - n + 1.0) - std::lgamma(N_ + 1.0) - std::lgamma(n + 1.0));
}

double KravchukBasis::alpha(int n) const { return std::exp(log_alpha(n)); }

KravchukBasis::GramReport KravchukBasis::gram_residual() const {
    GramReport report;
    const int N_ = N();
    for (int n = 0; n <= N_; ++n) {
        const double* rn = phi_.data() + static_cast<std::size_t>(n) * stride_;
        for (int m = n; m <= N_; ++m) {
            const double* rm = phi_.data() + static_cast<std::size_t>(m) * stride_;
            double s = 0.0;
            for (std::size_t k = 0; k < stride_; ++k) s += rn[k] * rm[k];
            const double r = std::abs(s - (n == m ? 1.0 : 0.0));
            if (r > report.residual) report = {r, n, m};
        }
    }
    return report;
}

KravchukBasis make_basis(const Grid& grid) {
    KravchukBasis basis(make_weight(grid));
    const int N = grid.N();
    const int half = N / 2;
    const std::size_t stride = basis.stride_;
    auto at = [&](int n, int k) -> double& {
        return basis.phi_[static_cast<std::size_t>(n) * stride + static_cast<std::size_t>(k)];
    };

    // Quadrant n, k <= N/2: normalized three-term recurrence in n at fixed k,
    //   sqrt((N-n)(n+1)) phi_{n+1} = (2k-N) phi_n - sqrt(n(N-n+1)) phi_{n-1},
    // seeded with phi_0 = sqrt(Pi). In this quadrant phi_n(k) grows with n, so the
    // forward recurrence is stable. Values are carried as mantissa * exp(log_scale)
    // because sqrt(Pi(k)) underflows near the edges for large N.
    const auto& log_pi = basis.weight_.log_pi;
    for (int k = 0; k <= half; ++k) {
        double log_scale = 0.5 * log_pi[static_cast<std::size_t>(k)];
        double prev = 0.0;
        double cur = 1.0;
        const double x = static_cast<double>(2 * k - N);
        at(0, k) = std::exp(log_scale);
        for (int n = 0; n < half; ++n) {
            const double next =
                (x * cur - std::sqrt(static_cast<double>(n) * (N - n + 1)) * prev) /
                std::sqrt(static_cast<double>(N - n) * (n + 1));
            prev = cur;
            cur = next;
            if (std::abs(cur) > kRescaleThreshold) {
                cur /= kRescaleThreshold;
                prev /= kRescaleThreshold;
                log_scale += std::log(kRescaleThreshold);
            }
            at(n + 1, k) = cur * std::exp(log_scale);
        }
    }
    // n > N/2, k <= N/2: duality (-1)^k phi_n(k) = (-1)^n phi_k(n) combined with
    // reflection phi_k(n) = (-1)^k phi_k(N-n) gives phi_n(k) = (-1)^n phi_k(N-n).
    for (int n = half + 1; n <= N; ++n) {
        const double sign = (n % 2 == 0) ? 1.0 : -1.0;
        for (int k = 0; k <= half; ++k) at(n, k) = sign * at(k, N - n);
    }
    // k > N/2: reflection phi_n(N-k) = (-1)^n phi_n(k).
    for (int n = 0; n <= N; ++n) {
        const double sign = (n % 2 == 0) ? 1.0 : -1.0;
        for (int k = half + 1; k <= N; ++k) at(n, k) = sign * at(n, N - k);
    }
    // Exact zeros forced by the two symmetries: phi_n(N/2) for odd n and, by duality, phi_{N/2}(k) for odd k.
    for (int j = 1; j <= N; j += 2) {
        at(j, half) = 0.0;
        at(half, j) = 0.0;
    }

    const auto gram = basis.gram_residual();
    if (gram.residual > kGramTolerance) {
        throw ConstructionError("Kravchuk basis Gram residual " + std::to_string(gram.residual) +
                                " at (n, m) = (" + std::to_string(gram.worst_n) + ", " +
                                std::to_string(gram.worst_m) + ")");
    }
    return basis;
}

GridFunction phi_h(const KravchukBasis& basis, int n) {
    const auto r = basis.row(n);
    const double scale = 1.0 / std::sqrt(basis.grid().h());
    GridFunction out(basis.grid());
    for (std::size_t k = 0; k < r.size(); ++k) out[k] = r[k] * scale;
    return out;
}

void write_basis_csv(std::ostream& os, const KravchukBasis& basis) {
    const int N = basis.N();
    char buf[32];
    os << "n";
    for (int k = 0; k <= N; ++k) os << ",k" << k;
    os << '\n';
    for (int n = 0; n <= N; ++n) {
        os << n;
        for (int k = 0; k <= N; ++k) {
            std::snprintf(buf, sizeof buf, "%.17g", basis.phi(n, k));
            os << ',' << buf;
        }
        os << '\n';
    }
}

std::vector<double> forward_diff(std::span<const double> f) {
    std::vector<double> out(f.size());
    for (std::size_t k = 0; k < f.size(); ++k) {
        const double next = (k + 1 < f.size()) ? f[k + 1] : 0.0;
        out[k] = next - f[k];
    }
    return out;
}

std::vector<double> backward_diff(std::span<const double> f) {
    std::vector<double> out(f.size());
    for (std::size_t k = 0; k < f.size(); ++k) {
        const double prev = (k > 0) ? f[k - 1] : 0.0;
        out[k] = f[k] - prev;
    }
    return out;
}

std::vector<double> rodrigues_oracle(int n, int N) {
    if (n < 0 || n > N) {
        throw IndexError("mode index " + std::to_string(n) + " outside 0.." + std::to_string(N));
    }
    const auto w = make_weight(Grid(N));
    std::vector<double> g(w.pi.size());
    for (int k = 0; k <= N; ++k) {
        double falling = 1.0;
        for (int j = 0; j < n; ++j) falling *= static_cast<double>(k - j);
        g[static_cast<std::size_t>(k)] = w.pi[static_cast<std::size_t>(k)] * falling;
    }
    // Pi vanishes beyond N, so truncating after each difference equals zero padding.
    for (int i = 0; i < n; ++i) g = forward_diff(g);
    double factor = std::ldexp(1.0, -n) / std::tgamma(n + 1.0);
    if (n % 2 == 1) factor = -factor;
    for (auto& v : g) v *= factor;
    return g;
}

}  // namespace kravchuk
