#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "kravchuk/csv.hpp"
#include "kravchuk/grid.hpp"
#include "kravchuk/hermite.hpp"

namespace kravchuk {

struct NormTriple {
    double l2 = 0.0;
    double linf = 0.0;
    double h1 = 0.0;
};

NormTriple error_norms(const GridFunction& e);

/// Least-squares line through (log x, log y) with its coefficient of determination.
struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};

SlopeFit fit_loglog(std::span<const double> x, std::span<const double> y);

/// Errors of one convergence sweep over N with fitted slopes against N.
struct SweepResult {
    std::string name;
    /// Mode index for Kravchuk-to-Hermite sweeps, -1 otherwise.
    int mode = -1;
    double sigma = 0.0;
    std::vector<int> N;
    std::vector<NormTriple> errors;
    SlopeFit l2;
    SlopeFit linf;
    SlopeFit h1;
};

/// Throws ConfigError unless the list is non-empty, strictly increasing, all even and >= min_N.
void validate_N_list(const std::vector<int>& N_list, int min_N = 2);

/// rho_h(a) - e^{-a^2}/sqrt(pi), weighted by <a>^sigma. Requires N >= 10.
SweepResult sweep_rho_convergence(const std::vector<int>& N_list, double sigma = 0.0);

/// phi_{n,h} - pi_h psi_n for each requested mode, weighted by <a>^sigma.
/// Every mode must satisfy n <= min(N_list).
std::vector<SweepResult> sweep_phi_convergence(const std::vector<int>& N_list, const std::vector<int>& modes,
                                               double sigma = 0.0);

/// pi_h(H g) - H_h(pi_h g) on A_h, for amplitude * g.
SweepResult sweep_operator_consistency(const TestFunction& g, const std::vector<int>& N_list,
                                       double amplitude = 1.0);

/// Node coordinates plus named sample columns, for figure reproduction.
struct Profile {
    int N = 0;
    std::vector<double> a;
    std::vector<std::string> names;
    std::vector<std::vector<double>> columns;
};

/// a, rho_h(a), e^{-a^2}/sqrt(pi).
Profile rho_profile(int N);
/// a, then phi_{n,h}(a) and psi_n(a) for n = first..last.
Profile phi_profiles(int N, int first, int last);

CsvTable sweep_csv(const SweepResult& sweep, const std::vector<std::string>& metadata);
/// Several sweeps in one table with a leading mode column; one slope footer line per sweep.
CsvTable sweep_family_csv(const std::vector<SweepResult>& sweeps, const std::vector<std::string>& metadata);
CsvTable profile_csv(const Profile& profile, const std::vector<std::string>& metadata);

/// Worker count: KRAVCHUK_THREADS if set and positive, else hardware concurrency.
unsigned thread_count();

/// out[i] = fn(i) for i < count, spread over thread_count() workers. Results are
/// placed by index, so the output does not depend on scheduling.
template <typename Result>
std::vector<Result> parallel_map(std::size_t count, const std::function<Result(std::size_t)>& fn) {
    std::vector<Result> out(count);
    const unsigned workers = std::min<unsigned>(thread_count(), static_cast<unsigned>(std::max<std::size_t>(count, 1)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
        return out;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = next++; i < count; i = next++) out[i] = fn(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return out;
}

}  // namespace kravchuk
