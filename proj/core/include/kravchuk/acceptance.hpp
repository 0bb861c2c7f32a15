#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "kravchuk/evolution.hpp"
#include "kravchuk/experiments.hpp"

namespace kravchuk {

inline constexpr std::uint64_t kDefaultSeed = 0x5EED;

/// Library version string, e.g. "0.1.0".
const char* library_version();

/// Thresholds of the acceptance suite, keyed for command-line overrides.
struct Tolerances {
    double eigen_residual = 1e-10;
    double spectrum = 1e-8;
    double gram = 1e-10;
    double ladder = 1e-11;
    double adjoint = 1e-12;
    double factorization = 1e-10;
    double transform_diff = 1e-9;
    double unitarity = 1e-10;
    double identity = 1e-10;
    double rho_slope_lo = -1.15;
    double rho_slope_hi = -0.85;
    double phi_slope_lo = -1.2;
    double phi_slope_hi = -0.8;
    double consistency_slope_lo = -1.15;
    double consistency_slope_hi = -0.85;
    double r2_min = 0.98;
    double drift = 1e-11;
    double revival = 1e-12;
    double evolve_variation = 0.2;
    double poly = 1e-10;
    double rodrigues = 1e-14;
    double pearson = 1e-13;
    double dense_expm = 1e-8;
    double wall_seconds = 300.0;

    /// Name -> member, for "name=value" overrides.
    std::map<std::string, double*> fields();
    /// Throws ConfigError for unknown names.
    void set(const std::string& name, double value);
};

struct AcceptanceConfig {
    std::vector<int> spectrum_N{4, 50, 256, 512};
    std::vector<int> gram_N{2, 4, 8, 16, 32, 50, 64, 128, 256, 512};
    int ladder_N = 50;
    int adjoint_pairs = 100;
    std::vector<int> transform_N{2, 16, 64, 128};
    std::vector<int> unitarity_N{2, 16, 64, 128, 256, 512};
    int identity_N = 64;
    std::vector<int> rho_N{50, 100, 200, 400, 800};
    std::vector<int> phi_N{100, 200, 400, 800};
    int phi_mode = 10;
    std::vector<int> consistency_N{64, 128, 256, 512};
    int evolve_N = 100;
    std::vector<double> evolve_t{0.0, 1.0, 10.0, 100.0};
    /// Weight exponent for the rho and phi sweeps.
    double sigma = 0.0;
    std::uint64_t seed = kDefaultSeed;
    Tolerances tol;
    /// CSV output directory; empty writes nothing.
    std::filesystem::path out_dir;
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    /// Worst measured quantity against its threshold, free text.
    std::string detail;
    double seconds = 0.0;
};

struct AcceptanceReport {
    std::vector<CriterionResult> criteria;
    bool all_passed() const;
    std::vector<std::string> failures() const;
};

/// Uniform doubles in [-1, 1) from mt19937_64; identical on every platform.
class SeededUniform {
public:
    explicit SeededUniform(std::uint64_t seed);
    double operator()();
    GridFunction unit_vector(const Grid& grid);

private:
    std::mt19937_64 engine_;
};

CriterionResult check_spectrum(const AcceptanceConfig& cfg);
CriterionResult check_orthonormality(const AcceptanceConfig& cfg);
CriterionResult check_ladder(const AcceptanceConfig& cfg);
CriterionResult check_transform(const AcceptanceConfig& cfg);
CriterionResult check_rho_rate(const AcceptanceConfig& cfg, const SweepResult& rho);
CriterionResult check_phi_rate(const AcceptanceConfig& cfg, const SweepResult& phi);
CriterionResult check_consistency_rate(const AcceptanceConfig& cfg, const SweepResult& consistency);
CriterionResult check_evolution(const AcceptanceConfig& cfg, EvolutionTable* table = nullptr);
CriterionResult check_oracles(const AcceptanceConfig& cfg);

/// Criteria 1-4 and 9: algebraic identities only, no convergence sweeps.
AcceptanceReport run_identity_suite(const AcceptanceConfig& cfg);

/// Every criterion, writing rho, phi, consistency, profile, evolution and summary
/// CSVs when cfg.out_dir is set. Criterion 10 is the wall-clock budget of this call.
AcceptanceReport run_all(const AcceptanceConfig& cfg);

/// '#'-prefixed provenance lines: version, seed, configuration echo.
std::vector<std::string> provenance(const AcceptanceConfig& cfg);

CsvTable summary_csv(const AcceptanceReport& report, const AcceptanceConfig& cfg);

}  // namespace kravchuk
