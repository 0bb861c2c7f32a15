#pragma once

#include <vector>

#include "kravchuk/basis.hpp"
#include "kravchuk/grid.hpp"
#include "kravchuk/hermite.hpp"
#include "kravchuk/operators.hpp"
#include "kravchuk/spectral_state.hpp"

namespace kravchuk {

/// c_n <- c_n e^{-i (2n+1) t}. Exact phases: the group property and the
/// 2 pi revival hold to rounding.
SpectralState propagate(const SpectralState& state, double t);

/// ||u||^2 in l^2(hZ).
double mass(const GridFunction& u);

/// Re <u, H_h u>. Throws NumericError if the discarded imaginary part exceeds
/// 1e-12 max(1, |energy|).
double energy(const DiscreteHamiltonian& H, const GridFunction& u);

struct EnergyReport {
    double t = 0.0;
    double mass = 0.0;
    double energy = 0.0;
};

EnergyReport energy_report(const DiscreteHamiltonian& H, const GridFunction& u, double t);

/// exp(-i t H_h) u by the dense Pade exponential; reference route for propagate.
GridFunction propagate_dense(const DiscreteHamiltonian& H, const GridFunction& u, double t);

/// floor(|log h| / 3) clamped to [4, N].
int default_n_max(const Grid& grid);

struct EvolutionOptions {
    /// Continuous reference truncation.
    int n_ref = 120;
    /// Rescale f to unit L^2 norm before evolving.
    bool normalize = true;
    /// Largest |c_n| allowed among the last ten reference coefficients.
    double tail_tolerance = 1e-12;
};

struct EvolutionRow {
    double t = 0.0;
    /// ||pi_h psi(t) - psi_h(t)||_{l^2(hZ)}.
    double error = 0.0;
    double mass = 0.0;
    double energy = 0.0;
};

struct EvolutionTable {
    std::string function_name;
    int N = 0;
    int n_max = 0;
    int n_ref = 0;
    /// Time-independent bound E1 + E2 + E3 on every row's error:
    /// E1 = sum_{n > n_max} |c_n| ||pi_h psi_n||, E2 = sum_{n <= n_max} |c_n - c_{n,h}| ||pi_h psi_n||,
    /// E3 = sum_{n <= n_max} |c_{n,h}| ||pi_h psi_n - phi_{n,h}||.
    double bound = 0.0;
    std::vector<EvolutionRow> rows;
};

/**
 * Evolves f under the continuous oscillator (Hermite expansion, n <= n_ref, coefficients
 * by composite Gauss-Legendre) and under H_h (Kravchuk coefficients, n <= n_max, exact
 * phases), and reports the l^2(hZ) distance at each requested time.
 *
 * Throws NumericError when the reference coefficient tail exceeds the tolerance.
 */
EvolutionTable evolve_and_compare(const TestFunction& f, const KravchukBasis& basis, int n_max,
                                  const std::vector<double>& times, const EvolutionOptions& options = {});

}  // namespace kravchuk
