#pragma once

#include <vector>

#include "kravchuk/grid.hpp"

namespace kravchuk {

/// Kravchuk coefficients c_{n,h}, n = 0..n_max, of a grid function.
/// Mode n carries the eigenvalue lambda_n = 2n + 1 of H_h.
struct SpectralState {
    Grid grid;
    std::vector<Complex> coeffs;

    int n_max() const noexcept { return static_cast<int>(coeffs.size()) - 1; }
    static double lambda(int n) noexcept { return 2.0 * n + 1.0; }

    /// Keeps modes 0..n_max. Throws IndexError if n_max exceeds the current truncation or N.
    SpectralState truncated(int n_max) const;
};

}  // namespace kravchuk
