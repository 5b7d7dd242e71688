#pragma once

#include <complex>

#include "phfem/phcore.hpp"

namespace phfem {

/// Positive-frequency modes of i w M psi = J psi for the monolithic pencil.
struct ModeSet {
    std::vector<double> omega; // ascending, strictly positive
    int n_zero = 0;            // near-zero frequencies filtered out
    std::vector<std::vector<std::complex<double>>> vectors; // per mode, when requested
    Vec residuals; // ||J psi - i w M psi|| / ||psi||, when vectors are computed
};

ModeSet solve_modes(const CoupledSystem& c, int n_modes, bool want_vectors);

/// Clamped-free beam frequencies w_n = (xi_n / L)^2 sqrt(EI / rhoA) where
/// xi_n solves cos(xi) cosh(xi) + 1 = 0, bracketed around (2n-1) pi/2 and
/// bisected to 1e-12.
std::vector<double> beam_analytical_freqs(int n, double EI, double rhoA, double L);

/// Mixed Dirichlet/Neumann square: w_mn = pi/(2L) sqrt((2m-1)^2 + (2n-1)^2),
/// smallest `count` values, multiplicities kept.
std::vector<double> wave_analytical_freqs(int count, double L);

} // namespace phfem
