// invert.hpp — direct inversion on the spectrally matched grid: impedance
// from the ROM cell coefficients, the two-family eigenbasis of the lossless
// operator for the estimated impedance, the 2n-by-2n loss system, and the
// explicit simple loss estimate.

#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "lossyrom/grid.hpp"
#include "lossyrom/rom.hpp"
#include "lossyrom/types.hpp"

namespace lossyrom {

// Impedance samples on the staggered grid implied by the ROM coefficients:
// zeta_primary[j] = h_hat[j] / gamma_hats[j] at the primary nodes and
// zeta_dual[j] = gammas[j] / h[j] at the dual nodes.
struct ImpedanceSamples {
    std::vector<double> zeta_primary;
    std::vector<double> zeta_dual;
};
ImpedanceSamples coefficient_samples(const RomCoefficients& c,
                                     const StaggeredGrid& g);

// Piecewise-linear impedance estimate through the 2n interlaced samples,
// extended as a constant beyond the last node.  Errors if any sample is
// nonpositive.
PiecewiseLinear impedance_from_rom(const RomCoefficients& c,
                                   const StaggeredGrid& g);

// Eigenbasis of the lossless operator for impedance zeta on [0, t_max],
// discretized on a fine staggered grid with fine_n cells of width
// step() = t_max / fine_n.  Family one (phi) has a natural (zero-flux)
// condition at T = 0 and a Dirichlet condition at T = t_max, with
// frequencies theta; family two (psi) is Dirichlet at both ends with
// frequencies vartheta.  phi[j] holds the fine_n + 1 nodal values
// (including the zero at t_max), phi_hat[j] the fine_n dual (midpoint)
// values of the flux companion -phi' / (theta zeta); both families are
// orthonormal in the discrete weighted inner products (1/zeta on nodes,
// zeta on midpoints).
struct EigenBasis {
    double t_max = 1.0;
    std::size_t n_modes = 0;
    std::size_t fine_n = 0;
    std::vector<double> theta;
    std::vector<double> vartheta;
    std::vector<std::vector<double>> phi;
    std::vector<std::vector<double>> phi_hat;
    std::vector<std::vector<double>> psi;
    std::vector<std::vector<double>> psi_hat;

    double step() const { return t_max / static_cast<double>(fine_n); }
};

EigenBasis eigenbasis(const std::function<double(double)>& zeta, double t_max,
                      std::size_t n_modes, std::size_t fine_n = 3000);

enum class InversionMethod { grid_direct, simple, optimized };

struct InversionResult {
    PiecewiseLinear zeta_est;
    PiecewiseConstant loss_est;    // r^(n)
    PiecewiseConstant r_frak;      // primary coefficient interpolant
    PiecewiseConstant r_frak_hat;  // dual coefficient interpolant
    InversionMethod method = InversionMethod::grid_direct;
    double reg = 0.0;
    double system_residual = 0.0;  // ||M x - b|| of the unregularized system
    double mean_loss_est = 0.0;
};

// Direct inversion: assembles the 2n-by-2n system whose unknowns are the
// loss values on the staggered subintervals, weighted by the eigenbasis,
// and solves it in the least squares sense with singular values below
// 1e-10 sigma_max truncated.  reg > 0 appends a Tikhonov penalty on the
// first differences of the interleaved loss values.  The basis must have
// been computed from the impedance estimate of the same (c, g).
InversionResult loss_direct(const RomCoefficients& c, const StaggeredGrid& g,
                            const EigenBasis& basis, double reg);

// Explicit estimate: loss = primary minus dual coefficient interpolant;
// also reports the mean loss (average of their sum).
InversionResult loss_simple(const RomCoefficients& c, const StaggeredGrid& g);

}  // namespace lossyrom
