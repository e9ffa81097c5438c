// grid.hpp — the reference (constant-medium) spectral data and the
// spectrally matched staggered grid derived from it, on which ROM cell
// coefficients acquire a geometric meaning.

#pragma once

#include <cstddef>
#include <vector>

#include "lossyrom/spectral.hpp"

namespace lossyrom {

// Staggered grid with n primary cells of width h[j] and n dual cells of
// width h_hat[j] (the first dual cell abuts the boundary).  Node positions
// are the running sums: t_primary[j] = sum of h before j (t_primary[0] = 0),
// t_dual[j] = sum of h_hat up to j (t_dual[0] = 0); both arrays carry n + 1
// entries, and the nodes interlace.
struct StaggeredGrid {
    double t_max = 0.0;
    std::vector<double> h;
    std::vector<double> h_hat;
    std::vector<double> t_primary;
    std::vector<double> t_dual;
};

// Spectral data of the lossless constant medium with impedance zeta0 on
// [0, t_max]: purely imaginary poles at the odd half-multiples of pi/t_max
// with equal real residues zeta0/t_max.
SpectralData reference_spectral_data(std::size_t n_pairs, double t_max,
                                     double zeta0 = 1.0);

// The grid on which the ROM of the reference data reproduces the true cell
// geometry: cell widths are the gamma coefficients extracted from the
// reference ROM.  Interlacing of the resulting nodes is a structural
// property and is verified; its failure indicates an internal error.
StaggeredGrid spectrally_matched_grid(std::size_t n_pairs, double t_max);

}  // namespace lossyrom
