// grid.cpp — reference spectral data and the spectrally matched grid.

#include "lossyrom/grid.hpp"

#include <numbers>
#include <stdexcept>
#include <string>

#include "lossyrom/rom.hpp"

namespace lossyrom {

SpectralData reference_spectral_data(std::size_t n_pairs, double t_max,
                                     double zeta0) {
    if (n_pairs == 0)
        throw std::invalid_argument("reference_spectral_data: need n_pairs >= 1");
    if (!(t_max > 0.0) || !(zeta0 > 0.0))
        throw std::invalid_argument(
            "reference_spectral_data: t_max and zeta0 must be positive");

    SpectralData data;
    data.n_pairs = n_pairs;
    data.zeta0 = zeta0;
    data.poles.resize(n_pairs);
    data.residues.resize(n_pairs);
    for (std::size_t j = 1; j <= n_pairs; ++j) {
        data.poles[j - 1] =
            cplx(0.0, (static_cast<double>(j) - 0.5) * std::numbers::pi / t_max);
        data.residues[j - 1] = cplx(zeta0 / t_max, 0.0);
    }
    return data;
}

StaggeredGrid spectrally_matched_grid(std::size_t n_pairs, double t_max) {
    // The reference ROM cell weights are the grid steps themselves; unit
    // impedance makes gammas and gamma_hats coincide with h and h_hat.
    const SpectralData data = reference_spectral_data(n_pairs, t_max, 1.0);
    const RomCoefficients c = extract_coefficients(lanczos(data));

    StaggeredGrid grid;
    grid.t_max = t_max;
    grid.h = c.gammas;
    grid.h_hat = c.gamma_hats;
    grid.t_primary.resize(n_pairs + 1);
    grid.t_dual.resize(n_pairs + 1);
    grid.t_primary[0] = 0.0;
    grid.t_dual[0] = 0.0;
    for (std::size_t j = 0; j < n_pairs; ++j) {
        grid.t_primary[j + 1] = grid.t_primary[j] + grid.h[j];
        grid.t_dual[j + 1] = grid.t_dual[j] + grid.h_hat[j];
    }

    // The widths interlace, h_hat[0] < h[0] < h_hat[1] < h[1] < ..., which
    // in turn interlaces the nodes; a violation means the recursion broke.
    for (std::size_t j = 0; j < n_pairs; ++j) {
        const bool ok = grid.h_hat[j] < grid.h[j] &&
                        (j + 1 == n_pairs || grid.h[j] < grid.h_hat[j + 1]);
        if (!ok)
            throw std::runtime_error(
                "spectrally_matched_grid: cell width interlacing violated at cell " +
                std::to_string(j + 1) + " (internal error)");
    }
    return grid;
}

}  // namespace lossyrom
