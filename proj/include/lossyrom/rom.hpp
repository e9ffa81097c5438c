// rom.hpp — structured reduced-order model built from spectral data by a
// non-Hermitian (bilinear-form) Lanczos recursion, conversion of the
// resulting tridiagonal matrix into staggered cell coefficients, and
// evaluation of the ROM transfer function.

#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "lossyrom/spectral.hpp"
#include "lossyrom/types.hpp"

namespace lossyrom {

// Tridiagonal ROM matrix of size 2n produced by the Lanczos recursion: real
// diagonal alphas and off-diagonal entries of magnitude betas[k].  In the
// working regime the squared off-diagonals beta_squares[k] are negative and
// the entries are purely imaginary, i * betas[k]; a nonnegative square is
// kept as computed so the extraction step can report where the sign
// condition fails.  gamma_hat_1 = 1 / (2 sum Re y_j) is the normalization
// constant of the recursion.
struct RomMatrix {
    std::size_t n_pairs = 0;
    std::vector<double> alphas;        // size 2n
    std::vector<double> betas;         // size 2n-1, |off-diagonal|
    std::vector<double> beta_squares;  // size 2n-1, signed squares
    double gamma_hat_1 = 0.0;
};

// Staggered cell coefficients recovered from the ROM matrix: positive cell
// weights gammas/gamma_hats and the primary/dual loss samples.
struct RomCoefficients {
    std::vector<double> gammas;      // size n
    std::vector<double> gamma_hats;  // size n
    std::vector<double> r_primary;   // size n
    std::vector<double> r_dual;      // size n
};

// Runs the bilinear Lanczos recursion on the 2n-vector built from the
// spectral data.  `reorthogonalize` defaults to on for n > 20; full bilinear
// reorthogonalization against all previous vectors is used when enabled.
// Throws on exact breakdown (vanishing bilinear norm) and when the computed
// recurrence coefficients fail their realness checks.
RomMatrix lanczos(const SpectralData& data,
                  std::optional<bool> reorthogonalize = std::nullopt);

// Unwinds the ROM matrix into cell coefficients.  Requires every
// beta_square to be negative; otherwise the data has left the regime where
// the network realization exists and the index is reported.
RomCoefficients extract_coefficients(const RomMatrix& rom);

// Transfer function of the ROM: solve the 2n tridiagonal system
// (A + s I) x = e_1 / gamma_hat_1 and return x_1.
cplx eval_rom_transfer(const RomMatrix& rom, cplx s);

// Minimum of Re D_rom(i omega) over an equispaced scan of [0, omega_max].
struct PassivityReport {
    double min_real = 0.0;
    double argmin_omega = 0.0;
};
PassivityReport passivity_scan(const RomMatrix& rom, double omega_max,
                               std::size_t n_scan);

}  // namespace lossyrom
