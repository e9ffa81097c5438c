// forward.hpp — staggered finite-difference forward model for the lossy wave
// system in travel-time coordinates, its boundary transfer function
// D(s) = u(0, s), frequency sweeps along the imaginary axis, and the exact
// pole/residue decomposition of the discrete transfer function.

#pragma once

#include <cstddef>
#include <vector>

#include "lossyrom/media.hpp"
#include "lossyrom/spectral.hpp"
#include "lossyrom/types.hpp"

namespace lossyrom {

// Discrete operator on the staggered grid with n_cells primary/dual cells of
// width tau = t_max / n_cells.  The state interleaves primary and dual
// unknowns, so the matrix is real tridiagonal of size 2*n_cells; the sign
// matrix J = diag(1, -1, 1, -1, ...) multiplies s in the resolvent.
struct FdOperator {
    std::size_t n_cells = 0;
    double t_max = 0.0;
    double tau = 0.0;
    double zeta0 = 1.0;

    // bands of the real tridiagonal matrix (sizes 2n, 2n-1, 2n-1)
    std::vector<double> diag;
    std::vector<double> sub;
    std::vector<double> super;

    // cell coefficients: gammas[j] = tau * zeta(dual node j),
    // gamma_hats[j] = dual-cell width / zeta(primary node j); the first dual
    // cell has half width.
    std::vector<double> gammas;
    std::vector<double> gamma_hats;
};

FdOperator assemble_fd(const MediumProfile& medium, std::size_t n_cells);

// Transfer function of the discrete operator at Laplace frequency s:
// solve (T + s J) U = e_1 / gamma_hat_1 and return U_1.  Throws when s sits
// numerically on a discrete pole.
cplx eval_transfer(const FdOperator& op, cplx s);

// A frequency sweep: samples of D at s_k on the imaginary axis.
struct TransferSamples {
    double omega_max = 0.0;
    std::vector<cplx> s_points;
    std::vector<cplx> values;
};

// Equispaced sweep over omega in [-omega_max, omega_max] with n_samples
// points (s = i omega; an exact zero frequency is nudged to s = 1e-8 i).
TransferSamples sample_transfer(const FdOperator& op, double omega_max,
                                std::size_t n_samples, unsigned n_threads = 1);

// Exact poles and residues of the discrete transfer function via a dense
// eigendecomposition; returns the n_pairs representatives of lowest |Im|.
// Requires n_pairs <= n_cells.
SpectralData exact_spectral_data(const FdOperator& op, std::size_t n_pairs);

}  // namespace lossyrom
