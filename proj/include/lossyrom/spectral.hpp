// spectral.hpp — pole/residue representation of a transfer function, shared
// by the forward solver (exact eigendecomposition path), the rational fitting
// path and the ROM construction.

#pragma once

#include <cstddef>
#include <vector>

#include "lossyrom/types.hpp"

namespace lossyrom {

// Conjugate-pair spectral data: the stored poles are the upper-half-plane
// representatives (Im >= 0; a real pole coincides with its own conjugate and
// is stored with half its residue so the pair sum below stays correct),
// sorted by increasing Im.  Stability requires Re(lambda_j) <= 0.
struct SpectralData {
    std::size_t n_pairs = 0;
    std::vector<cplx> poles;
    std::vector<cplx> residues;
    double zeta0 = 1.0;
};

// Throws std::runtime_error if the invariants do not hold: closed left
// half plane poles, ascending imaginary parts, positive residue sum
// (so the Lanczos normalization constant is positive).
void validate(const SpectralData& data);

// The conjugate pair sum  sum_j [ y_j/(s - lambda_j) + conj(y_j)/(s - conj(lambda_j)) ].
cplx pair_sum(const SpectralData& data, cplx s);

}  // namespace lossyrom
