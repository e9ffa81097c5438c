// ratfit.hpp — measurement-side processing of transfer function samples:
// the asymptotic tail model for out-of-band poles, estimation of the mean
// loss from the band edge, pole/residue extraction by iterative rational
// least squares, and reproducible synthetic noise.

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "lossyrom/forward.hpp"
#include "lossyrom/spectral.hpp"
#include "lossyrom/types.hpp"

namespace lossyrom {

// Asymptotic model of the transfer function tail: pole pairs at
// i (j - 1/2) pi / t_max - r0 / 2 with residues (zeta0 / t_max) *
// (1 + i r0 t_max / ((2j - 1) pi)), summed over every j >= j_start.
// j_start is the first index outside the measured band.  eval sums the
// series in closed form, so there is no truncation error.
struct TailModel {
    double t_max = 1.0;
    double zeta0 = 1.0;
    double r0 = 0.0;
    std::size_t j_start = 1;

    cplx eval(cplx s) const;
};

// Fits r0 by matching the tail model to the outer 10% of the measured band
// (where the response is tail-dominated), minimizing the least squares
// misfit over r0 in [0, 20 / t_max] by golden section.  Requires the band
// to cover at least 5 resonances of the reference medium.
TailModel estimate_r0(const TransferSamples& samples, double t_max,
                      double zeta0);

// Result of the rational fit: `data` holds the requested n_pairs lowest
// pairs, `full` the complete internal fit (order max(n_pairs, number of
// in-band resonances)); rel_misfit is the relative l2 misfit of the full
// fit against the tail-subtracted samples.
struct RationalFit {
    SpectralData data;
    SpectralData full;
    double rel_misfit = 0.0;
    int iterations = 0;
    bool poles_flipped = false;
};

// Iterative rational least squares (barycentric weight relocation) on the
// tail-subtracted samples.  Pole relocation repeats until the poles move by
// less than 1e-6 relative or the misfit stops improving (1e-8); more than
// 30 sweeps without stagnation is an error reporting the final misfit.
// Unstable poles are reflected into the left half plane and flagged.
RationalFit fit_poles_residues(const TransferSamples& samples,
                               const TailModel& tail, std::size_t n_pairs);

// Adds complex Gaussian noise of RMS `level` times the RMS of the samples,
// symmetrized so that conjugate sample pairs stay conjugate.  Deterministic
// in `seed`; level 0 returns the input unchanged.
TransferSamples add_noise(const TransferSamples& samples, double level,
                          std::uint64_t seed);

}  // namespace lossyrom
