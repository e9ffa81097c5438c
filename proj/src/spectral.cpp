// spectral.cpp — invariant checks and pair-sum evaluation for spectral data.

#include "lossyrom/spectral.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace lossyrom {

void validate(const SpectralData& data) {
    if (data.n_pairs == 0)
        throw std::runtime_error("spectral data: need at least one pole pair");
    if (data.poles.size() != data.n_pairs || data.residues.size() != data.n_pairs)
        throw std::runtime_error("spectral data: pole/residue count mismatch");
    if (!(data.zeta0 > 0.0))
        throw std::runtime_error("spectral data: boundary impedance must be positive");

    double residue_sum = 0.0;
    for (std::size_t j = 0; j < data.n_pairs; ++j) {
        const cplx lam = data.poles[j];
        const double scale = 1.0 + std::abs(lam);
        if (lam.real() > 1e-10 * scale)
            throw std::runtime_error("spectral data: pole " + std::to_string(j) +
                                     " lies in the right half plane (unstable)");
        if (lam.imag() < -1e-10 * scale)
            throw std::runtime_error("spectral data: pole " + std::to_string(j) +
                                     " is not an upper-half-plane representative");
        if (j > 0 && lam.imag() < data.poles[j - 1].imag() - 1e-10 * scale)
            throw std::runtime_error("spectral data: poles not sorted by increasing Im");
        residue_sum += 2.0 * data.residues[j].real();
    }
    if (!(residue_sum > 0.0))
        throw std::runtime_error("spectral data: residue real parts sum to a nonpositive value");
}

cplx pair_sum(const SpectralData& data, cplx s) {
    cplx acc = 0.0;
    for (std::size_t j = 0; j < data.n_pairs; ++j) {
        acc += data.residues[j] / (s - data.poles[j]);
        acc += std::conj(data.residues[j]) / (s - std::conj(data.poles[j]));
    }
    return acc;
}

}  // namespace lossyrom
