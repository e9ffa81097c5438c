// optim.hpp — the medium-to-ROM forward map (exact and measurement-style
// extraction) and Gauss-Newton refinement of a Fourier-parametrized medium
// matching the data-side ROM coefficients.

#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "lossyrom/invert.hpp"
#include "lossyrom/media.hpp"
#include "lossyrom/rom.hpp"

namespace lossyrom {

enum class ExtractionMode { exact, ratfit };

// Settings of the medium-to-ROM map.  omega_max = 0 picks the default band
// for the ROM order (see default_omega_max); the exact path ignores the
// band and sample count.
struct ForwardSettings {
    std::size_t fd_cells = 3000;
    double omega_max = 0.0;
    std::size_t n_samples = 10000;
    unsigned threads = 1;
};

// Measurement band paired with the ROM order: the tabulated values for
// n = 10, 40, 90 with linear interpolation in between, continued at one
// extra resonance spacing per mode beyond n = 90; scaled by 1/t_max.
double default_omega_max(std::size_t n, double t_max);

// Composition medium -> discrete transfer function -> spectral data ->
// Lanczos -> cell coefficients.  The ratfit mode goes through the sampled
// frequency response, tail estimation and rational fitting instead of the
// exact eigendecomposition.
RomCoefficients forward_to_rom(const MediumProfile& medium, std::size_t n,
                               ExtractionMode mode,
                               const ForwardSettings& settings);

struct GnSettings {
    std::size_t fd_cells = 400;
    std::size_t max_iter = 20;
    double tol = 1e-8;          // relative objective decrease to stop
    double delta = 0.01;        // forward-difference step on the coefficients
    std::size_t max_halvings = 8;
    double svd_cutoff = 1e-8;
    unsigned threads = 1;
    // Diagnostic knob: order in which the four coefficient families enter
    // the residual vector (a symmetric objective makes it irrelevant).
    std::array<int, 4> family_order = {0, 1, 2, 3};
};

struct TraceRow {
    std::size_t iteration = 0;
    double objective = 0.0;
    double step_norm = 0.0;
};

struct OptState {
    FourierMedium medium;
    double objective = 0.0;
    std::size_t iteration = 0;
    RomCoefficients rom_search;
    bool converged = false;
    bool line_search_warning = false;
    std::vector<TraceRow> trace;
};

// Gauss-Newton on the squared coefficient misfit between the data ROM and
// the ROM of the Fourier-parametrized search medium.  The search space has
// floor(n/2) harmonics per field; Jacobian columns are forward differences
// with the configured delta (a probe that produces an invalid medium is
// retried at delta / 10 before erroring).  Steps are damped by halving
// until the objective decreases; running out of halvings ends in a
// converged-with-warning state.
OptState gauss_newton(const RomCoefficients& data_rom, const FourierMedium& init,
                      std::size_t n, const GnSettings& settings);

// Diagnostics used by gauss_newton internally, exposed for verification:
// the residual vector of the four coefficient families (model minus data;
// its squared norm is the objective) and the forward-difference Jacobian.
std::vector<double> gn_residual(const RomCoefficients& data_rom,
                                const FourierMedium& medium, std::size_t n,
                                const GnSettings& settings);

struct JacobianProbe {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> residual;  // at the expansion point
    std::vector<double> jacobian;  // row-major rows x cols
};
JacobianProbe gn_jacobian(const RomCoefficients& data_rom,
                          const FourierMedium& at, std::size_t n,
                          const GnSettings& settings);

}  // namespace lossyrom
