// media.hpp — material profiles for the 1-D layered half space in travel-time
// coordinates: impedance zeta(T) > 0 and loss rate r(T) >= 0 on [0, t_max],
// plus the Fourier parametrization used by the optimization search space.

#pragma once

#include <cstddef>
#include <vector>

#include "lossyrom/types.hpp"

namespace lossyrom {

// Fraction of t_max over which every profile is held exactly constant at each
// end before the interior variation is blended in (cosine taper over a second
// margin of the same width).  Keeps the boundary impedance unambiguous.
inline constexpr double kFlatMarginFraction = 0.02;

// A medium profile sampled on a uniform grid of n_samples points spanning
// [0, t_max].  zeta must be positive everywhere and constant (to 1e-6
// relative) over the flat margins; loss must be nonnegative.
struct MediumProfile {
    double t_max = 1.0;
    SampledFunction zeta;
    SampledFunction loss;
    double zeta0 = 1.0;  // boundary impedance, equal to zeta at T = 0

    MediumProfile() = default;
    MediumProfile(double t_max_, SampledFunction zeta_, SampledFunction loss_);
};

// Splits the loss into a mean level plus a normalized fluctuation:
//   r(T) = r0 + alpha * rho(T),  with  max |rho| = 1  (rho = 0 when alpha = 0).
struct LossDecomposition {
    double r0 = 0.0;
    double alpha = 0.0;
    SampledFunction rho;
};

// Truncated Fourier series on [0, t_max] in the shifted variable
// x = 2 T / t_max - 1, i.e.
//   f(T) = sum_j cos_coeffs[j] * cos(pi j x) + sum_j sin_coeffs[j-1] * sin(pi j x).
// Evaluation is exact (no sampling); make_profile applies the flat-margin
// blend and sampling on top.
struct FourierMedium {
    double t_max = 1.0;
    std::vector<double> zeta_cos;  // j = 0 .. J
    std::vector<double> zeta_sin;  // j = 1 .. J
    std::vector<double> loss_cos;
    std::vector<double> loss_sin;

    double eval_zeta(double t) const;
    double eval_loss(double t) const;
};

enum class ProfileKind { constant, smooth, discontinuous, fourier };

// A Gaussian bump  height * exp(-(T - center)^2 / (2 width^2)).
struct Bump {
    double center = 0.5;
    double height = 0.0;
    double width = 0.05;
};

// Parameters for make_profile; only the fields relevant to the chosen kind
// are consulted.  zeta_base/loss_base are the background levels for the
// constant and smooth kinds.
struct ProfileParams {
    double t_max = 1.0;
    std::size_t n_cells = 3000;  // profile is sampled on n_cells + 1 points

    double zeta_base = 1.0;
    double loss_base = 1.0;

    // smooth: Gaussian bumps added to the background levels
    std::vector<Bump> zeta_bumps;
    std::vector<Bump> loss_bumps;

    // discontinuous: piecewise-constant levels with interior breakpoints;
    // jumps are realized as single-cell linear ramps before blending
    std::vector<double> zeta_breaks;
    std::vector<double> zeta_levels;  // zeta_levels.size() == zeta_breaks.size() + 1
    std::vector<double> loss_breaks;
    std::vector<double> loss_levels;

    // fourier
    FourierMedium fourier;
};

// Builds a validated profile of the requested kind, applying the flat-margin
// blend to the impedance.  The loss is sampled as given (clamped at zero for
// roundoff-level negatives only).
MediumProfile make_profile(ProfileKind kind, const ProfileParams& params);

// Trapezoid average of the loss over [0, t_max].
double mean_loss(const MediumProfile& profile);

// Mean/fluctuation split of the loss samples; recompose_loss inverts it.
LossDecomposition decompose_loss(const MediumProfile& profile);
std::vector<double> recompose_loss(const LossDecomposition& d);

}  // namespace lossyrom
