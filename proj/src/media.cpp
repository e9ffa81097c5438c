// media.cpp — profile construction, validation and loss decomposition.

#include "lossyrom/media.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

namespace lossyrom {

namespace {

constexpr double kLossRoundoff = 1e-12;   // negatives above this are clamped to 0
constexpr double kMarginRelTol = 1e-6;    // allowed zeta wiggle inside the flat margins

// Wraps f so that the result is exactly constant on [0, m] and
// [t_max - m, t_max] and cosine-blended back to f over the adjacent margin
// of the same width m.
std::function<double(double)> blend_flat(std::function<double(double)> f, double t_max) {
    const double m = kFlatMarginFraction * t_max;
    const double left_value = f(m);
    const double right_value = f(t_max - m);
    return [f = std::move(f), t_max, m, left_value, right_value](double t) {
        if (t <= m) return left_value;
        if (t >= t_max - m) return right_value;
        if (t < 2.0 * m) {
            const double w = 0.5 * (1.0 - std::cos(std::numbers::pi * (t - m) / m));
            return left_value + (f(t) - left_value) * w;
        }
        if (t > t_max - 2.0 * m) {
            const double w = 0.5 * (1.0 - std::cos(std::numbers::pi * (t_max - m - t) / m));
            return right_value + (f(t) - right_value) * w;
        }
        return f(t);
    };
}

SampledFunction sample_on_grid(const std::function<double(double)>& f, double t_max,
                               std::size_t n_cells) {
    SampledFunction s;
    s.t_max = t_max;
    s.values.resize(n_cells + 1);
    const double step = t_max / static_cast<double>(n_cells);
    for (std::size_t k = 0; k <= n_cells; ++k)
        s.values[k] = f(static_cast<double>(k) * step);
    return s;
}

double bump_sum(const std::vector<Bump>& bumps, double base, double t) {
    double v = base;
    for (const Bump& b : bumps) {
        if (!(b.width > 0.0))
            throw std::invalid_argument("make_profile: bump width must be positive");
        const double z = (t - b.center) / b.width;
        v += b.height * std::exp(-0.5 * z * z);
    }
    return v;
}

// Piecewise-constant levels with interior breakpoints; evaluation picks the
// level of the interval containing t.  Jump smearing into one-cell ramps
// happens implicitly through the linear interpolation of the sample grid.
double step_levels(const std::vector<double>& breaks, const std::vector<double>& levels,
                   double t) {
    std::size_t idx = 0;
    while (idx < breaks.size() && t >= breaks[idx]) ++idx;
    return levels[idx];
}

void check_breaks(const std::vector<double>& breaks, const std::vector<double>& levels,
                  double t_max, const char* what) {
    if (levels.empty())
        throw std::invalid_argument(std::string("make_profile: no ") + what + " levels given");
    if (levels.size() != breaks.size() + 1)
        throw std::invalid_argument(std::string("make_profile: ") + what +
                                    " needs one more level than breakpoints");
    const double blend_end = 2.0 * kFlatMarginFraction * t_max;
    for (std::size_t k = 0; k < breaks.size(); ++k) {
        if (k > 0 && !(breaks[k] > breaks[k - 1]))
            throw std::invalid_argument(std::string("make_profile: ") + what +
                                        " breakpoints must be strictly increasing");
        if (!(breaks[k] > blend_end) || !(breaks[k] < t_max - blend_end))
            throw std::invalid_argument(std::string("make_profile: ") + what +
                                        " breakpoint lies inside the blended end margins");
    }
}

}  // namespace

MediumProfile::MediumProfile(double t_max_, SampledFunction zeta_, SampledFunction loss_)
    : t_max(t_max_), zeta(std::move(zeta_)), loss(std::move(loss_)) {
    if (!(t_max > 0.0))
        throw std::invalid_argument("medium profile: t_max must be positive");
    if (zeta.values.size() < 2 || loss.values.size() < 2)
        throw std::invalid_argument("medium profile: need at least 2 samples per field");
    if (std::abs(zeta.t_max - t_max) > 1e-12 * t_max ||
        std::abs(loss.t_max - t_max) > 1e-12 * t_max)
        throw std::invalid_argument("medium profile: sample extents disagree with t_max");
    if (zeta.values.size() != loss.values.size())
        throw std::invalid_argument("medium profile: zeta and loss sample counts differ");

    for (double v : zeta.values)
        if (!(v > 0.0) || !std::isfinite(v))
            throw std::invalid_argument("medium profile: impedance must be positive everywhere");
    for (double& v : loss.values) {
        if (!std::isfinite(v) || v < -kLossRoundoff)
            throw std::invalid_argument("medium profile: loss must be nonnegative everywhere");
        if (v < 0.0) v = 0.0;
    }

    zeta0 = zeta.values.front();
    const double margin = kFlatMarginFraction * t_max;
    const double zeta_end = zeta.values.back();
    const std::size_t n = zeta.values.size();
    for (std::size_t k = 0; k < n; ++k) {
        const double t = zeta.node(k);
        if (t <= margin * (1.0 + 1e-12) && std::abs(zeta.values[k] - zeta0) > kMarginRelTol * zeta0)
            throw std::invalid_argument(
                "medium profile: impedance is not flat over the left end margin");
        if (t >= t_max - margin * (1.0 + 1e-12) &&
            std::abs(zeta.values[k] - zeta_end) > kMarginRelTol * zeta_end)
            throw std::invalid_argument(
                "medium profile: impedance is not flat over the right end margin");
    }
}

double FourierMedium::eval_zeta(double t) const {
    const double x = 2.0 * t / t_max - 1.0;
    double v = 0.0;
    for (std::size_t j = 0; j < zeta_cos.size(); ++j)
        v += zeta_cos[j] * std::cos(std::numbers::pi * static_cast<double>(j) * x);
    for (std::size_t j = 0; j < zeta_sin.size(); ++j)
        v += zeta_sin[j] * std::sin(std::numbers::pi * static_cast<double>(j + 1) * x);
    return v;
}

double FourierMedium::eval_loss(double t) const {
    const double x = 2.0 * t / t_max - 1.0;
    double v = 0.0;
    for (std::size_t j = 0; j < loss_cos.size(); ++j)
        v += loss_cos[j] * std::cos(std::numbers::pi * static_cast<double>(j) * x);
    for (std::size_t j = 0; j < loss_sin.size(); ++j)
        v += loss_sin[j] * std::sin(std::numbers::pi * static_cast<double>(j + 1) * x);
    return v;
}

MediumProfile make_profile(ProfileKind kind, const ProfileParams& params) {
    const double t_max = params.t_max;
    if (!(t_max > 0.0))
        throw std::invalid_argument("make_profile: t_max must be positive");
    if (params.n_cells < 50)
        throw std::invalid_argument(
            "make_profile: need at least 50 cells to resolve the end margins");

    std::function<double(double)> zeta_raw;
    std::function<double(double)> loss_raw;
    switch (kind) {
        case ProfileKind::constant:
            zeta_raw = [&](double) { return params.zeta_base; };
            loss_raw = [&](double) { return params.loss_base; };
            break;
        case ProfileKind::smooth:
            zeta_raw = [&](double t) { return bump_sum(params.zeta_bumps, params.zeta_base, t); };
            loss_raw = [&](double t) { return bump_sum(params.loss_bumps, params.loss_base, t); };
            break;
        case ProfileKind::discontinuous:
            check_breaks(params.zeta_breaks, params.zeta_levels, t_max, "impedance");
            check_breaks(params.loss_breaks, params.loss_levels, t_max, "loss");
            zeta_raw = [&](double t) { return step_levels(params.zeta_breaks, params.zeta_levels, t); };
            loss_raw = [&](double t) { return step_levels(params.loss_breaks, params.loss_levels, t); };
            break;
        case ProfileKind::fourier: {
            FourierMedium f = params.fourier;
            f.t_max = t_max;
            zeta_raw = [f](double t) { return f.eval_zeta(t); };
            loss_raw = [f](double t) { return f.eval_loss(t); };
            break;
        }
    }

    SampledFunction zeta = sample_on_grid(blend_flat(std::move(zeta_raw), t_max), t_max,
                                          params.n_cells);
    SampledFunction loss = sample_on_grid(loss_raw, t_max, params.n_cells);
    return MediumProfile(t_max, std::move(zeta), std::move(loss));
}

double mean_loss(const MediumProfile& profile) {
    const std::vector<double>& v = profile.loss.values;
    const std::size_t n = v.size();
    double acc = 0.5 * (v.front() + v.back());
    for (std::size_t k = 1; k + 1 < n; ++k) acc += v[k];
    return acc / static_cast<double>(n - 1);
}

LossDecomposition decompose_loss(const MediumProfile& profile) {
    LossDecomposition d;
    d.r0 = mean_loss(profile);
    d.rho.t_max = profile.t_max;
    d.rho.values.assign(profile.loss.values.size(), 0.0);
    double peak = 0.0;
    for (double v : profile.loss.values) peak = std::max(peak, std::abs(v - d.r0));
    d.alpha = peak;
    if (peak > 0.0)
        for (std::size_t k = 0; k < d.rho.values.size(); ++k)
            d.rho.values[k] = (profile.loss.values[k] - d.r0) / peak;
    return d;
}

std::vector<double> recompose_loss(const LossDecomposition& d) {
    std::vector<double> out(d.rho.values.size());
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = d.r0 + d.alpha * d.rho.values[k];
    return out;
}

}  // namespace lossyrom
