#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "lossyrom/forward.hpp"
#include "lossyrom/grid.hpp"
#include "lossyrom/invert.hpp"
#include "lossyrom/media.hpp"
#include "lossyrom/rom.hpp"
#include "lossyrom/spectral.hpp"

using namespace lossyrom;

namespace {

constexpr double kPi = 3.14159265358979323846;

RomCoefficients pipeline_coefficients(const MediumProfile& m, std::size_t fd_cells,
                                      std::size_t n_pairs) {
    const SpectralData data = exact_spectral_data(assemble_fd(m, fd_cells), n_pairs);
    return extract_coefficients(lanczos(data));
}

MediumProfile constant_medium(double zeta0, double r0) {
    ProfileParams p;
    p.zeta_base = zeta0;
    p.loss_base = r0;
    return make_profile(ProfileKind::constant, p);
}

// Exact integral over [a, b] (clipped to [0, t_max]) of the piecewise linear
// interpolant through nodal samples on a uniform grid of step d.  Written
// cell by cell, independently of the library's quadrature helpers; exactness
// of the trapezoid rule on linear pieces makes the two agree to roundoff.
double integral_lerp(const std::vector<double>& f, double d, double t_max,
                     double a, double b) {
    a = std::max(a, 0.0);
    b = std::min(b, t_max);
    if (b <= a) return 0.0;
    const auto at = [&](double t) {
        const std::size_t k =
            std::min(static_cast<std::size_t>(t / d), f.size() - 2);
        const double w = t / d - static_cast<double>(k);
        return (1.0 - w) * f[k] + w * f[k + 1];
    };
    double acc = 0.0;
    for (std::size_t k = 0; k + 1 < f.size(); ++k) {
        const double lo = std::max(a, static_cast<double>(k) * d);
        const double hi = std::min(b, static_cast<double>(k + 1) * d);
        if (hi > lo) acc += 0.5 * (hi - lo) * (at(lo) + at(hi));
    }
    return acc;
}

// Midpoint-rule integral of per-cell (dual) samples over [a, b].
double integral_mid(const std::vector<double>& f, double d, double t_max,
                    double a, double b) {
    a = std::max(a, 0.0);
    b = std::min(b, t_max);
    double acc = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k) {
        const double lo = std::max(a, static_cast<double>(k) * d);
        const double hi = std::min(b, static_cast<double>(k + 1) * d);
        if (hi > lo) acc += (hi - lo) * f[k];
    }
    return acc;
}

// Dense Gaussian elimination with partial pivoting (row-major A, size n).
std::vector<double> solve_dense(std::vector<double> A, std::vector<double> b) {
    const std::size_t n = b.size();
    for (std::size_t p = 0; p < n; ++p) {
        std::size_t piv = p;
        for (std::size_t i = p + 1; i < n; ++i)
            if (std::abs(A[i * n + p]) > std::abs(A[piv * n + p])) piv = i;
        if (piv != p) {
            for (std::size_t k = 0; k < n; ++k)
                std::swap(A[p * n + k], A[piv * n + k]);
            std::swap(b[p], b[piv]);
        }
        for (std::size_t i = p + 1; i < n; ++i) {
            const double m = A[i * n + p] / A[p * n + p];
            for (std::size_t k = p; k < n; ++k) A[i * n + k] -= m * A[p * n + k];
            b[i] -= m * b[p];
        }
    }
    std::vector<double> x(n);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t k = i + 1; k < n; ++k) s -= A[i * n + k] * x[k];
        x[i] = s / A[i * n + i];
    }
    return x;
}

double rel_l1_error(const PiecewiseLinear& est, const MediumProfile& m) {
    const std::size_t n_samp = 2000;
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k <= n_samp; ++k) {
        const double t = m.t_max * static_cast<double>(k) / double(n_samp);
        const double w = (k == 0 || k == n_samp) ? 0.5 : 1.0;
        num += w * std::abs(est(t) - m.zeta(t));
        den += w * m.zeta(t);
    }
    return num / den;
}

}  // namespace

// ============================================================================
// Impedance estimate
// ============================================================================

TEST_CASE("coefficient samples reproduce constant impedances") {
    const std::size_t n = 8;
    const StaggeredGrid g = spectrally_matched_grid(n, 1.0);

    // The lossless unit medium: its ROM coefficients are the grid widths
    // themselves, so every impedance sample must come back as one.
    const RomCoefficients c_ref =
        extract_coefficients(lanczos(reference_spectral_data(n, 1.0)));
    const ImpedanceSamples s_ref = coefficient_samples(c_ref, g);
    REQUIRE(s_ref.zeta_primary.size() == n);
    REQUIRE(s_ref.zeta_dual.size() == n);
    for (std::size_t j = 0; j < n; ++j) {
        CHECK(std::abs(s_ref.zeta_primary[j] - 1.0) <= 1e-10);
        CHECK(std::abs(s_ref.zeta_dual[j] - 1.0) <= 1e-10);
    }
    const PiecewiseLinear zeta_ref = impedance_from_rom(c_ref, g);
    for (double t : {0.0, 0.17, 0.5, 0.83, 1.0})
        CHECK(std::abs(zeta_ref(t) - 1.0) <= 1e-10);

    // Constant impedance 2: the residues scale by the boundary impedance, so
    // the recovered samples must scale with them.
    const RomCoefficients c2 =
        extract_coefficients(lanczos(reference_spectral_data(n, 1.0, 2.0)));
    const ImpedanceSamples s2 = coefficient_samples(c2, g);
    for (std::size_t j = 0; j < n; ++j) {
        CHECK(std::abs(s2.zeta_primary[j] - 2.0) <= 1e-8);
        CHECK(std::abs(s2.zeta_dual[j] - 2.0) <= 1e-8);
    }
    const PiecewiseLinear zeta2 = impedance_from_rom(c2, g);
    for (double t : {0.0, 0.3, 0.77, 1.0})
        CHECK(std::abs(zeta2(t) - 2.0) <= 1e-8);

    // Through the discretized forward map the same medium picks up grid
    // dispersion in the data, which shows up as a small impedance wobble.
    const RomCoefficients c_fd =
        pipeline_coefficients(constant_medium(2.0, 0.0), 600, n);
    const ImpedanceSamples s_fd = coefficient_samples(c_fd, g);
    for (std::size_t j = 0; j < n; ++j) {
        CHECK(std::abs(s_fd.zeta_primary[j] - 2.0) <= 5e-4);
        CHECK(std::abs(s_fd.zeta_dual[j] - 2.0) <= 5e-4);
    }
}

TEST_CASE("the impedance estimate tightens as the model order grows") {
    ProfileParams p;
    p.zeta_bumps = {{0.45, 0.3, 0.07}};
    p.loss_bumps = {{0.5, -0.3, 0.08}};
    const MediumProfile m = make_profile(ProfileKind::smooth, p);

    const RomCoefficients c10 = pipeline_coefficients(m, 600, 10);
    const RomCoefficients c40 = pipeline_coefficients(m, 800, 40);
    const double e10 = rel_l1_error(
        impedance_from_rom(c10, spectrally_matched_grid(10, m.t_max)), m);
    const double e40 = rel_l1_error(
        impedance_from_rom(c40, spectrally_matched_grid(40, m.t_max)), m);

    CHECK(e40 < e10);
    CHECK(e40 <= 0.05);
}

// ============================================================================
// Eigenbasis
// ============================================================================

TEST_CASE("the unit-impedance eigenbasis is the exact staggered trig family") {
    const std::size_t n_modes = 8, fine_n = 400;
    const double d = 1.0 / static_cast<double>(fine_n);
    const EigenBasis basis =
        eigenbasis([](double) { return 1.0; }, 1.0, n_modes, fine_n);
    REQUIRE(basis.theta.size() == n_modes);
    REQUIRE(basis.phi.size() == n_modes);
    const double amp = std::sqrt(2.0);

    for (std::size_t j = 0; j < n_modes; ++j) {
        const double theta_c = (static_cast<double>(j) + 0.5) * kPi;
        const double vartheta_c = static_cast<double>(j + 1) * kPi;

        // Stored frequencies are the grid-dispersed values (2/d) sin(w d / 2),
        // which approach the continuum multiples of pi as the grid refines.
        const double theta_d = 2.0 / d * std::sin(0.5 * theta_c * d);
        const double vartheta_d = 2.0 / d * std::sin(0.5 * vartheta_c * d);
        CHECK(std::abs(basis.theta[j] - theta_d) <= 1e-10 * theta_d);
        CHECK(std::abs(basis.vartheta[j] - vartheta_d) <= 1e-10 * vartheta_d);
        CHECK(std::abs(basis.theta[j] - theta_c) <= 1e-3 * theta_c);
        CHECK(std::abs(basis.vartheta[j] - vartheta_c) <= 1e-3 * vartheta_c);

        REQUIRE(basis.phi[j].size() == fine_n + 1);
        REQUIRE(basis.psi[j].size() == fine_n + 1);
        REQUIRE(basis.phi_hat[j].size() == fine_n);
        REQUIRE(basis.psi_hat[j].size() == fine_n);

        // Nodal values are exactly the scaled cosine/sine samples; the gauge
        // makes the first structurally nonzero sample positive.
        CHECK(basis.phi[j][0] > 0.0);
        CHECK(basis.psi[j][1] > 0.0);
        CHECK(basis.psi[j][0] == 0.0);
        double dev_phi = 0.0, dev_psi = 0.0, dev_phi_hat = 0.0, dev_psi_hat = 0.0;
        for (std::size_t k = 0; k <= fine_n; ++k) {
            const double t = static_cast<double>(k) * d;
            dev_phi = std::max(dev_phi,
                               std::abs(basis.phi[j][k] - amp * std::cos(theta_c * t)));
            dev_psi = std::max(dev_psi,
                               std::abs(basis.psi[j][k] - amp * std::sin(vartheta_c * t)));
        }
        for (std::size_t k = 0; k < fine_n; ++k) {
            const double t = (static_cast<double>(k) + 0.5) * d;
            dev_phi_hat = std::max(
                dev_phi_hat, std::abs(basis.phi_hat[j][k] - amp * std::sin(theta_c * t)));
            dev_psi_hat = std::max(
                dev_psi_hat, std::abs(basis.psi_hat[j][k] + amp * std::cos(vartheta_c * t)));
        }
        CHECK(dev_phi <= 1e-9);
        CHECK(dev_psi <= 1e-9);
        CHECK(dev_phi_hat <= 1e-8);
        CHECK(dev_psi_hat <= 1e-8);
    }
}

TEST_CASE("the eigenbasis stays orthonormal under a variable impedance") {
    const auto zeta = [](double t) {
        return 1.0 + 0.3 * std::exp(-0.5 * (t - 0.4) * (t - 0.4) / (0.1 * 0.1)) +
               0.2 * std::exp(-0.5 * (t - 0.75) * (t - 0.75) / (0.06 * 0.06));
    };
    const std::size_t n_modes = 90, fine_n = 3000;
    const double d = 1.0 / static_cast<double>(fine_n);
    const EigenBasis basis = eigenbasis(zeta, 1.0, n_modes, fine_n);

    // Independent weighted Gram sums: 1/zeta weights on the nodes (half
    // weight at the natural boundary) and zeta weights on the midpoints.
    std::vector<double> w_node(fine_n), w_mid(fine_n);
    for (std::size_t k = 0; k < fine_n; ++k) {
        w_node[k] = ((k == 0) ? 0.5 * d : d) / zeta(static_cast<double>(k) * d);
        w_mid[k] = d * zeta((static_cast<double>(k) + 0.5) * d);
    }
    const auto max_gram_dev = [&](const std::vector<std::vector<double>>& fam,
                                  const std::vector<double>& w) {
        double dev = 0.0;
        for (std::size_t j = 0; j < n_modes; ++j)
            for (std::size_t l = j; l < n_modes; ++l) {
                double g = 0.0;
                for (std::size_t k = 0; k < fine_n; ++k)
                    g += w[k] * fam[j][k] * fam[l][k];
                dev = std::max(dev, std::abs(g - (j == l ? 1.0 : 0.0)));
            }
        return dev;
    };
    CHECK(max_gram_dev(basis.phi, w_node) <= 1e-6);
    CHECK(max_gram_dev(basis.psi, w_node) <= 1e-6);
    CHECK(max_gram_dev(basis.phi_hat, w_mid) <= 1e-6);
    CHECK(max_gram_dev(basis.psi_hat, w_mid) <= 1e-6);

    // The two frequency families interlace strictly.
    for (std::size_t j = 0; j < n_modes; ++j) {
        CHECK(basis.theta[j] > 0.0);
        CHECK(basis.vartheta[j] > basis.theta[j]);
        if (j + 1 < n_modes) CHECK(basis.theta[j + 1] > basis.vartheta[j]);
    }
}

// ============================================================================
// Loss estimates
// ============================================================================

TEST_CASE("direct and simple loss estimates are exact for constant loss") {
    const std::size_t n = 8;
    const double r0 = 0.8;
    const RomCoefficients c = pipeline_coefficients(constant_medium(1.0, r0), 600, n);
    const StaggeredGrid g = spectrally_matched_grid(n, 1.0);
    const PiecewiseLinear zeta_est = impedance_from_rom(c, g);
    const EigenBasis basis =
        eigenbasis([&](double t) { return zeta_est(t); }, 1.0, n, 3000);

    const InversionResult direct = loss_direct(c, g, basis, 0.0);
    CHECK(direct.method == InversionMethod::grid_direct);
    CHECK(direct.reg == 0.0);
    CHECK(direct.system_residual <= 1e-8);
    CHECK(std::abs(direct.mean_loss_est - r0) <= 1e-6);
    for (int k = 0; k <= 20; ++k) {
        const double t = static_cast<double>(k) / 20.0;
        CHECK(std::abs(direct.loss_est(t) - r0) <= 1e-6);
    }

    const InversionResult simple = loss_simple(c, g);
    CHECK(simple.method == InversionMethod::simple);
    CHECK(std::abs(simple.mean_loss_est - r0) <= 1e-8);
    for (int k = 0; k <= 20; ++k) {
        const double t = static_cast<double>(k) / 20.0;
        CHECK(std::abs(simple.loss_est(t) - r0) <= 1e-8);
        CHECK(std::abs(simple.r_frak(t) - r0) <= 1e-8);
        CHECK(std::abs(simple.r_frak_hat(t)) <= 1e-8);
    }
}

TEST_CASE("the assembled loss system matches a direct trigonometric assembly") {
    // With unit impedance the eigenbasis is the trig family, so the whole
    // 2n-by-2n system can be rebuilt from scratch out of sine/cosine samples
    // and elementary quadrature, then solved by dense elimination.
    const std::size_t n = 4, fine_n = 2000;
    const double d = 1.0 / static_cast<double>(fine_n);
    const StaggeredGrid g = spectrally_matched_grid(n, 1.0);
    RomCoefficients c;
    c.gammas = g.h;
    c.gamma_hats = g.h_hat;
    c.r_primary = {0.9, 1.1, 1.0, 0.95};
    c.r_dual = {0.05, -0.03, 0.02, 0.0};
    const EigenBasis basis =
        eigenbasis([](double) { return 1.0; }, 1.0, n, fine_n);
    const InversionResult res = loss_direct(c, g, basis, 0.0);

    // Column intervals of the staggered unknowns and the break layout of the
    // given coefficient interpolants.
    std::vector<double> col_lo(2 * n), col_hi(2 * n);
    for (std::size_t l = 0; l < n; ++l) {
        col_lo[2 * l] = g.t_primary[l];
        col_hi[2 * l] = g.t_dual[l + 1];
        col_lo[2 * l + 1] = g.t_dual[l + 1];
        col_hi[2 * l + 1] = (l + 1 < n) ? g.t_primary[l + 1] : 1.0;
    }
    std::vector<double> frak_breaks(g.t_primary.begin(), g.t_primary.begin() + n);
    frak_breaks.push_back(1.0);
    std::vector<double> frak_hat_breaks(g.t_dual.begin(), g.t_dual.begin() + n);
    frak_hat_breaks.push_back(1.0);

    std::vector<double> A(4 * n * n, 0.0), b(2 * n, 0.0);
    const double amp2 = 2.0;
    for (std::size_t fam = 0; fam < 2; ++fam) {
        for (std::size_t j = 0; j < n; ++j) {
            const double w = (fam == 0) ? (static_cast<double>(j) + 0.5) * kPi
                                        : static_cast<double>(j + 1) * kPi;
            std::vector<double> nodal(fine_n + 1), dual(fine_n);
            for (std::size_t k = 0; k <= fine_n; ++k) {
                const double v = (fam == 0) ? std::cos(w * static_cast<double>(k) * d)
                                            : std::sin(w * static_cast<double>(k) * d);
                nodal[k] = amp2 * v * v;
            }
            for (std::size_t k = 0; k < fine_n; ++k) {
                const double t = (static_cast<double>(k) + 0.5) * d;
                const double v = (fam == 0) ? std::sin(w * t) : std::cos(w * t);
                dual[k] = amp2 * v * v;
            }
            const std::size_t row = fam * n + j;
            for (std::size_t col = 0; col < 2 * n; ++col)
                A[row * 2 * n + col] =
                    integral_lerp(nodal, d, 1.0, col_lo[col], col_hi[col]);
            for (std::size_t p = 0; p < n; ++p) {
                b[row] += c.r_primary[p] * integral_lerp(nodal, d, 1.0,
                                                         frak_breaks[p],
                                                         frak_breaks[p + 1]);
                b[row] += c.r_dual[p] * integral_mid(dual, d, 1.0,
                                                     frak_hat_breaks[p],
                                                     frak_hat_breaks[p + 1]);
            }
        }
    }
    const std::vector<double> x = solve_dense(A, b);

    REQUIRE(res.loss_est.values.size() == 2 * n);
    REQUIRE(res.loss_est.breaks.size() == 2 * n + 1);
    CHECK(res.loss_est.breaks.front() == 0.0);
    for (std::size_t l = 0; l < n; ++l) {
        CHECK(std::abs(res.loss_est.breaks[2 * l + 1] - g.t_dual[l + 1]) <= 1e-14);
        const double upper = (l + 1 < n) ? g.t_primary[l + 1] : 1.0;
        CHECK(std::abs(res.loss_est.breaks[2 * l + 2] - upper) <= 1e-14);
    }
    for (std::size_t k = 0; k < 2 * n; ++k)
        CHECK(std::abs(res.loss_est.values[k] - x[k]) <= 1e-8);

    double mean = 0.0;
    for (std::size_t k = 0; k < 2 * n; ++k)
        mean += x[k] * (res.loss_est.breaks[k + 1] - res.loss_est.breaks[k]);
    CHECK(std::abs(res.mean_loss_est - mean) <= 1e-8);
}

TEST_CASE("an unregularized system at larger n is reported singular") {
    const std::size_t n = 20;
    const double r0 = 0.6;
    const RomCoefficients c = pipeline_coefficients(constant_medium(1.0, r0), 600, n);
    const StaggeredGrid g = spectrally_matched_grid(n, 1.0);
    const PiecewiseLinear zeta_est = impedance_from_rom(c, g);
    const EigenBasis basis =
        eigenbasis([&](double t) { return zeta_est(t); }, 1.0, n, 3000);

    CHECK_THROWS_WITH_AS(loss_direct(c, g, basis, 0.0),
                         "loss_direct: system numerically singular; retry with reg > 0",
                         std::runtime_error);

    // A small Tikhonov weight restores solvability; the difference penalty
    // does not bias a constant profile, so the estimate stays accurate.
    const InversionResult res = loss_direct(c, g, basis, 1e-6);
    CHECK(res.reg == 1e-6);
    CHECK(std::abs(res.mean_loss_est - r0) <= 0.02 * r0);
    for (int k = 0; k <= 20; ++k) {
        const double t = static_cast<double>(k) / 20.0;
        CHECK(std::abs(res.loss_est(t) - r0) <= 0.1 * r0);
    }
}

TEST_CASE("the simple estimate reduces to interpolant arithmetic") {
    const std::size_t n = 3;
    const double t_max = 2.0;
    const StaggeredGrid g = spectrally_matched_grid(n, t_max);
    RomCoefficients c;
    c.gammas = g.h;
    c.gamma_hats = g.h_hat;
    c.r_primary = {2.0, 3.0, 4.0};
    c.r_dual = {0.5, 0.25, 0.0};
    const InversionResult res = loss_simple(c, g);

    // Primary values live on [T_l, T_{l+1}), dual values on
    // [That_{l-1}, That_l), each extended to t_max.
    const auto frak = [&](double t) {
        if (t >= g.t_primary[2]) return 4.0;
        return t >= g.t_primary[1] ? 3.0 : 2.0;
    };
    const auto frak_hat = [&](double t) {
        if (t >= g.t_dual[2]) return 0.0;
        return t >= g.t_dual[1] ? 0.25 : 0.5;
    };
    for (int k = 0; k <= 40; ++k) {
        const double t = t_max * (static_cast<double>(k) + 0.37) / 41.0;
        CHECK(res.r_frak(t) == doctest::Approx(frak(t)).epsilon(1e-13));
        CHECK(res.r_frak_hat(t) == doctest::Approx(frak_hat(t)).epsilon(1e-13));
        CHECK(res.loss_est(t) ==
              doctest::Approx(frak(t) - frak_hat(t)).epsilon(1e-13));
    }

    double mean = 0.0;
    const std::size_t n_samp = 200000;  // riemann sum over the step functions
    for (std::size_t k = 0; k < n_samp; ++k) {
        const double t = t_max * (static_cast<double>(k) + 0.5) / double(n_samp);
        mean += frak(t) + frak_hat(t);
    }
    mean *= t_max / double(n_samp) / t_max;
    CHECK(std::abs(res.mean_loss_est - mean) <= 1e-4);

    for (double t : {0.0, 0.8, 1.6, 2.0})
        CHECK(std::abs(res.zeta_est(t) - 1.0) <= 1e-12);
}

// ============================================================================
// Input validation
// ============================================================================

TEST_CASE("inversion entry points validate their inputs") {
    const StaggeredGrid g = spectrally_matched_grid(4, 1.0);
    RomCoefficients c;
    c.gammas = g.h;
    c.gamma_hats = g.h_hat;
    c.r_primary = {0.1, 0.1, 0.1, 0.1};
    c.r_dual = {0.0, 0.0, 0.0, 0.0};

    RomCoefficients bad = c;
    bad.r_dual.pop_back();
    CHECK_THROWS_WITH_AS(coefficient_samples(bad, g),
                         "inversion: grid and ROM coefficients do not share a common n",
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(loss_simple(bad, g),
                         "inversion: grid and ROM coefficients do not share a common n",
                         std::invalid_argument);

    RomCoefficients neg = c;
    neg.gammas[1] = -neg.gammas[1];
    CHECK_THROWS_WITH_AS(impedance_from_rom(neg, g),
                         "impedance_from_rom: impedance estimate left positive cone",
                         std::runtime_error);

    const auto unit = [](double) { return 1.0; };
    CHECK_THROWS_WITH_AS(eigenbasis(unit, -1.0, 4, 100),
                         "eigenbasis: t_max must be positive", std::invalid_argument);
    CHECK_THROWS_WITH_AS(eigenbasis(unit, 1.0, 0, 100),
                         "eigenbasis: fine grid too coarse for the requested modes",
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(eigenbasis(unit, 1.0, 5, 11),
                         "eigenbasis: fine grid too coarse for the requested modes",
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(eigenbasis([](double) { return -1.0; }, 1.0, 4, 100),
                         "eigenbasis: impedance must be positive",
                         std::invalid_argument);

    const EigenBasis basis = eigenbasis(unit, 1.0, 4, 100);
    CHECK_THROWS_WITH_AS(loss_direct(c, g, basis, -1e-3),
                         "loss_direct: reg must be nonnegative", std::invalid_argument);

    const EigenBasis small = eigenbasis(unit, 1.0, 3, 100);
    CHECK_THROWS_WITH_AS(loss_direct(c, g, small, 0.0),
                         "loss_direct: basis has fewer modes than n",
                         std::invalid_argument);

    const EigenBasis stretched = eigenbasis(unit, 2.0, 4, 100);
    CHECK_THROWS_WITH_AS(loss_direct(c, g, stretched, 0.0),
                         "loss_direct: basis and grid extents differ",
                         std::invalid_argument);
}
