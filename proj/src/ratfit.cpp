// ratfit.cpp — tail model, band-edge mean-loss estimation, iterative
// rational least squares and reproducible measurement noise.

#include "lossyrom/ratfit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "lossyrom/linalg.hpp"
#include "lossyrom/log.hpp"

namespace lossyrom {

namespace {

constexpr double kPi = std::numbers::pi;

// Pole and residue of tail term j in the asymptotic model.
cplx tail_pole(const TailModel& t, std::size_t j) {
    return cplx(-0.5 * t.r0, (static_cast<double>(j) - 0.5) * kPi / t.t_max);
}

cplx tail_residue(const TailModel& t, std::size_t j) {
    return (t.zeta0 / t.t_max) *
           cplx(1.0, t.r0 * t.t_max / ((2.0 * static_cast<double>(j) - 1.0) * kPi));
}

// Real-pair basis functions for the pole p: partial fractions combined with
// the conjugate so that real coefficients produce a conjugate-symmetric fit.
void pair_basis(cplx s, cplx p, cplx& b1, cplx& b2) {
    const cplx d1 = 1.0 / (s - p);
    const cplx d2 = 1.0 / (s - std::conj(p));
    b1 = d1 + d2;
    b2 = cplx(0.0, 1.0) * (d1 - d2);
}

cplx model_eval(const std::vector<cplx>& poles, const std::vector<cplx>& residues,
                cplx s) {
    cplx acc = 0.0;
    for (std::size_t j = 0; j < poles.size(); ++j) {
        acc += residues[j] / (s - poles[j]);
        acc += std::conj(residues[j]) / (s - std::conj(poles[j]));
    }
    return acc;
}

// Residue-only least squares on the given sample subset; returns the
// residues and the relative l2 misfit on that subset.
std::pair<std::vector<cplx>, double> solve_residues(
    const std::vector<cplx>& s_pts, const std::vector<cplx>& g,
    const std::vector<cplx>& poles, double rcond) {
    const std::size_t ns = s_pts.size();
    const std::size_t m = poles.size();
    Eigen::MatrixXd A(2 * ns, 2 * m);
    Eigen::VectorXd rhs(2 * ns);
    for (std::size_t k = 0; k < ns; ++k) {
        for (std::size_t j = 0; j < m; ++j) {
            cplx b1, b2;
            pair_basis(s_pts[k], poles[j], b1, b2);
            A(long(2 * k), long(2 * j)) = b1.real();
            A(long(2 * k), long(2 * j + 1)) = b2.real();
            A(long(2 * k + 1), long(2 * j)) = b1.imag();
            A(long(2 * k + 1), long(2 * j + 1)) = b2.imag();
        }
        rhs(long(2 * k)) = g[k].real();
        rhs(long(2 * k + 1)) = g[k].imag();
    }
    Eigen::BDCSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    svd.setThreshold(rcond);
    const Eigen::VectorXd x = svd.solve(rhs);

    std::vector<cplx> residues(m);
    for (std::size_t j = 0; j < m; ++j)
        residues[j] = cplx(x(long(2 * j)), x(long(2 * j + 1)));

    double err = 0.0, ref = 0.0;
    for (std::size_t k = 0; k < ns; ++k) {
        err += std::norm(model_eval(poles, residues, s_pts[k]) - g[k]);
        ref += std::norm(g[k]);
    }
    const double misfit = (ref > 0.0) ? std::sqrt(err / ref) : std::sqrt(err);
    return {residues, misfit};
}

}  // namespace

cplx TailModel::eval(cplx s) const {
    // Each conjugate pair collapses: with lam = -r0/2 + i theta_j and
    // y = (zeta0/t_max)(1 + i r0/(2 theta_j)), the cross terms cancel and
    //   y/(s - lam) + conj(y)/(s - conj(lam)) = 2 zeta0 s / (t_max (z^2 + theta_j^2)),
    // where z = s + r0/2.  The series over all j >= 1 is the partial-fraction
    // expansion of tanh, sum_j 2/(z^2 + theta_j^2) = t_max tanh(z t_max)/z,
    // so the tail is that closed form minus the j < j_start head terms.
    // Truncating the series instead would leave a remainder growing linearly
    // in |s| that the in-band fit cannot absorb.
    const cplx z = s + 0.5 * r0;
    const cplx zt = z * t_max;
    cplx full;
    if (std::abs(zt) < 1e-6)
        full = zeta0 * s * t_max * (1.0 - zt * zt / 3.0);
    else
        full = zeta0 * s * std::tanh(zt) / z;
    cplx head = 0.0;
    for (std::size_t j = 1; j < j_start; ++j) {
        const double theta = (static_cast<double>(j) - 0.5) * kPi / t_max;
        head += 1.0 / (z * z + theta * theta);
    }
    return full - (2.0 * zeta0 * s / t_max) * head;
}

TailModel estimate_r0(const TransferSamples& samples, double t_max,
                      double zeta0) {
    if (samples.s_points.size() != samples.values.size() ||
        samples.s_points.size() < 16)
        throw std::invalid_argument("estimate_r0: need at least 16 samples");
    if (!(t_max > 0.0) || !(zeta0 > 0.0))
        throw std::invalid_argument("estimate_r0: t_max and zeta0 must be positive");

    TailModel tail;
    tail.t_max = t_max;
    tail.zeta0 = zeta0;
    tail.j_start =
        static_cast<std::size_t>(std::floor(t_max * samples.omega_max / kPi + 0.5));
    if (tail.j_start < 5)
        throw std::runtime_error(
            "estimate_r0: band too narrow (covers fewer than 5 reference "
            "resonances; widen omega_max)");

    // The outer tenth of the band is dominated by the out-of-band tail.
    std::vector<std::size_t> outer;
    for (std::size_t k = 0; k < samples.s_points.size(); ++k)
        if (std::abs(samples.s_points[k].imag()) >= 0.9 * samples.omega_max)
            outer.push_back(k);
    if (outer.size() < 8)
        throw std::runtime_error("estimate_r0: too few samples in the outer band");

    // The misfit model is the full asymptotic transfer function (every mode
    // approximated by its asymptote, truncated 200 modes past the band), so
    // the in-band resonances near the band edge are represented and the fit
    // is sensitive to r0 through their widths and heights.
    const std::size_t n_model = tail.j_start + 200;
    auto misfit = [&](double r0) {
        TailModel full = tail;
        full.r0 = r0;
        double acc = 0.0;
        for (std::size_t k : outer) {
            cplx model = 0.0;
            for (std::size_t j = 1; j <= n_model; ++j) {
                const cplx lam = tail_pole(full, j);
                const cplx y = tail_residue(full, j);
                model += y / (samples.s_points[k] - lam);
                model += std::conj(y) / (samples.s_points[k] - std::conj(lam));
            }
            acc += std::norm(samples.values[k] - model);
        }
        return acc;
    };
    // The misfit is sharply unimodal near the true mean loss but can have a
    // shallow plateau at strongly overdamped r0, so bracket the global
    // minimum on a coarse grid before refining by golden section.
    const double r_hi = 20.0 / t_max;
    const std::size_t n_grid = 64;
    std::size_t best = 0;
    double best_val = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k <= n_grid; ++k) {
        const double val = misfit(r_hi * double(k) / double(n_grid));
        if (val < best_val) {
            best_val = val;
            best = k;
        }
    }
    const double lo = r_hi * double(best > 0 ? best - 1 : 0) / double(n_grid);
    const double hi =
        r_hi * double(best < n_grid ? best + 1 : n_grid) / double(n_grid);
    const double tol = 1e-5 * r_hi;
    const double r_est = golden_section_min(misfit, lo, hi, tol);
    if (r_est > r_hi - 10.0 * tol)
        throw std::runtime_error(
            "estimate_r0: line search ran into the upper bound 20/t_max "
            "(samples are not consistent with the tail model)");
    tail.r0 = r_est;
    return tail;
}

RationalFit fit_poles_residues(const TransferSamples& samples,
                               const TailModel& tail, std::size_t n_pairs) {
    const std::size_t ns = samples.s_points.size();
    if (n_pairs == 0)
        throw std::invalid_argument("fit_poles_residues: n_pairs must be >= 1");
    if (ns != samples.values.size() || ns < 16)
        throw std::invalid_argument("fit_poles_residues: need at least 16 samples");

    // Internal fit order: enough pairs for every resonance inside the band,
    // never fewer than requested.
    const std::size_t in_band = (tail.j_start > 1) ? tail.j_start - 1 : 1;
    const std::size_t m = std::max(n_pairs, in_band);
    if (2 * ns < 4 * m + 4)
        throw std::invalid_argument(
            "fit_poles_residues: too few samples for the fit order");

    // Tail-subtracted data.
    std::vector<cplx> g(ns);
    for (std::size_t k = 0; k < ns; ++k)
        g[k] = samples.values[k] - tail.eval(samples.s_points[k]);

    // Weight-relocation sweeps run on a strided subsample (the band is
    // heavily oversampled); the final residues use every sample.
    const std::size_t target = std::max<std::size_t>(6 * m, 2000);
    const std::size_t stride = std::max<std::size_t>(1, ns / target);
    std::vector<cplx> s_sub, g_sub;
    for (std::size_t k = 0; k < ns; k += stride) {
        s_sub.push_back(samples.s_points[k]);
        g_sub.push_back(g[k]);
    }
    const std::size_t nss = s_sub.size();

    // Start poles at the reference resonances shifted by the estimated mean
    // loss; the extra small damping keeps the first sweep well conditioned
    // when the loss estimate is zero (poles exactly on the sample axis).
    std::vector<cplx> poles(m);
    const double re_init = -0.5 * tail.r0 - 1e-3 * kPi / tail.t_max;
    for (std::size_t j = 0; j < m; ++j)
        poles[j] = cplx(re_init, (static_cast<double>(j) + 0.5) * kPi / tail.t_max);

    RationalFit fit;
    double prev_misfit = -1.0;
    bool stagnated = false;
    const int max_sweeps = 30;
    for (int sweep = 1; sweep <= max_sweeps; ++sweep) {
        // Linearized system: model coefficients plus barycentric weight
        // coefficients sigma, [N(s) - G(s) (sigma(s) - 1)] = G(s).
        Eigen::MatrixXd A(2 * nss, 4 * m);
        Eigen::VectorXd rhs(2 * nss);
        for (std::size_t k = 0; k < nss; ++k) {
            for (std::size_t j = 0; j < m; ++j) {
                cplx b1, b2;
                pair_basis(s_sub[k], poles[j], b1, b2);
                const cplx w1 = -g_sub[k] * b1;
                const cplx w2 = -g_sub[k] * b2;
                A(long(2 * k), long(2 * j)) = b1.real();
                A(long(2 * k), long(2 * j + 1)) = b2.real();
                A(long(2 * k), long(2 * m + 2 * j)) = w1.real();
                A(long(2 * k), long(2 * m + 2 * j + 1)) = w2.real();
                A(long(2 * k + 1), long(2 * j)) = b1.imag();
                A(long(2 * k + 1), long(2 * j + 1)) = b2.imag();
                A(long(2 * k + 1), long(2 * m + 2 * j)) = w1.imag();
                A(long(2 * k + 1), long(2 * m + 2 * j + 1)) = w2.imag();
            }
            rhs(long(2 * k)) = g_sub[k].real();
            rhs(long(2 * k + 1)) = g_sub[k].imag();
        }
        Eigen::VectorXd x = Eigen::HouseholderQR<Eigen::MatrixXd>(A).solve(rhs);
        if (!x.allFinite())
            x = Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd>(A).solve(rhs);

        // Relocated poles: zeros of sigma, i.e. eigenvalues of the realified
        // state-space matrix of sigma with its feedthrough removed.
        Eigen::MatrixXd relocate = Eigen::MatrixXd::Zero(2 * m, 2 * m);
        for (std::size_t j = 0; j < m; ++j) {
            relocate(long(2 * j), long(2 * j)) = poles[j].real();
            relocate(long(2 * j), long(2 * j + 1)) = poles[j].imag();
            relocate(long(2 * j + 1), long(2 * j)) = -poles[j].imag();
            relocate(long(2 * j + 1), long(2 * j + 1)) = poles[j].real();
            for (std::size_t c = 0; c < 2 * m; ++c)
                relocate(long(2 * j), long(c)) -= 2.0 * x(long(2 * m + c));
        }
        const Eigen::EigenSolver<Eigen::MatrixXd> eig(relocate);

        std::vector<cplx> next;
        std::vector<double> reals;
        for (long k = 0; k < eig.eigenvalues().size(); ++k) {
            const cplx lam(eig.eigenvalues()(k).real(), eig.eigenvalues()(k).imag());
            const double scale = 1.0 + std::abs(lam);
            if (lam.imag() > 1e-12 * scale)
                next.push_back(lam);
            else if (std::abs(lam.imag()) <= 1e-12 * scale)
                reals.push_back(lam.real());
        }
        if (!reals.empty()) {
            // A conjugate pair that collided on the real axis; reseed it as
            // a complex pair around the collision point.
            log::debug("fit_poles_residues: " + std::to_string(reals.size()) +
                       " real relocation eigenvalues, reseeding");
            std::sort(reals.begin(), reals.end());
            for (std::size_t k = 0; k + 1 < reals.size(); k += 2) {
                const double mid = 0.5 * (reals[k] + reals[k + 1]);
                const double split = std::max(0.5 * (reals[k + 1] - reals[k]),
                                              1e-6 * (1.0 + std::abs(mid)));
                next.push_back(cplx(mid, split));
            }
        }
        while (next.size() > m) next.pop_back();
        while (next.size() < m) next.push_back(poles[next.size()]);

        for (cplx& p : next)
            if (p.real() > 0.0) {
                p = cplx(-p.real(), p.imag());
                fit.poles_flipped = true;
            }
        std::sort(next.begin(), next.end(),
                  [](cplx a, cplx b) { return a.imag() < b.imag(); });

        double movement = 0.0;
        for (std::size_t j = 0; j < m; ++j)
            movement = std::max(movement,
                                std::abs(next[j] - poles[j]) / (1.0 + std::abs(poles[j])));
        poles = std::move(next);
        fit.iterations = sweep;

        const double misfit = solve_residues(s_sub, g_sub, poles, 1e-12).second;
        const bool misfit_flat =
            prev_misfit >= 0.0 &&
            std::abs(prev_misfit - misfit) <= 1e-8 * std::max(prev_misfit, 1e-30);
        prev_misfit = misfit;
        if (movement <= 1e-6 || misfit_flat) {
            stagnated = true;
            break;
        }
    }
    if (!stagnated) {
        std::ostringstream msg;
        msg << "fit_poles_residues: pole relocation did not stagnate after "
            << max_sweeps << " sweeps (relative misfit " << prev_misfit << ")";
        throw std::runtime_error(msg.str());
    }

    // Final residues on the full sample set.
    auto [residues, misfit] = solve_residues(samples.s_points, g, poles, 1e-12);
    fit.rel_misfit = misfit;

    std::vector<std::size_t> order(m);
    for (std::size_t j = 0; j < m; ++j) order[j] = j;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return poles[a].imag() < poles[b].imag();
    });

    fit.full.n_pairs = m;
    fit.full.zeta0 = tail.zeta0;
    fit.full.poles.resize(m);
    fit.full.residues.resize(m);
    for (std::size_t j = 0; j < m; ++j) {
        fit.full.poles[j] = poles[order[j]];
        fit.full.residues[j] = residues[order[j]];
    }
    validate(fit.full);

    fit.data.n_pairs = n_pairs;
    fit.data.zeta0 = tail.zeta0;
    fit.data.poles.assign(fit.full.poles.begin(), fit.full.poles.begin() + long(n_pairs));
    fit.data.residues.assign(fit.full.residues.begin(),
                             fit.full.residues.begin() + long(n_pairs));
    validate(fit.data);
    return fit;
}

TransferSamples add_noise(const TransferSamples& samples, double level,
                          std::uint64_t seed) {
    if (level < 0.0)
        throw std::invalid_argument("add_noise: noise level must be nonnegative");
    TransferSamples out = samples;
    if (level == 0.0) return out;
    const std::size_t n = samples.values.size();
    if (n == 0 || samples.s_points.size() != n)
        throw std::invalid_argument("add_noise: empty or inconsistent samples");

    double rms = 0.0;
    for (const cplx& v : samples.values) rms += std::norm(v);
    rms = std::sqrt(rms / static_cast<double>(n));
    const double sigma = level * rms;

    std::mt19937_64 gen(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (std::size_t k = 0; 2 * k + 1 < 2 * n; ++k) {
        const std::size_t hi = n - 1 - k;
        if (k > hi) break;
        if (k == hi) {
            // Center sample (nudged zero frequency): real perturbation only,
            // keeping the sweep conjugate-symmetric.
            out.values[k] += sigma * gauss(gen);
            break;
        }
        if (std::abs(samples.s_points[k] + samples.s_points[hi]) >
            1e-9 * (1.0 + samples.omega_max))
            throw std::invalid_argument(
                "add_noise: samples are not conjugate-symmetric in frequency");
        const cplx z(gauss(gen), gauss(gen));
        const cplx noise = sigma / std::sqrt(2.0) * z;
        out.values[hi] += noise;
        out.values[k] += std::conj(noise);
    }
    return out;
}

}  // namespace lossyrom
