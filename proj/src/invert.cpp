// invert.cpp — impedance estimate, fine-grid eigenbasis, the staggered loss
// system and the explicit loss estimate.

#include "lossyrom/invert.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "lossyrom/linalg.hpp"

namespace lossyrom {

namespace {

void check_shapes(const RomCoefficients& c, const StaggeredGrid& g) {
    const std::size_t n = g.h.size();
    if (n == 0 || g.h_hat.size() != n || c.gammas.size() != n ||
        c.gamma_hats.size() != n || c.r_primary.size() != n ||
        c.r_dual.size() != n)
        throw std::invalid_argument(
            "inversion: grid and ROM coefficients do not share a common n");
}

// Piecewise-constant interpolants of the primary/dual ROM loss coefficients
// as printed: the primary values live on [T_j, T_{j+1}), the dual values on
// [T_hat_{j-1}, T_hat_j), each extended with its last value up to t_max.
PiecewiseConstant primary_interpolant(const std::vector<double>& vals,
                                      const StaggeredGrid& g) {
    const std::size_t n = vals.size();
    std::vector<double> breaks(g.t_primary.begin(), g.t_primary.begin() + long(n));
    breaks.push_back(g.t_max);
    return PiecewiseConstant(std::move(breaks), vals);
}

PiecewiseConstant dual_interpolant(const std::vector<double>& vals,
                                   const StaggeredGrid& g) {
    const std::size_t n = vals.size();
    std::vector<double> breaks(g.t_dual.begin(), g.t_dual.begin() + long(n));
    breaks.push_back(g.t_max);
    return PiecewiseConstant(std::move(breaks), vals);
}

// Exact integral over [a, b] (intersected with [0, t_max]) of the piecewise
// linear function through the fine-grid nodal values.  Linearity within each
// cell makes the result additive under any interval splitting, so tiling an
// interval in different ways yields identical sums to roundoff.
double integrate_nodal(const std::vector<double>& nodal, double d, double t_max,
                       double a, double b) {
    const double lo = std::clamp(a, 0.0, t_max);
    const double hi = std::clamp(b, 0.0, t_max);
    if (hi <= lo) return 0.0;
    const std::size_t last = nodal.size() - 2;  // index of the last full cell
    const auto lerp = [&](double t) {
        const double x = t / d;
        const std::size_t k = std::min(static_cast<std::size_t>(x), last);
        const double w = x - static_cast<double>(k);
        return (1.0 - w) * nodal[k] + w * nodal[k + 1];
    };
    const std::size_t k_lo = std::min(static_cast<std::size_t>(lo / d), last);
    const std::size_t k_hi = std::min(static_cast<std::size_t>(hi / d), last);
    if (k_lo == k_hi) return 0.5 * (hi - lo) * (lerp(lo) + lerp(hi));
    double acc = 0.5 * ((static_cast<double>(k_lo + 1) * d) - lo) *
                 (lerp(lo) + nodal[k_lo + 1]);
    acc += 0.5 * (hi - static_cast<double>(k_hi) * d) * (nodal[k_hi] + lerp(hi));
    for (std::size_t k = k_lo + 1; k < k_hi; ++k)
        acc += 0.5 * d * (nodal[k] + nodal[k + 1]);
    return acc;
}

// Midpoint-rule integral of a dual-node quantity over [a, b] intersected
// with [0, t_max]: each fine cell contributes its overlap length times the
// cell's dual value.
double integrate_dual(const std::vector<double>& dual, double d, double t_max,
                      double a, double b) {
    const double lo = std::clamp(a, 0.0, t_max);
    const double hi = std::clamp(b, 0.0, t_max);
    if (hi <= lo) return 0.0;
    const std::size_t k_lo = static_cast<std::size_t>(lo / d);
    double acc = 0.0;
    for (std::size_t k = k_lo; k < dual.size(); ++k) {
        const double cell_lo = static_cast<double>(k) * d;
        if (cell_lo >= hi) break;
        const double seg = std::min(hi, cell_lo + d) - std::max(lo, cell_lo);
        if (seg > 0.0) acc += seg * dual[k];
    }
    return acc;
}

// One family of the staggered eigenproblem: nodes offset .. M, with the
// first unknown either the boundary node (natural condition, half weight)
// or the first interior node (Dirichlet).
struct Family {
    std::vector<double> frequencies;
    std::vector<std::vector<double>> values;      // nodal, size M + 1
    std::vector<std::vector<double>> companions;  // dual, size M
};

Family solve_family(const std::vector<double>& a, const std::vector<double>& w_inv_zeta,
                    double d, std::size_t n_modes, bool dirichlet_left) {
    const std::size_t m_cells = a.size();
    const std::size_t offset = dirichlet_left ? 1 : 0;
    const std::size_t unknowns = m_cells - offset;
    if (n_modes > unknowns)
        throw std::invalid_argument("eigenbasis: more modes than grid unknowns");

    // Stiffness (flux form) and diagonal mass; the congruence with the
    // inverse square root of the mass turns the generalized problem into a
    // symmetric tridiagonal one.
    std::vector<double> diag(unknowns), off(unknowns - 1);
    for (std::size_t i = 0; i < unknowns; ++i) {
        const std::size_t node = i + offset;
        double k_ii = a[node] / d;           // coupling to the right neighbor
        if (node > 0) k_ii += a[node - 1] / d;
        diag[i] = k_ii / w_inv_zeta[node];
        if (i + 1 < unknowns)
            off[i] = -(a[node] / d) /
                     std::sqrt(w_inv_zeta[node] * w_inv_zeta[node + 1]);
    }
    const SymTridiagEig eig = sym_tridiag_lowest(diag, off, n_modes);

    Family fam;
    fam.frequencies.resize(n_modes);
    fam.values.assign(n_modes, std::vector<double>(m_cells + 1, 0.0));
    fam.companions.assign(n_modes, std::vector<double>(m_cells, 0.0));
    for (std::size_t j = 0; j < n_modes; ++j) {
        if (!(eig.values[j] > 0.0))
            throw std::runtime_error(
                "eigenbasis: nonpositive eigenvalue (solver failure)");
        fam.frequencies[j] = std::sqrt(eig.values[j]);
        std::vector<double>& v = fam.values[j];
        for (std::size_t i = 0; i < unknowns; ++i)
            v[i + offset] =
                eig.vectors[j * unknowns + i] / std::sqrt(w_inv_zeta[i + offset]);
        // Deterministic gauge: first structurally nonzero sample positive.
        if (v[offset] < 0.0)
            for (double& x : v) x = -x;
        std::vector<double>& vh = fam.companions[j];
        for (std::size_t k = 0; k < m_cells; ++k)
            vh[k] = -a[k] * (v[k + 1] - v[k]) / (d * fam.frequencies[j]);
    }
    return fam;
}

}  // namespace

ImpedanceSamples coefficient_samples(const RomCoefficients& c,
                                     const StaggeredGrid& g) {
    check_shapes(c, g);
    const std::size_t n = g.h.size();
    ImpedanceSamples s;
    s.zeta_primary.resize(n);
    s.zeta_dual.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        s.zeta_primary[j] = g.h_hat[j] / c.gamma_hats[j];
        s.zeta_dual[j] = c.gammas[j] / g.h[j];
    }
    return s;
}

PiecewiseLinear impedance_from_rom(const RomCoefficients& c,
                                   const StaggeredGrid& g) {
    const ImpedanceSamples s = coefficient_samples(c, g);
    const std::size_t n = s.zeta_primary.size();
    std::vector<double> nodes, values;
    nodes.reserve(2 * n);
    values.reserve(2 * n);
    for (std::size_t j = 0; j < n; ++j) {
        // Interlaced order: primary node T_j, then dual node T_hat_j.
        nodes.push_back(g.t_primary[j]);
        values.push_back(s.zeta_primary[j]);
        nodes.push_back(g.t_dual[j + 1]);
        values.push_back(s.zeta_dual[j]);
    }
    for (double v : values)
        if (!(v > 0.0))
            throw std::runtime_error(
                "impedance_from_rom: impedance estimate left positive cone");
    return PiecewiseLinear(std::move(nodes), std::move(values));
}

EigenBasis eigenbasis(const std::function<double(double)>& zeta, double t_max,
                      std::size_t n_modes, std::size_t fine_n) {
    if (!(t_max > 0.0))
        throw std::invalid_argument("eigenbasis: t_max must be positive");
    if (n_modes == 0 || fine_n < 2 * n_modes + 2)
        throw std::invalid_argument(
            "eigenbasis: fine grid too coarse for the requested modes");
    const double d = t_max / static_cast<double>(fine_n);

    // Dual-node conductivities and primary-node weights of the fine grid.
    std::vector<double> a(fine_n), w_inv_zeta(fine_n);
    for (std::size_t k = 0; k < fine_n; ++k) {
        const double z_dual = zeta((static_cast<double>(k) + 0.5) * d);
        const double z_node = zeta(static_cast<double>(k) * d);
        if (!(z_dual > 0.0) || !(z_node > 0.0))
            throw std::invalid_argument("eigenbasis: impedance must be positive");
        a[k] = 1.0 / z_dual;
        const double w = (k == 0) ? 0.5 * d : d;
        w_inv_zeta[k] = w / z_node;
    }

    EigenBasis basis;
    basis.t_max = t_max;
    basis.n_modes = n_modes;
    basis.fine_n = fine_n;

    Family neum = solve_family(a, w_inv_zeta, d, n_modes, /*dirichlet_left=*/false);
    basis.theta = std::move(neum.frequencies);
    basis.phi = std::move(neum.values);
    basis.phi_hat = std::move(neum.companions);

    // The Dirichlet family never touches node 0, so its half weight is
    // irrelevant; reuse the same weight vector.
    Family diri = solve_family(a, w_inv_zeta, d, n_modes, /*dirichlet_left=*/true);
    basis.vartheta = std::move(diri.frequencies);
    basis.psi = std::move(diri.values);
    basis.psi_hat = std::move(diri.companions);
    return basis;
}

InversionResult loss_simple(const RomCoefficients& c, const StaggeredGrid& g) {
    check_shapes(c, g);
    InversionResult res;
    res.method = InversionMethod::simple;
    res.zeta_est = impedance_from_rom(c, g);
    res.r_frak = primary_interpolant(c.r_primary, g);
    res.r_frak_hat = dual_interpolant(c.r_dual, g);

    // Pointwise difference of the two interpolants on their merged breaks.
    std::vector<double> breaks;
    breaks.reserve(res.r_frak.breaks.size() + res.r_frak_hat.breaks.size());
    std::merge(res.r_frak.breaks.begin(), res.r_frak.breaks.end(),
               res.r_frak_hat.breaks.begin(), res.r_frak_hat.breaks.end(),
               std::back_inserter(breaks));
    breaks.erase(std::unique(breaks.begin(), breaks.end(),
                             [](double x, double y) {
                                 return std::abs(x - y) <= 1e-14;
                             }),
                 breaks.end());
    std::vector<double> values(breaks.size() - 1);
    double mean = 0.0;
    for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
        const double mid = 0.5 * (breaks[k] + breaks[k + 1]);
        values[k] = res.r_frak(mid) - res.r_frak_hat(mid);
        mean += (res.r_frak(mid) + res.r_frak_hat(mid)) * (breaks[k + 1] - breaks[k]);
    }
    res.mean_loss_est = mean / g.t_max;
    res.loss_est = PiecewiseConstant(std::move(breaks), std::move(values));
    return res;
}

InversionResult loss_direct(const RomCoefficients& c, const StaggeredGrid& g,
                            const EigenBasis& basis, double reg) {
    check_shapes(c, g);
    if (reg < 0.0)
        throw std::invalid_argument("loss_direct: reg must be nonnegative");
    const std::size_t n = g.h.size();
    if (basis.n_modes < n)
        throw std::invalid_argument("loss_direct: basis has fewer modes than n");
    if (std::abs(basis.t_max - g.t_max) > 1e-12 * g.t_max)
        throw std::invalid_argument("loss_direct: basis and grid extents differ");

    const double t_max = g.t_max;
    const double d = basis.step();
    const PiecewiseLinear zeta = impedance_from_rom(c, g);
    const PiecewiseConstant frak = primary_interpolant(c.r_primary, g);
    const PiecewiseConstant frak_hat = dual_interpolant(c.r_dual, g);

    // Impedance on the fine nodes and dual nodes (as used by the basis).
    std::vector<double> zeta_node(basis.fine_n + 1), zeta_dual(basis.fine_n);
    for (std::size_t k = 0; k <= basis.fine_n; ++k)
        zeta_node[k] = zeta(static_cast<double>(k) * d);
    for (std::size_t k = 0; k < basis.fine_n; ++k)
        zeta_dual[k] = zeta((static_cast<double>(k) + 0.5) * d);

    // Unknowns interleaved in spatial order: x = (r_1, rhat_1, ..., r_n,
    // rhat_n), covering [T_l, That_l) and [That_l, T_{l+1}) respectively.
    const std::size_t cols = 2 * n;
    const std::size_t rows = 2 * n;
    std::vector<double> mat(rows * cols, 0.0), rhs(rows, 0.0);

    for (std::size_t fam = 0; fam < 2; ++fam) {
        const auto& values = (fam == 0) ? basis.phi : basis.psi;
        const auto& companions = (fam == 0) ? basis.phi_hat : basis.psi_hat;
        for (std::size_t j = 0; j < n; ++j) {
            const std::size_t row = fam * n + j;
            const std::vector<double>& v = values[j];

            // Nodal integrand v^2 / zeta and the dual integrand
            // zeta * companion^2 of this mode.
            std::vector<double> nodal(v.size());
            for (std::size_t k = 0; k < v.size(); ++k)
                nodal[k] = v[k] * v[k] / zeta_node[k];
            std::vector<double> dual(basis.fine_n);
            for (std::size_t k = 0; k < basis.fine_n; ++k) {
                const double comp = companions[j][k];
                dual[k] = zeta_dual[k] * comp * comp;
            }

            for (std::size_t l = 0; l < n; ++l) {
                mat[row * cols + 2 * l] = integrate_nodal(
                    nodal, d, t_max, g.t_primary[l], g.t_dual[l + 1]);
                // the last dual unknown extends over the tail of the grid,
                // exactly as in the assembled loss estimate below
                const double upper =
                    (l + 1 == n) ? t_max : g.t_primary[l + 1];
                mat[row * cols + 2 * l + 1] = integrate_nodal(
                    nodal, d, t_max, g.t_dual[l + 1], upper);
            }

            double b = 0.0;
            for (std::size_t p = 0; p + 1 < frak.breaks.size(); ++p)
                b += frak.values[p] * integrate_nodal(nodal, d, t_max,
                                                      frak.breaks[p],
                                                      frak.breaks[p + 1]);
            for (std::size_t p = 0; p + 1 < frak_hat.breaks.size(); ++p)
                b += frak_hat.values[p] * integrate_dual(dual, d, t_max,
                                                         frak_hat.breaks[p],
                                                         frak_hat.breaks[p + 1]);
            rhs[row] = b;
        }
    }

    // Optional Tikhonov rows: first differences of the interleaved unknowns.
    std::size_t aug_rows = rows;
    std::vector<double> a_full(mat), b_full(rhs);
    if (reg > 0.0) {
        const double w = std::sqrt(reg);
        aug_rows = rows + cols - 1;
        a_full.resize(aug_rows * cols, 0.0);
        b_full.resize(aug_rows, 0.0);
        for (std::size_t k = 0; k + 1 < cols; ++k) {
            a_full[(rows + k) * cols + k] = -w;
            a_full[(rows + k) * cols + k + 1] = w;
        }
    }

    const LstsqInfo sol = lstsq_svd_info(aug_rows, cols, a_full, b_full, 1e-10);
    if (reg == 0.0 && sol.rank < cols)
        throw std::runtime_error(
            "loss_direct: system numerically singular; retry with reg > 0");

    double resid = 0.0;
    for (std::size_t i = 0; i < rows; ++i) {
        double mx = 0.0;
        for (std::size_t k = 0; k < cols; ++k) mx += mat[i * cols + k] * sol.x[k];
        resid += (mx - rhs[i]) * (mx - rhs[i]);
    }

    InversionResult res;
    res.method = InversionMethod::grid_direct;
    res.reg = reg;
    res.system_residual = std::sqrt(resid);
    res.zeta_est = zeta;
    res.r_frak = frak;
    res.r_frak_hat = frak_hat;

    // Assemble r^(n): r_l on [T_l, That_l), rhat_l on [That_l, T_{l+1}),
    // with the last dual value extended to t_max.
    std::vector<double> breaks, values;
    breaks.push_back(0.0);
    for (std::size_t l = 0; l < n; ++l) {
        values.push_back(sol.x[2 * l]);
        breaks.push_back(g.t_dual[l + 1]);
        values.push_back(sol.x[2 * l + 1]);
        breaks.push_back((l + 1 < n) ? g.t_primary[l + 1] : t_max);
    }
    for (std::size_t k = 1; k < breaks.size(); ++k)
        if (!(breaks[k] > breaks[k - 1]))
            throw std::runtime_error(
                "loss_direct: staggered nodes are not increasing (internal error)");
    res.loss_est = PiecewiseConstant(std::move(breaks), std::move(values));

    double mean = 0.0;
    for (std::size_t k = 0; k + 1 < res.loss_est.breaks.size(); ++k)
        mean += res.loss_est.values[k] *
                (res.loss_est.breaks[k + 1] - res.loss_est.breaks[k]);
    res.mean_loss_est = mean / t_max;
    return res;
}

}  // namespace lossyrom
