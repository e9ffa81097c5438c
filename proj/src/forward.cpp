// forward.cpp — staggered-grid assembly, transfer evaluation and the exact
// spectral decomposition of the discrete forward operator.

#include "lossyrom/forward.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "lossyrom/linalg.hpp"

namespace lossyrom {

FdOperator assemble_fd(const MediumProfile& medium, std::size_t n_cells) {
    if (n_cells < 2)
        throw std::invalid_argument("assemble_fd: need at least 2 cells");

    FdOperator op;
    op.n_cells = n_cells;
    op.t_max = medium.t_max;
    op.tau = medium.t_max / static_cast<double>(n_cells);
    op.zeta0 = medium.zeta0;

    const std::size_t m = 2 * n_cells;
    op.diag.assign(m, 0.0);
    op.sub.assign(m - 1, 0.0);
    op.super.assign(m - 1, 0.0);
    op.gammas.resize(n_cells);
    op.gamma_hats.resize(n_cells);

    for (std::size_t j = 1; j <= n_cells; ++j) {
        const double t_primary = static_cast<double>(j - 1) * op.tau;
        const double t_dual = (static_cast<double>(j) - 0.5) * op.tau;
        op.gammas[j - 1] = op.tau * medium.zeta(t_dual);
        // The first dual cell is a half cell so the boundary node carries
        // half the usual weight.
        const double dual_width = (j == 1) ? 0.5 * op.tau : op.tau;
        op.gamma_hats[j - 1] = dual_width / medium.zeta(t_primary);

        const std::size_t rp = 2 * j - 2;  // primary row (0-based)
        const std::size_t rd = 2 * j - 1;  // dual row
        op.diag[rp] = medium.loss(t_primary);
        op.diag[rd] = 0.0;  // no loss samples on the dual grid
        if (j >= 2) op.sub[rp - 1] = -1.0 / op.gamma_hats[j - 1];
        op.super[rp] = 1.0 / op.gamma_hats[j - 1];
        op.sub[rd - 1] = 1.0 / op.gammas[j - 1];
        if (j < n_cells) op.super[rd] = -1.0 / op.gammas[j - 1];
    }
    return op;
}

cplx eval_transfer(const FdOperator& op, cplx s) {
    const std::size_t m = 2 * op.n_cells;
    std::vector<cplx> diag(m), sub(op.sub.begin(), op.sub.end()),
        super(op.super.begin(), op.super.end());
    for (std::size_t k = 0; k < m; ++k)
        diag[k] = op.diag[k] + ((k % 2 == 0) ? s : -s);

    std::vector<cplx> rhs(m, 0.0);
    rhs[0] = 1.0 / op.gamma_hats[0];
    try {
        return solve_tridiag(sub, diag, super, rhs)[0];
    } catch (const std::runtime_error& e) {
        std::ostringstream msg;
        msg << "eval_transfer at s = (" << s.real() << ", " << s.imag()
            << "): " << e.what();
        throw std::runtime_error(msg.str());
    }
}

TransferSamples sample_transfer(const FdOperator& op, double omega_max,
                                std::size_t n_samples, unsigned n_threads) {
    if (!(omega_max > 0.0))
        throw std::invalid_argument("sample_transfer: omega_max must be positive");
    if (n_samples < 2)
        throw std::invalid_argument("sample_transfer: need at least 2 samples");

    TransferSamples out;
    out.omega_max = omega_max;
    out.s_points.resize(n_samples);
    out.values.resize(n_samples);
    for (std::size_t k = 0; k < n_samples; ++k) {
        double omega = -omega_max + 2.0 * omega_max * static_cast<double>(k) /
                                        static_cast<double>(n_samples - 1);
        // The discrete operator is singular at s = 0 when the medium is
        // lossless, so the zero frequency is nudged off the origin.
        if (std::abs(omega) < 1e-14 * omega_max) omega = 1e-8;
        out.s_points[k] = cplx(0.0, omega);
    }
    parallel_for(n_samples, n_threads, [&](std::size_t k) {
        out.values[k] = eval_transfer(op, out.s_points[k]);
    });
    return out;
}

SpectralData exact_spectral_data(const FdOperator& op, std::size_t n_pairs) {
    const std::size_t n = op.n_cells;
    if (n_pairs == 0 || n_pairs > n)
        throw std::invalid_argument(
            "exact_spectral_data: n_pairs must lie in [1, n_cells]");

    // Poles are the eigenvalues of -J T, a real matrix similar to the
    // resolvent pencil; residues follow from the eigenvectors via the
    // indefinite weight S = diag(gamma_hat_1, -gamma_1, gamma_hat_2, ...)
    // that symmetrizes J T.
    const std::size_t m = 2 * n;
    std::vector<double> b(m * m, 0.0);
    auto sign = [](std::size_t row) { return (row % 2 == 0) ? 1.0 : -1.0; };
    for (std::size_t k = 0; k < m; ++k) {
        b[k + k * m] = -sign(k) * op.diag[k];
        if (k + 1 < m) {
            b[(k + 1) + k * m] = -sign(k + 1) * op.sub[k];    // row k+1, col k
            b[k + (k + 1) * m] = -sign(k) * op.super[k];      // row k, col k+1
        }
    }
    const DenseEig eig = eig_real_general(m, b);

    std::vector<double> weight(m);
    for (std::size_t j = 0; j < n; ++j) {
        weight[2 * j] = op.gamma_hats[j];
        weight[2 * j + 1] = -op.gammas[j];
    }

    std::vector<cplx> poles, residues;
    poles.reserve(n);
    residues.reserve(n);
    for (std::size_t k = 0; k < m; ++k) {
        const cplx lambda = eig.values[k];
        if (lambda.imag() < 0.0) continue;  // keep the upper-half representative
        const cplx* w = eig.vec(k);
        cplx denom = 0.0;
        double denom_scale = 0.0;
        for (std::size_t p = 0; p < m; ++p) {
            denom += weight[p] * w[p] * w[p];
            denom_scale += std::abs(weight[p]) * std::norm(w[p]);
        }
        if (std::abs(denom) <= 1e-13 * denom_scale) {
            std::ostringstream msg;
            msg << "exact_spectral_data: degenerate discrete spectrum "
                   "(defective eigenvector at lambda = (" << lambda.real()
                << ", " << lambda.imag() << "))";
            throw std::runtime_error(msg.str());
        }
        cplx y = (w[0] * w[0]) / denom;
        // A real eigenvalue is its own conjugate partner, so it enters the
        // conjugate-pair sum with half its residue.
        if (lambda.imag() == 0.0) y *= 0.5;
        poles.push_back(lambda);
        residues.push_back(y);
    }
    if (n_pairs > poles.size())
        throw std::runtime_error(
            "exact_spectral_data: requested more pairs than the discrete "
            "spectrum provides");

    // The residues of the full decomposition sum (with conjugates) to
    // 1/gamma_hat_1 exactly; rescale to pin that normalization.
    double total = 0.0;
    for (const cplx& y : residues) total += 2.0 * y.real();
    const double target = 1.0 / op.gamma_hats[0];
    if (!(total > 0.0))
        throw std::runtime_error(
            "exact_spectral_data: residue normalization failed (nonpositive sum)");
    const double rescale = target / total;
    for (cplx& y : residues) y *= rescale;

    std::vector<std::size_t> order(poles.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b2) {
        if (poles[a].imag() != poles[b2].imag())
            return poles[a].imag() < poles[b2].imag();
        return poles[a].real() < poles[b2].real();
    });

    SpectralData data;
    data.n_pairs = n_pairs;
    data.zeta0 = op.zeta0;
    data.poles.resize(n_pairs);
    data.residues.resize(n_pairs);
    for (std::size_t k = 0; k < n_pairs; ++k) {
        data.poles[k] = poles[order[k]];
        data.residues[k] = residues[order[k]];
    }
    validate(data);
    return data;
}

}  // namespace lossyrom
