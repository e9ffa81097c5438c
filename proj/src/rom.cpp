// rom.cpp — bilinear Lanczos recursion on spectral data, extraction of the
// staggered cell coefficients, and ROM transfer evaluation.

#include "lossyrom/rom.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "lossyrom/linalg.hpp"

namespace lossyrom {

namespace {

// Bilinear (non-conjugated) dot product u^T v.
cplx bilinear(const std::vector<cplx>& u, const std::vector<cplx>& v) {
    cplx acc = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) acc += u[k] * v[k];
    return acc;
}

double euclid_sq(const std::vector<cplx>& v) {
    double acc = 0.0;
    for (const cplx& z : v) acc += std::norm(z);
    return acc;
}

// The recurrence coefficients are real in exact arithmetic; enforce that by
// dropping imaginary parts after checking they are small relative to the
// value or to the natural scale of the data.
double take_real(cplx z, double scale, const char* what, std::size_t step) {
    if (std::abs(z.imag()) > 1e-8 * std::max(std::abs(z), scale))
        throw std::runtime_error("lanczos: " + std::string(what) + " at step " +
                                 std::to_string(step) +
                                 " is not real (Im = " + std::to_string(z.imag()) + ")");
    return z.real();
}

}  // namespace

RomMatrix lanczos(const SpectralData& data, std::optional<bool> reorthogonalize) {
    validate(data);
    const std::size_t n = data.n_pairs;
    const std::size_t m = 2 * n;
    const bool reorth = reorthogonalize.value_or(n > 20);

    double residue_sum = 0.0;
    double lam_scale = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        residue_sum += 2.0 * data.residues[j].real();
        lam_scale = std::max(lam_scale, std::abs(data.poles[j]));
    }
    if (!(residue_sum > 0.0))
        throw std::runtime_error("lanczos: residue real parts sum to zero");
    const double gamma_hat_1 = 1.0 / residue_sum;
    lam_scale = std::max(lam_scale, 1e-300);

    // Diagonal multiplier: -lambda on the first block, -conj(lambda) on the
    // second, so the two halves of every vector mirror each other.
    std::vector<cplx> lam(m);
    for (std::size_t j = 0; j < n; ++j) {
        lam[j] = -data.poles[j];
        lam[j + n] = -std::conj(data.poles[j]);
    }

    // Starting vector: square roots of the residues with the conjugate
    // mirror in the second block, scaled to unit bilinear norm.
    std::vector<std::vector<cplx>> basis;
    basis.reserve(m);
    {
        std::vector<cplx> y1(m);
        const double scale = std::sqrt(gamma_hat_1);
        for (std::size_t j = 0; j < n; ++j) {
            const cplx root = std::sqrt(data.residues[j]);
            y1[j] = scale * root;
            y1[j + n] = scale * std::conj(root);
        }
        basis.push_back(std::move(y1));
    }

    RomMatrix rom;
    rom.n_pairs = n;
    rom.gamma_hat_1 = gamma_hat_1;
    rom.alphas.reserve(m);
    rom.betas.reserve(m - 1);
    rom.beta_squares.reserve(m - 1);

    // The two blocks of Y_j mirror each other with a sign that flips each
    // time the recursion divides by a purely imaginary beta; track the sign
    // and assert the structure while it is preserved.
    int block_sign = 1;
    bool structured = true;
    auto check_structure = [&](const std::vector<cplx>& y, std::size_t step) {
        if (!structured) return;
        double peak = 0.0;
        for (const cplx& z : y) peak = std::max(peak, std::abs(z));
        for (std::size_t k = 0; k < n; ++k) {
            const cplx expect = double(block_sign) * std::conj(y[k]);
            if (std::abs(y[k + n] - expect) > 1e-10 * peak)
                throw std::runtime_error(
                    "lanczos: conjugate block structure lost at step " +
                    std::to_string(step));
        }
    };
    check_structure(basis[0], 1);

    std::vector<cplx> v(m);
    for (std::size_t k = 0; k < m; ++k) v[k] = lam[k] * basis[0][k];
    rom.alphas.push_back(take_real(bilinear(v, basis[0]), lam_scale, "alpha", 1));
    for (std::size_t k = 0; k < m; ++k) v[k] -= rom.alphas[0] * basis[0][k];

    for (std::size_t step = 2; step <= m; ++step) {
        const cplx b2c = bilinear(v, v);
        const double vnorm2 = euclid_sq(v);
        if (std::abs(b2c) <= 1e-13 * vnorm2)
            throw std::runtime_error("lanczos: breakdown at step " +
                                     std::to_string(step) +
                                     " (bilinear norm vanished)");
        const double b2 = take_real(b2c, lam_scale * lam_scale, "beta^2", step);
        rom.beta_squares.push_back(b2);
        rom.betas.push_back(std::sqrt(std::abs(b2)));
        const cplx beta = std::sqrt(cplx(b2, 0.0));
        if (b2 < 0.0)
            block_sign = -block_sign;  // imaginary beta flips the mirror sign
        else
            structured = false;  // outside the working regime; stop asserting

        std::vector<cplx> y(m);
        for (std::size_t k = 0; k < m; ++k) y[k] = v[k] / beta;
        check_structure(y, step);

        for (std::size_t k = 0; k < m; ++k) v[k] = lam[k] * y[k];
        const double alpha =
            take_real(bilinear(v, y), lam_scale, "alpha", step);
        rom.alphas.push_back(alpha);
        for (std::size_t k = 0; k < m; ++k)
            v[k] -= alpha * y[k] + beta * basis.back()[k];

        basis.push_back(std::move(y));
        if (reorth) {
            // Full bilinear reorthogonalization against every previous
            // vector; cheap at these sizes and keeps the recursion stable
            // for large n.
            for (const std::vector<cplx>& q : basis) {
                const cplx proj = bilinear(q, v);
                for (std::size_t k = 0; k < m; ++k) v[k] -= proj * q[k];
            }
        }
    }
    return rom;
}

RomCoefficients extract_coefficients(const RomMatrix& rom) {
    const std::size_t n = rom.n_pairs;
    if (n == 0 || rom.alphas.size() != 2 * n || rom.beta_squares.size() != 2 * n - 1)
        throw std::invalid_argument("extract_coefficients: malformed ROM matrix");
    if (!(rom.gamma_hat_1 > 0.0))
        throw std::runtime_error("extract_coefficients: nonpositive normalization");

    auto beta_square = [&](std::size_t lanczos_index) {  // beta_j, j >= 2
        const double b2 = rom.beta_squares[lanczos_index - 2];
        if (!(b2 < 0.0))
            throw std::runtime_error(
                "extract_coefficients: ROM leaves the small-loss regime at index " +
                std::to_string(lanczos_index));
        return b2;
    };

    RomCoefficients c;
    c.gammas.resize(n);
    c.gamma_hats.resize(n);
    c.r_primary.resize(n);
    c.r_dual.resize(n);

    double gamma_hat = rom.gamma_hat_1;
    for (std::size_t j = 1; j <= n; ++j) {
        c.gamma_hats[j - 1] = gamma_hat;
        c.r_primary[j - 1] = rom.alphas[2 * j - 2];
        c.r_dual[j - 1] = rom.alphas[2 * j - 1];
        const double gamma = -1.0 / (gamma_hat * beta_square(2 * j));
        c.gammas[j - 1] = gamma;
        if (j < n) gamma_hat = -1.0 / (gamma * beta_square(2 * j + 1));
    }
    return c;
}

cplx eval_rom_transfer(const RomMatrix& rom, cplx s) {
    const std::size_t m = 2 * rom.n_pairs;
    std::vector<cplx> diag(m), off(m - 1);
    for (std::size_t k = 0; k < m; ++k) diag[k] = rom.alphas[k] + s;
    for (std::size_t k = 0; k + 1 < m; ++k)
        off[k] = (rom.beta_squares[k] < 0.0) ? cplx(0.0, rom.betas[k])
                                             : cplx(rom.betas[k], 0.0);
    std::vector<cplx> rhs(m, 0.0);
    rhs[0] = 1.0 / rom.gamma_hat_1;
    return solve_tridiag(off, diag, off, rhs)[0];
}

PassivityReport passivity_scan(const RomMatrix& rom, double omega_max,
                               std::size_t n_scan) {
    if (!(omega_max > 0.0) || n_scan < 2)
        throw std::invalid_argument("passivity_scan: bad scan parameters");
    PassivityReport report;
    report.min_real = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < n_scan; ++k) {
        const double omega = omega_max * static_cast<double>(k) /
                             static_cast<double>(n_scan - 1);
        const double re = eval_rom_transfer(rom, cplx(0.0, omega)).real();
        if (re < report.min_real) {
            report.min_real = re;
            report.argmin_omega = omega;
        }
    }
    return report;
}

}  // namespace lossyrom
