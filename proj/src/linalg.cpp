#include "lossyrom/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include <complex>
#define LAPACK_COMPLEX_CUSTOM
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include <Eigen/Dense>

namespace lossyrom {

// ============================================================================
// Tridiagonal solve
// ============================================================================

namespace {

// Thomas elimination without pivoting.  Returns false if a pivot is too small
// relative to its row, in which case the caller falls back to zgtsv.
bool thomas(const std::vector<cplx>& sub, const std::vector<cplx>& diag,
            const std::vector<cplx>& super, const std::vector<cplx>& rhs,
            std::vector<cplx>& x) {
    const std::size_t n = diag.size();
    std::vector<cplx> c(n), d(n);
    cplx piv = diag[0];
    double row = std::abs(diag[0]) + (n > 1 ? std::abs(super[0]) : 0.0);
    if (std::abs(piv) <= 1e-14 * row) return false;
    c[0] = (n > 1) ? super[0] / piv : cplx(0.0);
    d[0] = rhs[0] / piv;
    for (std::size_t k = 1; k < n; ++k) {
        piv = diag[k] - sub[k - 1] * c[k - 1];
        row = std::abs(sub[k - 1]) + std::abs(diag[k]) +
              (k + 1 < n ? std::abs(super[k]) : 0.0);
        if (std::abs(piv) <= 1e-14 * row) return false;
        if (k + 1 < n) c[k] = super[k] / piv;
        d[k] = (rhs[k] - sub[k - 1] * d[k - 1]) / piv;
    }
    x.resize(n);
    x[n - 1] = d[n - 1];
    for (std::size_t k = n - 1; k-- > 0;) x[k] = d[k] - c[k] * x[k + 1];
    return true;
}

}  // namespace

std::vector<cplx> solve_tridiag(const std::vector<cplx>& sub,
                                const std::vector<cplx>& diag,
                                const std::vector<cplx>& super,
                                const std::vector<cplx>& rhs) {
    const std::size_t n = diag.size();
    if (sub.size() != n - 1 || super.size() != n - 1 || rhs.size() != n)
        throw std::invalid_argument("solve_tridiag: inconsistent band sizes");

    std::vector<cplx> x;
    if (thomas(sub, diag, super, rhs, x)) return x;

    // Pivoted fallback: LAPACK Gaussian elimination with partial pivoting.
    std::vector<cplx> dl(sub), d(diag), du(super), b(rhs);
    const lapack_int info = LAPACKE_zgtsv(
        LAPACK_COL_MAJOR, lapack_int(n), 1, dl.data(), d.data(), du.data(),
        b.data(), lapack_int(n));
    if (info != 0)
        throw std::runtime_error(
            "solve_tridiag: singular system (s is numerically at a pole of the "
            "discrete operator, zgtsv info=" + std::to_string(info) + ")");
    return b;
}

// ============================================================================
// Dense real eigendecomposition (LAPACK dgeev)
// ============================================================================

DenseEig eig_real_general(std::size_t n, const std::vector<double>& a_colmajor) {
    if (a_colmajor.size() != n * n)
        throw std::invalid_argument("eig_real_general: bad matrix size");
    std::vector<double> a(a_colmajor);  // dgeev destroys its input
    std::vector<double> wr(n), wi(n), vr(n * n);
    const lapack_int info = LAPACKE_dgeev(
        LAPACK_COL_MAJOR, 'N', 'V', lapack_int(n), a.data(), lapack_int(n),
        wr.data(), wi.data(), nullptr, lapack_int(n), vr.data(), lapack_int(n));
    if (info != 0)
        throw std::runtime_error("eig_real_general: dgeev failed, info=" +
                                 std::to_string(info));

    DenseEig out;
    out.n = n;
    out.values.resize(n);
    out.vectors.resize(n * n);
    for (std::size_t j = 0; j < n; ++j) {
        out.values[j] = cplx(wr[j], wi[j]);
        if (wi[j] > 0.0) {
            // Conjugate pair packed as re in column j, im in column j+1.
            for (std::size_t k = 0; k < n; ++k) {
                const cplx v(vr[j * n + k], vr[(j + 1) * n + k]);
                out.vectors[j * n + k] = v;
                out.vectors[(j + 1) * n + k] = std::conj(v);
            }
            ++j;
            out.values[j] = cplx(wr[j], wi[j]);
        } else if (wi[j] == 0.0) {
            for (std::size_t k = 0; k < n; ++k)
                out.vectors[j * n + k] = cplx(vr[j * n + k], 0.0);
        }
        // wi[j] < 0 outside a pair start cannot occur in dgeev output.
    }
    return out;
}

// ============================================================================
// Symmetric tridiagonal eigenpairs (LAPACK dstevr)
// ============================================================================

SymTridiagEig sym_tridiag_lowest(const std::vector<double>& diag,
                                 const std::vector<double>& offdiag,
                                 std::size_t n_lowest) {
    const std::size_t n = diag.size();
    if (offdiag.size() != n - 1)
        throw std::invalid_argument("sym_tridiag_lowest: bad band sizes");
    if (n_lowest == 0 || n_lowest > n)
        throw std::invalid_argument("sym_tridiag_lowest: bad subset size");

    std::vector<double> d(diag), e(offdiag);
    e.resize(n, 0.0);  // dstevr wants length n workspace for the off-diagonal
    std::vector<double> w(n), z(n * n_lowest);
    std::vector<lapack_int> isuppz(2 * n_lowest);
    lapack_int m = 0;
    const lapack_int info = LAPACKE_dstevr(
        LAPACK_COL_MAJOR, 'V', 'I', lapack_int(n), d.data(), e.data(), 0.0, 0.0,
        1, lapack_int(n_lowest), 0.0, &m, w.data(), z.data(), lapack_int(n),
        isuppz.data());
    if (info != 0 || std::size_t(m) != n_lowest)
        throw std::runtime_error("sym_tridiag_lowest: dstevr failed, info=" +
                                 std::to_string(info));

    SymTridiagEig out;
    out.n = n;
    out.values.assign(w.begin(), w.begin() + long(n_lowest));
    out.vectors = std::move(z);
    return out;
}

// ============================================================================
// Least squares with singular value cutoff
// ============================================================================

std::vector<double> lstsq_svd(std::size_t rows, std::size_t cols,
                              const std::vector<double>& a_rowmajor,
                              const std::vector<double>& b, double rcond) {
    return lstsq_svd_info(rows, cols, a_rowmajor, b, rcond).x;
}

LstsqInfo lstsq_svd_info(std::size_t rows, std::size_t cols,
                         const std::vector<double>& a_rowmajor,
                         const std::vector<double>& b, double rcond) {
    if (a_rowmajor.size() != rows * cols || b.size() != rows)
        throw std::invalid_argument("lstsq_svd: inconsistent sizes");
    Eigen::MatrixXd A(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) A(long(i), long(j)) = a_rowmajor[i * cols + j];
    Eigen::VectorXd rhs = Eigen::Map<const Eigen::VectorXd>(b.data(), long(rows));

    Eigen::BDCSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    svd.setThreshold(rcond);
    const Eigen::VectorXd x = svd.solve(rhs);

    LstsqInfo out;
    out.x.assign(x.data(), x.data() + x.size());
    out.rank = std::size_t(svd.rank());
    const auto& sigma = svd.singularValues();
    if (sigma.size() > 0) {
        out.sigma_max = sigma(0);
        out.sigma_min = sigma(sigma.size() - 1);
    }
    return out;
}

// ============================================================================
// Scalar minimization and quadrature
// ============================================================================

double golden_section_min(const std::function<double(double)>& f, double a,
                          double b, double tol, int max_iter) {
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < max_iter && (b - a) > tol; ++it) {
        if (f1 <= f2) {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - phi * (b - a); f1 = f(x1);
        } else {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + phi * (b - a); f2 = f(x2);
        }
    }
    return 0.5 * (a + b);
}

double integrate_simpson(const std::function<double(double)>& f, double a,
                         double b, int min_panels) {
    if (b <= a) return 0.0;
    int n = std::max(2, min_panels);
    if (n % 2 != 0) ++n;
    const double h = (b - a) / n;
    double sum = f(a) + f(b);
    for (int k = 1; k < n; ++k) sum += (k % 2 == 1 ? 4.0 : 2.0) * f(a + k * h);
    return sum * h / 3.0;
}

void parallel_for(std::size_t count, unsigned n_threads,
                  const std::function<void(std::size_t)>& fn) {
    if (count == 0) return;
    n_threads = std::max(1u, std::min<unsigned>(n_threads, unsigned(count)));
    if (n_threads == 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> workers;
    std::vector<std::exception_ptr> errors(n_threads);
    for (unsigned t = 0; t < n_threads; ++t) {
        workers.emplace_back([&, t]() {
            try {
                for (std::size_t i = t; i < count; i += n_threads) fn(i);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& w : workers) w.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace lossyrom
