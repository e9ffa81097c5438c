// linalg.hpp — numerical kernels shared by the solver modules: complex
// tridiagonal solves (Thomas with a pivoted fallback), dense real
// eigendecomposition, symmetric tridiagonal eigenpairs, least squares with a
// singular value cutoff, scalar minimization and quadrature.

#pragma once

#include <functional>
#include <vector>

#include "lossyrom/types.hpp"

namespace lossyrom {

// Solve the tridiagonal system with subdiagonal `sub` (size n-1), diagonal
// `diag` (size n) and superdiagonal `super` (size n-1).  Fast path is the
// Thomas algorithm; if a pivot magnitude falls below 1e-14 times the row
// magnitude the solve is redone with partial pivoting (LAPACK zgtsv).
// Throws on a singular system.
std::vector<cplx> solve_tridiag(const std::vector<cplx>& sub,
                                const std::vector<cplx>& diag,
                                const std::vector<cplx>& super,
                                const std::vector<cplx>& rhs);

// Eigendecomposition of a dense real n-by-n matrix in column-major storage.
// Eigenvectors are returned column-wise in `vectors` (n*n, column-major);
// complex conjugate pairs are reconstituted from the LAPACK packed form.
struct DenseEig {
    std::vector<cplx> values;
    std::vector<cplx> vectors;
    std::size_t n = 0;

    const cplx* vec(std::size_t k) const { return vectors.data() + k * n; }
};
DenseEig eig_real_general(std::size_t n, const std::vector<double>& a_colmajor);

// Lowest `n_lowest` eigenpairs of the symmetric tridiagonal matrix with the
// given diagonal and off-diagonal; eigenvalues ascending, eigenvectors
// unit-norm, column-wise.
struct SymTridiagEig {
    std::vector<double> values;
    std::vector<double> vectors;  // n * n_lowest, column-major
    std::size_t n = 0;
};
SymTridiagEig sym_tridiag_lowest(const std::vector<double>& diag,
                                 const std::vector<double>& offdiag,
                                 std::size_t n_lowest);

// Minimum of ||A x - b|| with singular values below rcond * sigma_max
// truncated.  A is row-major with `rows` x `cols`.
std::vector<double> lstsq_svd(std::size_t rows, std::size_t cols,
                              const std::vector<double>& a_rowmajor,
                              const std::vector<double>& b, double rcond);

// Same solve, also reporting the numerical rank (count of singular values
// kept by the cutoff) and the extreme singular values.
struct LstsqInfo {
    std::vector<double> x;
    std::size_t rank = 0;
    double sigma_max = 0.0;
    double sigma_min = 0.0;
};
LstsqInfo lstsq_svd_info(std::size_t rows, std::size_t cols,
                         const std::vector<double>& a_rowmajor,
                         const std::vector<double>& b, double rcond);

// Golden-section minimization of f on [a, b] to absolute abscissa tolerance.
double golden_section_min(const std::function<double(double)>& f, double a,
                          double b, double tol, int max_iter = 200);

// Composite Simpson quadrature of f over [a, b] with at least `min_panels`
// panels (rounded up to an even count).
double integrate_simpson(const std::function<double(double)>& f, double a,
                         double b, int min_panels);

// Run fn(i) for i in [0, count) on up to n_threads worker threads.
void parallel_for(std::size_t count, unsigned n_threads,
                  const std::function<void(std::size_t)>& fn);

}  // namespace lossyrom
