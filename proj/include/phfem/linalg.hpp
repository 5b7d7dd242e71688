#pragma once

#include <complex>
#include <string>
#include <vector>

#include "phfem/errors.hpp"

namespace phfem {

using Vec = std::vector<double>;

double dot(const Vec& a, const Vec& b);
double norm2(const Vec& v);
double norm_inf(const Vec& v);
/// y += a*x
void axpy(double a, const Vec& x, Vec& y);

struct Triplet {
    int row;
    int col;
    double val;
};

/// Compressed sparse row matrix. Immutable after construction; column indices
/// are strictly increasing within each row and duplicates are summed.
struct CsrMatrix {
    int nrows = 0;
    int ncols = 0;
    std::vector<int> offsets; // size nrows+1
    std::vector<int> cols;
    std::vector<double> vals;

    int nnz() const { return static_cast<int>(vals.size()); }

    Vec apply(const Vec& x) const;
    /// y += a * (A x)
    void apply_add(double a, const Vec& x, Vec& y) const;
    /// y += a * (A^T x)
    void apply_transpose_add(double a, const Vec& x, Vec& y) const;

    CsrMatrix transposed() const;
    /// Entry lookup, zero when absent.
    double at(int i, int j) const;

    static CsrMatrix identity(int n);
};

CsrMatrix csr_from_triplets(int nrows, int ncols, const std::vector<Triplet>& triplets);
Vec spmv(const CsrMatrix& A, const Vec& x);
/// a*A + b*B, dimensions must agree.
CsrMatrix csr_add(double a, const CsrMatrix& A, double b, const CsrMatrix& B);
CsrMatrix csr_scaled(const CsrMatrix& A, double s);
CsrMatrix csr_matmul(const CsrMatrix& A, const CsrMatrix& B);
double skew_defect_max(const CsrMatrix& J); // max |(J + J^T)_ij|

/// Accumulates triplets of a block matrix; transposed blocks are inserted
/// entry-for-entry so that skew layouts are exact.
struct BlockBuilder {
    std::vector<Triplet> trips;
    void add_block(int row0, int col0, const CsrMatrix& A, double scale);
    void add_block_transposed(int row0, int col0, const CsrMatrix& A, double scale);
    CsrMatrix build(int nrows, int ncols) const { return csr_from_triplets(nrows, ncols, trips); }
};

/// Row-major dense matrix.
struct DenseMatrix {
    int nrows = 0;
    int ncols = 0;
    std::vector<double> a;

    DenseMatrix() = default;
    DenseMatrix(int nr, int nc) : nrows(nr), ncols(nc), a(static_cast<size_t>(nr) * nc, 0.0) {}
    double& operator()(int i, int j) { return a[static_cast<size_t>(i) * ncols + j]; }
    double operator()(int i, int j) const { return a[static_cast<size_t>(i) * ncols + j]; }
};

DenseMatrix to_dense(const CsrMatrix& A);
/// Solve A x = b by Gaussian elimination with partial pivoting (A copied).
Vec dense_solve(DenseMatrix A, Vec b);
/// In-place lower Cholesky of an SPD matrix; throws NumericalError if a pivot fails.
void cholesky_inplace(DenseMatrix& A);
/// Solve L y = b (lower triangular, from cholesky_inplace).
void forward_solve_lower(const DenseMatrix& L, Vec& y);
/// Solve L^T x = y.
void backward_solve_lower_t(const DenseMatrix& L, Vec& y);

/// Direct factorization of a square sparse matrix, reused across solves.
/// Banded LU with partial pivoting after reverse Cuthill-McKee reordering;
/// solves are polished with one step of iterative refinement against the
/// original matrix.
class LuFactorization {
  public:
    explicit LuFactorization(const CsrMatrix& A);
    Vec solve(const Vec& b) const;
    int dim() const { return n_; }

  private:
    int n_ = 0;
    int kl_ = 0;
    int ku_ = 0;
    std::vector<int> perm_;  // new ordering: perm_[new] = old
    std::vector<int> iperm_; // iperm_[old] = new
    std::vector<double> band_; // (2kl+ku+1) x n, row-major bands
    std::vector<int> pivot_;
    CsrMatrix orig_;

    Vec solve_band(const Vec& bp) const;
};

LuFactorization lu_factorize(const CsrMatrix& A);
Vec lu_solve(const LuFactorization& F, const Vec& b);

struct EigPair {
    std::complex<double> lambda;
    std::vector<std::complex<double>> vec;
};

/// All eigenpairs of M^{-1} J for SPD M and skew-symmetric J. Eigenvalues are
/// purely imaginary and returned in +/- pairs with M-orthonormal-derived
/// eigenvectors.
std::vector<EigPair> dense_generalized_eig(const DenseMatrix& M, const DenseMatrix& J);

/// Spectrum-only variant for large systems: returns the nonnegative imaginary
/// parts (all of them, sorted ascending), without eigenvectors.
/// M is given block-diagonally: blocks[i] is a dense SPD diagonal block.
std::vector<double> skew_pencil_frequencies(const std::vector<DenseMatrix>& M_blocks,
                                            const CsrMatrix& J);

/// Symmetric tridiagonal eigensolver (implicit-shift QL). d: diagonal (size n),
/// e: off-diagonal (size n-1). If Z is non-null it must hold an n x n matrix on
/// entry (typically identity or an accumulated orthogonal factor) and returns
/// with its columns multiplied into the eigenvector matrix.
void tridiag_eig(std::vector<double>& d, std::vector<double>& e, DenseMatrix* Z);

/// Matrix Market coordinate export, for debugging.
void write_matrix_market(const CsrMatrix& A, const std::string& path);

} // namespace phfem
