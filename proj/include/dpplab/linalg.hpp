#pragma once

#include <complex>
#include <span>
#include <vector>

namespace dpplab::linalg {

// Dense symmetric/general matrices stored row-major.
struct Matrix {
    int n = 0, m = 0;
    std::vector<double> a;
    Matrix() = default;
    Matrix(int rows, int cols) : n(rows), m(cols), a(static_cast<size_t>(rows) * cols, 0.0) {}
    double& operator()(int i, int j) { return a[static_cast<size_t>(i) * m + j]; }
    double operator()(int i, int j) const { return a[static_cast<size_t>(i) * m + j]; }
};

// Symmetric tridiagonal QL with implicit Wilkinson shifts (tql2 lineage).
// d: diagonal (length n), e: off-diagonal (length n-1).  Eigenvalues are
// returned ascending in d.  If z is non-null it must have `rows` rows and n
// columns initialized by the caller (typically a slice of the identity); the
// accumulated rotations are applied on the right, so on return row r holds
// the r-th component of every eigenvector.
// Throws convergence_error after 50n rotations.
void tridiag_ql(std::vector<double>& d, std::vector<double>& e, Matrix* z);

struct EigenSym {
    std::vector<double> values;  // ascending
    Matrix vectors;              // column k = eigenvector k
};

// Full decomposition of a symmetric tridiagonal matrix.
EigenSym eigen_sym_tridiag(std::span<const double> diag, std::span<const double> off);

// Same but only the first `rows` components of each eigenvector are kept.
EigenSym eigen_sym_tridiag_rows(std::span<const double> diag, std::span<const double> off, int rows);

// Dense symmetric eigendecomposition: Householder reduction + QL.
EigenSym eigen_sym(const Matrix& a);

// det(A) by LU with partial pivoting; A is destroyed.
double det_lu(Matrix& a);
std::complex<double> det_lu_complex(std::vector<std::complex<double>>& a, int n);

// log|det| variant for determinants too small/large for double range.
struct SignedLogDet {
    double log_abs;
    double sign;
};
SignedLogDet logdet_lu(Matrix& a);

// Solve (T - shift) x = b for symmetric tridiagonal T given by (diag, off),
// using LU with partial pivoting on the tridiagonal band.  b is overwritten.
void tridiag_shifted_solve(std::span<const double> diag, std::span<const double> off,
                           double shift, std::vector<double>& b);

} // namespace dpplab::linalg
