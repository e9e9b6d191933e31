#include "dpplab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "dpplab/errors.hpp"

namespace dpplab::linalg {

static double pythag(double a, double b) { return std::hypot(a, b); }

void tridiag_ql(std::vector<double>& d, std::vector<double>& e, Matrix* z) {
    const int n = static_cast<int>(d.size());
    if (n == 0) return;
    e.resize(n, 0.0);
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
                if (std::fabs(e[m]) <= 1e-16 * dd) break;
            }
            if (m != l) {
                // 50 shifted sweeps per eigenvalue (each sweep is O(n) rotations)
                if (++iter > 50)
                    throw convergence_error("tridiag_ql: rotation budget exceeded");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = pythag(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                bool underflow = false;
                for (int i = m - 1; i >= l; --i) {
                    double f = s * e[i], b = c * e[i];
                    r = pythag(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        underflow = true;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;

                    if (z) {
                        for (int row = 0; row < z->n; ++row) {
                            double fv = (*z)(row, i + 1);
                            (*z)(row, i + 1) = s * (*z)(row, i) + c * fv;
                            (*z)(row, i) = c * (*z)(row, i) - s * fv;
                        }
                    }
                }
                if (underflow) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
}

static void sort_eigs(EigenSym& es) {
    const int n = static_cast<int>(es.values.size());
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int i, int j) { return es.values[i] < es.values[j]; });
    std::vector<double> vals(n);
    Matrix vecs(es.vectors.n, n);
    for (int k = 0; k < n; ++k) {
        vals[k] = es.values[idx[k]];
        for (int r = 0; r < es.vectors.n; ++r) vecs(r, k) = es.vectors(r, idx[k]);
    }
    es.values = std::move(vals);
    es.vectors = std::move(vecs);
}

EigenSym eigen_sym_tridiag_rows(std::span<const double> diag, std::span<const double> off, int rows) {
    const int n = static_cast<int>(diag.size());
    EigenSym es;
    es.values.assign(diag.begin(), diag.end());
    std::vector<double> e(off.begin(), off.end());
    es.vectors = Matrix(rows, n);
    for (int r = 0; r < rows && r < n; ++r) es.vectors(r, r) = 1.0;
    tridiag_ql(es.values, e, &es.vectors);
    sort_eigs(es);
    return es;
}

EigenSym eigen_sym_tridiag(std::span<const double> diag, std::span<const double> off) {
    return eigen_sym_tridiag_rows(diag, off, static_cast<int>(diag.size()));
}

// Householder reduction of a dense symmetric matrix to tridiagonal form,
// accumulating the transformation (tred2 lineage).
static void householder_tridiag(Matrix& a, std::vector<double>& d, std::vector<double>& e) {
    const int n = a.n;
    d.assign(n, 0.0);
    e.assign(n, 0.0);
    for (int i = n - 1; i > 0; --i) {
        int l = i - 1;
        double h = 0.0, scale = 0.0;
        if (l > 0) {
            for (int k = 0; k <= l; ++k) scale += std::fabs(a(i, k));
            if (scale == 0.0) {
                e[i] = a(i, l);
            } else {
                for (int k = 0; k <= l; ++k) {
                    a(i, k) /= scale;
                    h += a(i, k) * a(i, k);
                }
                double f = a(i, l);
                double g = (f >= 0.0) ? -std::sqrt(h) : std::sqrt(h);
                e[i] = scale * g;
                h -= f * g;
                a(i, l) = f - g;
                f = 0.0;
                for (int j = 0; j <= l; ++j) {
                    a(j, i) = a(i, j) / h;
                    g = 0.0;
                    for (int k = 0; k <= j; ++k) g += a(j, k) * a(i, k);
                    for (int k = j + 1; k <= l; ++k) g += a(k, j) * a(i, k);
                    e[j] = g / h;
                    f += e[j] * a(i, j);
                }
                double hh = f / (h + h);
                for (int j = 0; j <= l; ++j) {
                    f = a(i, j);
                    e[j] = g = e[j] - hh * f;
                    for (int k = 0; k <= j; ++k) a(j, k) -= f * e[k] + g * a(i, k);
                }
            }
        } else {
            e[i] = a(i, l);
        }
        d[i] = h;
    }
    d[0] = 0.0;
    e[0] = 0.0;
    for (int i = 0; i < n; ++i) {
        if (d[i] != 0.0) {
            for (int j = 0; j < i; ++j) {
                double g = 0.0;
                for (int k = 0; k < i; ++k) g += a(i, k) * a(k, j);
                for (int k = 0; k < i; ++k) a(k, j) -= g * a(k, i);
            }
        }
        d[i] = a(i, i);
        a(i, i) = 1.0;
        for (int j = 0; j < i; ++j) a(j, i) = a(i, j) = 0.0;
    }
}

EigenSym eigen_sym(const Matrix& a0) {
    Matrix a = a0;
    const int n = a.n;
    std::vector<double> d, e;
    householder_tridiag(a, d, e);
    std::vector<double> esub(n > 1 ? n - 1 : 0);
    for (int i = 1; i < n; ++i) esub[i - 1] = e[i];
    EigenSym es;
    es.values = d;
    es.vectors = a;
    std::vector<double> work = esub;
    tridiag_ql(es.values, work, &es.vectors);
    sort_eigs(es);
    return es;
}

double det_lu(Matrix& a) {
    SignedLogDet sl = logdet_lu(a);
    if (sl.sign == 0.0) return 0.0;
    return sl.sign * std::exp(sl.log_abs);
}

SignedLogDet logdet_lu(Matrix& a) {
    const int n = a.n;
    double sign = 1.0, logdet = 0.0;
    for (int k = 0; k < n; ++k) {
        int p = k;
        for (int i = k + 1; i < n; ++i)
            if (std::fabs(a(i, k)) > std::fabs(a(p, k))) p = i;
        if (a(p, k) == 0.0) return {-std::numeric_limits<double>::infinity(), 0.0};
        if (p != k) {
            for (int j = 0; j < n; ++j) std::swap(a(p, j), a(k, j));
            sign = -sign;
        }
        if (a(k, k) < 0) sign = -sign;
        logdet += std::log(std::fabs(a(k, k)));
        for (int i = k + 1; i < n; ++i) {
            double f = a(i, k) / a(k, k);
            a(i, k) = f;
            for (int j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
        }
    }
    return {logdet, sign};
}

std::complex<double> det_lu_complex(std::vector<std::complex<double>>& a, int n) {
    std::complex<double> det = 1.0;
    auto at = [&](int i, int j) -> std::complex<double>& { return a[static_cast<size_t>(i) * n + j]; };
    for (int k = 0; k < n; ++k) {
        int p = k;
        for (int i = k + 1; i < n; ++i)
            if (std::abs(at(i, k)) > std::abs(at(p, k))) p = i;
        if (at(p, k) == std::complex<double>(0.0)) return 0.0;
        if (p != k) {
            for (int j = 0; j < n; ++j) std::swap(at(p, j), at(k, j));
            det = -det;
        }
        det *= at(k, k);
        for (int i = k + 1; i < n; ++i) {
            std::complex<double> f = at(i, k) / at(k, k);
            for (int j = k + 1; j < n; ++j) at(i, j) -= f * at(k, j);
        }
    }
    return det;
}

void tridiag_shifted_solve(std::span<const double> diag, std::span<const double> off,
                           double shift, std::vector<double>& b) {
    const int n = static_cast<int>(diag.size());
    if (static_cast<int>(b.size()) != n) throw std::invalid_argument("tridiag_shifted_solve: size mismatch");
    // Band LU with partial pivoting: three working diagonals plus fill-in.
    std::vector<double> du(n, 0.0), d(n), dl(n, 0.0), du2(n, 0.0);
    for (int i = 0; i < n; ++i) d[i] = diag[i] - shift;
    for (int i = 0; i + 1 < n; ++i) {
        du[i] = off[i];
        dl[i + 1] = off[i];
    }
    std::vector<int> piv(n);
    for (int k = 0; k < n - 1; ++k) {
        piv[k] = k;
        if (std::fabs(dl[k + 1]) > std::fabs(d[k])) {
            piv[k] = k + 1;
            std::swap(d[k], dl[k + 1]);
            std::swap(du[k], d[k + 1]);
            if (k + 2 < n) du2[k] = du[k + 1], du[k + 1] = 0.0;
            std::swap(b[k], b[k + 1]);
        }
        if (d[k] == 0.0) d[k] = 1e-300;
        double m = dl[k + 1] / d[k];
        d[k + 1] -= m * du[k];
        if (k + 2 < n) du[k + 1] -= m * du2[k];
        b[k + 1] -= m * b[k];
    }
    if (d[n - 1] == 0.0) d[n - 1] = 1e-300;
    b[n - 1] /= d[n - 1];
    if (n >= 2) b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / d[n - 2];
    for (int k = n - 3; k >= 0; --k)
        b[k] = (b[k] - du[k] * b[k + 1] - du2[k] * b[k + 2]) / d[k];
}

} // namespace dpplab::linalg
