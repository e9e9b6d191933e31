#include <doctest.h>

#include <cmath>

#include "dpplab/linalg.hpp"
#include "dpplab/rng.hpp"

using namespace dpplab;
using linalg::Matrix;

TEST_CASE("tridiagonal QL: free Jacobi matrix has Chebyshev spectrum") {
    // diag 0, offdiag 1/2: eigenvalues cos(k pi / (n+1))
    const int n = 40;
    std::vector<double> d(n, 0.0), e(n - 1, 0.5);
    auto es = linalg::eigen_sym_tridiag(d, e);
    for (int k = 0; k < n; ++k) {
        double expect = std::cos((n - k) * M_PI / (n + 1.0));
        CHECK(es.values[k] == doctest::Approx(expect).epsilon(1e-12));
    }
    // residuals and orthonormality
    for (int k = 0; k < n; ++k) {
        double rmax = 0.0;
        for (int i = 0; i < n; ++i) {
            double av = d[i] * es.vectors(i, k);
            if (i > 0) av += e[i - 1] * es.vectors(i - 1, k);
            if (i + 1 < n) av += e[i] * es.vectors(i + 1, k);
            rmax = std::max(rmax, std::fabs(av - es.values[k] * es.vectors(i, k)));
        }
        CHECK(rmax <= 1e-11);
    }
    for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b) {
            double dot = 0.0;
            for (int i = 0; i < n; ++i) dot += es.vectors(i, a) * es.vectors(i, b);
            CHECK(std::fabs(dot - (a == b ? 1.0 : 0.0)) <= 1e-11);
        }
}

TEST_CASE("tridiagonal QL trivial sizes") {
    std::vector<double> d{-2.5};
    auto es = linalg::eigen_sym_tridiag(d, {});
    CHECK(es.values[0] == -2.5);
    std::vector<double> d2{0.0, 0.0}, e2{3.0};
    auto es2 = linalg::eigen_sym_tridiag(d2, e2);
    CHECK(es2.values[0] == doctest::Approx(-3.0));
    CHECK(es2.values[1] == doctest::Approx(3.0));
}

TEST_CASE("row-sliced eigenvector accumulation matches the full one") {
    const int n = 60;
    rng::Stream st(42, 0);
    std::vector<double> d(n), e(n - 1);
    for (auto& v : d) v = 2.0 * st.uniform() - 1.0;
    for (auto& v : e) v = 0.2 + st.uniform();
    auto full = linalg::eigen_sym_tridiag(d, e);
    auto rows = linalg::eigen_sym_tridiag_rows(d, e, 5);
    for (int k = 0; k < n; ++k) {
        CHECK(rows.values[k] == doctest::Approx(full.values[k]).epsilon(1e-13));
        for (int r = 0; r < 5; ++r) {
            // columns may differ by sign
            double s = (std::fabs(full.vectors(0, k)) > 1e-8 &&
                        full.vectors(0, k) * rows.vectors(0, k) < 0)
                           ? -1.0
                           : 1.0;
            CHECK(rows.vectors(r, k) * s == doctest::Approx(full.vectors(r, k)).epsilon(1e-9));
        }
    }
}

TEST_CASE("dense symmetric eigensolver on a known matrix") {
    Matrix a(3, 3);
    a(0, 0) = 2;
    a(1, 1) = 3;
    a(2, 2) = 4;
    a(0, 1) = a(1, 0) = 1;
    a(1, 2) = a(2, 1) = 1;
    auto es = linalg::eigen_sym(a);
    // reconstruct
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double v = 0.0;
            for (int k = 0; k < 3; ++k) v += es.values[k] * es.vectors(i, k) * es.vectors(j, k);
            CHECK(v == doctest::Approx(a(i, j)).epsilon(1e-12));
        }
}

TEST_CASE("LU determinant real and complex") {
    Matrix a(2, 2);
    a(0, 0) = 1;
    a(0, 1) = 2;
    a(1, 0) = 3;
    a(1, 1) = 4;
    CHECK(linalg::det_lu(a) == doctest::Approx(-2.0));
    std::vector<std::complex<double>> c = {{1, 1}, {0, 2}, {3, 0}, {1, -1}};
    auto d = linalg::det_lu_complex(c, 2);
    // (1+i)(1-i) - (2i)(3) = 2 - 6i
    CHECK(d.real() == doctest::Approx(2.0));
    CHECK(d.imag() == doctest::Approx(-6.0));
}

TEST_CASE("shifted tridiagonal solve") {
    const int n = 25;
    rng::Stream st(7, 0);
    std::vector<double> d(n), e(n - 1), b(n), b0;
    for (auto& v : d) v = 2.0 + st.uniform();
    for (auto& v : e) v = 0.5 * st.uniform() + 0.1;
    for (auto& v : b) v = st.normal();
    b0 = b;
    const double shift = 0.7;
    linalg::tridiag_shifted_solve(d, e, shift, b);
    for (int i = 0; i < n; ++i) {
        double av = (d[i] - shift) * b[i];
        if (i > 0) av += e[i - 1] * b[i - 1];
        if (i + 1 < n) av += e[i] * b[i + 1];
        CHECK(av == doctest::Approx(b0[i]).epsilon(1e-10));
    }
}
