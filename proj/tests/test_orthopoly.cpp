#include <doctest.h>

#include <cmath>
#include <vector>

#include "dpplab/kernels.hpp"
#include "dpplab/orthopoly.hpp"
#include "dpplab/special.hpp"

using namespace dpplab;
using orthopoly::FamilySpec;

TEST_CASE("weights at spec'd points") {
    CHECK(orthopoly::weight(FamilySpec::laguerre(1.0), 0.7) ==
          doctest::Approx(std::exp(-0.7)).epsilon(1e-14));
    CHECK(orthopoly::weight(FamilySpec::charlier(2.0), 0.0) == doctest::Approx(1.0));
    // Meixner(2, 1/2) at 3: (2)_3/3! * (1/2)^3 = 4 * 0.125 = 0.5
    CHECK(orthopoly::weight(FamilySpec::meixner(2.0, 0.5), 3.0) ==
          doctest::Approx(0.5).epsilon(1e-13));
    CHECK_THROWS_AS(orthopoly::weight(FamilySpec::laguerre(1.0), -0.5), std::domain_error);
    CHECK_THROWS_AS(orthopoly::weight(FamilySpec::krawtchouk(0.5, 4), 5.0), std::domain_error);
    CHECK_THROWS_AS(FamilySpec::meixner(2.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(FamilySpec::krawtchouk(0.0, 4), std::invalid_argument);
}

TEST_CASE("polynomial values from the recurrences") {
    FamilySpec h = FamilySpec::hermite();
    CHECK(orthopoly::eval_poly(h, 1, 0.5) == doctest::Approx(1.0));   // H_1 = 2t
    CHECK(orthopoly::eval_poly(h, 2, 1.0) == doctest::Approx(2.0));   // H_2 = 4t^2-2
    FamilySpec l = FamilySpec::laguerre(1.7);
    CHECK(orthopoly::eval_poly(l, 1, 0.3) == doctest::Approx(0.3 - 1.7)); // L_1 = t - beta
    FamilySpec j = FamilySpec::jacobi(0.4, -0.2);
    // P_1^{(a,b)} = (a+b+2)t/2 + (a-b)/2
    CHECK(orthopoly::eval_poly(j, 1, 0.25) ==
          doctest::Approx(0.5 * (0.4 - 0.2 + 2.0) * 0.25 + 0.5 * (0.4 + 0.2)).epsilon(1e-14));
}

TEST_CASE("closed-form norms") {
    CHECK(orthopoly::norm_sq(FamilySpec::hermite(), 0) ==
          doctest::Approx(1.77245385090551603).epsilon(1e-14));
    CHECK(orthopoly::norm_sq(FamilySpec::laguerre(1.0), 0) == doctest::Approx(1.0));
    CHECK(orthopoly::norm_sq(FamilySpec::laguerre(2.5), 3) ==
          doctest::Approx(8.7237962974255867).epsilon(1e-13)); // Gamma(5.5)/6
}

TEST_CASE("standardization: leading coefficients by finite differencing") {
    // Delta^n P evaluated at 0..n equals n! * leading coefficient
    auto lead = [](const FamilySpec& s, int n) {
        double acc = 0.0;
        for (int k = 0; k <= n; ++k) {
            double binom = std::exp(special::log_gamma(n + 1.0) - special::log_gamma(k + 1.0) -
                                    special::log_gamma(n - k + 1.0));
            double sign = ((n - k) % 2) ? -1.0 : 1.0;
            acc += sign * binom * orthopoly::eval_poly(s, n, 0.1 * k);
        }
        return acc / std::exp(special::log_gamma(n + 1.0)) / std::pow(0.1, n);
    };
    for (int n : {1, 2, 3, 4, 5}) {
        CHECK(lead(FamilySpec::hermite(), n) ==
              doctest::Approx(std::pow(2.0, n)).epsilon(1e-7));
        CHECK(lead(FamilySpec::laguerre(1.3), n) ==
              doctest::Approx(1.0 / std::exp(special::log_gamma(n + 1.0))).epsilon(1e-7));
        double a = 0.5, b = -0.3;
        double jl = std::exp(special::log_gamma(2 * n + a + b + 1.0) - n * std::log(2.0) -
                             special::log_gamma(n + 1.0) - special::log_gamma(n + a + b + 1.0));
        CHECK(lead(FamilySpec::jacobi(a, b), n) == doctest::Approx(jl).epsilon(1e-7));
    }
}

TEST_CASE("difference operators at spec'd points") {
    auto c = orthopoly::difference_operator(FamilySpec::charlier(3.0), 8);
    CHECK(c.up[5] == doctest::Approx(3.0));
    CHECK(c.down[5] == doctest::Approx(5.0));
    CHECK(c.mu[4] == doctest::Approx(4.0));
    auto k = orthopoly::difference_operator(FamilySpec::krawtchouk(0.5, 4));
    CHECK(k.up[4] == 0.0);
    auto hh = orthopoly::difference_operator(FamilySpec::hahn(0.0, 0.0, 10));
    CHECK(hh.mu[2] == doctest::Approx(6.0));
}

TEST_CASE("difference operator invariants across discrete families") {
    std::vector<FamilySpec> fams = {
        FamilySpec::charlier(2.3),
        FamilySpec::meixner(1.7, 0.45),
        FamilySpec::krawtchouk(0.35, 12),
        FamilySpec::hahn(0.3, -0.2, 9),
        FamilySpec::racah(0.3, -0.2, 9, 1.7),
    };
    for (const auto& f : fams) {
        int size = f.finite_support() ? f.M + 1 : 40;
        auto d = orthopoly::difference_operator(f, size);
        CHECK(d.down[0] == 0.0);
        if (f.finite_support()) CHECK(d.up[f.M] == 0.0);
        // mu strictly increasing from 0
        CHECK(d.mu[0] == 0.0);
        for (int n = 1; n < size; ++n) CHECK(d.mu[n] > d.mu[n - 1]);
        // detailed balance W(x) up(x) = W(x+1) down(x+1), relative 1e-12
        for (int x = 0; x + 1 < size; ++x) {
            double lhs = std::exp(orthopoly::log_weight(f, x)) * d.up[x];
            double rhs = std::exp(orthopoly::log_weight(f, x + 1)) * d.down[x + 1];
            CHECK(std::fabs(lhs - rhs) <= 1e-12 * std::max(std::fabs(lhs), 1e-300));
        }
        // positivity (the Racah case is the one argued in the source)
        for (int x = 0; x + 1 < size; ++x) CHECK(d.up[x] > 0.0);
        for (int x = 1; x < size; ++x) CHECK(d.down[x] > 0.0);
    }
}

TEST_CASE("certified truncation of infinite supports") {
    for (auto f : {FamilySpec::charlier(4.0), FamilySpec::meixner(2.0, 0.6)}) {
        int X = orthopoly::truncated_support(f, 1e-15);
        double mass = 0.0;
        for (int x = 0; x <= X; ++x) mass += std::exp(orthopoly::log_weight(f, x));
        double tail = 0.0;
        for (int x = X + 1; x <= X + 400; ++x) tail += std::exp(orthopoly::log_weight(f, x));
        CHECK(tail <= 1e-15 * mass);
    }
}

TEST_CASE("orthonormal recurrence: masses and moments") {
    // Meixner: ||P_0||^2 = total mass = (1-xi)^{-beta}
    double beta = 1.6, xi = 0.55;
    auto rec = orthopoly::orthonormal_recurrence(FamilySpec::meixner(beta, xi), 8);
    CHECK(rec.total_mass == doctest::Approx(std::pow(1.0 - xi, -beta)).epsilon(1e-12));
    auto reck = orthopoly::orthonormal_recurrence(FamilySpec::krawtchouk(0.3, 11), 8);
    CHECK(reck.total_mass == doctest::Approx(1.0).epsilon(1e-13));
    // weight moments m_k, k <= 6, from powers of the recurrence matrix
    for (auto f : {FamilySpec::charlier(1.2), FamilySpec::meixner(beta, xi),
                   FamilySpec::hahn(0.4, 0.1, 9)}) {
        auto r = orthopoly::orthonormal_recurrence(f, 8);
        // m_k / m_0 = <e_0, J^k e_0>
        std::vector<double> v(8, 0.0), w(8);
        v[0] = 1.0;
        int S = f.finite_support() ? f.M : orthopoly::truncated_support(f);
        for (int k = 1; k <= 6; ++k) {
            for (int i = 0; i < 8; ++i) {
                double s = r.diag[i] * v[i];
                if (i > 0) s += r.offdiag[i - 1] * v[i - 1];
                if (i + 1 < 8) s += r.offdiag[i] * v[i + 1];
                w[i] = s;
            }
            v = w;
            double direct = 0.0;
            for (int x = 0; x <= S; ++x)
                direct += std::pow(double(x), k) * std::exp(orthopoly::log_weight(f, x));
            direct /= r.total_mass;
            CHECK(std::fabs(v[0] - direct) <= 1e-10 * std::max(1.0, direct));
        }
    }
}

TEST_CASE("orthonormality of the recurrence polynomials, m,n <= 15") {
    for (auto f : {FamilySpec::meixner(1.3, 0.5), FamilySpec::krawtchouk(0.42, 25),
                   FamilySpec::charlier(2.5)}) {
        const int nmax = 15;
        auto rec = orthopoly::orthonormal_recurrence(f, nmax + 1);
        int S = f.finite_support() ? f.M : orthopoly::truncated_support(f);
        // tabulate p_n(x) over the support by the recurrence
        std::vector<std::vector<double>> P(nmax + 1, std::vector<double>(S + 1));
        for (int x = 0; x <= S; ++x) {
            P[0][x] = 1.0 / std::sqrt(rec.total_mass);
            if (nmax >= 1)
                P[1][x] = (x - rec.diag[0]) * P[0][x] / rec.offdiag[0];
        }
        for (int n = 1; n < nmax; ++n)
            for (int x = 0; x <= S; ++x)
                P[n + 1][x] = ((x - rec.diag[n]) * P[n][x] - rec.offdiag[n - 1] * P[n - 1][x]) /
                              rec.offdiag[n];
        std::vector<double> w(S + 1);
        for (int x = 0; x <= S; ++x) w[x] = std::exp(orthopoly::log_weight(f, x));
        double worst = 0.0;
        for (int m = 0; m <= nmax; ++m)
            for (int n = m; n <= nmax; ++n) {
                double dot = 0.0;
                for (int x = 0; x <= S; ++x) dot += P[m][x] * P[n][x] * w[x];
                worst = std::max(worst, std::fabs(dot - (m == n ? 1.0 : 0.0)));
            }
        CHECK(worst <= 1e-9);
    }
}

TEST_CASE("orthonormality of the continuous families by quadrature") {
    for (auto f : {FamilySpec::hermite(), FamilySpec::laguerre(0.7), FamilySpec::jacobi(0.5, -0.3)}) {
        const int nmax = 15;
        double lo, hi;
        switch (f.family) {
            case orthopoly::Family::Hermite: lo = -kernels::hermite_tail_cut(0, nmax) - 2, hi = -lo; break;
            case orthopoly::Family::Laguerre: lo = 0, hi = 4 * nmax + 2 * f.beta + 40; break;
            default: lo = -1, hi = 1; break;
        }
        kernels::NodeSet ns = kernels::weight_nodes(f, lo, hi, nmax, 2);
        std::vector<double> phi(nmax + 1);
        std::vector<double> gram((nmax + 1) * (nmax + 1), 0.0);
        for (size_t i = 0; i < ns.t.size(); ++i) {
            orthopoly::weighted_sequence(f, ns.t[i], phi);
            for (int m = 0; m <= nmax; ++m)
                for (int n = 0; n <= nmax; ++n) gram[m * (nmax + 1) + n] += ns.w[i] * phi[m] * phi[n];
        }
        double worst = 0.0;
        for (int m = 0; m <= nmax; ++m)
            for (int n = 0; n <= nmax; ++n)
                worst = std::max(worst,
                                 std::fabs(gram[m * (nmax + 1) + n] - (m == n ? 1.0 : 0.0)));
        CHECK(worst <= 1e-9);
    }
}

TEST_CASE("weighted_sequence matches eval_poly at moderate degree") {
    FamilySpec h = FamilySpec::hermite();
    std::vector<double> phi(9);
    orthopoly::weighted_sequence(h, 1.3, phi);
    for (int n = 0; n <= 8; ++n) {
        double expect = orthopoly::eval_poly(h, n, 1.3) * std::exp(-1.3 * 1.3 / 2.0) /
                        std::sqrt(orthopoly::norm_sq(h, n));
        CHECK(phi[n] == doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("racah admissibility is enforced") {
    CHECK_THROWS_AS(FamilySpec::racah(0.5, 0.5, 8, -1.0), std::invalid_argument);
    CHECK_NOTHROW(FamilySpec::racah(0.5, 0.5, 8, 0.5));
}
