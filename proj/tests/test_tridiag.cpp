#include <doctest.h>

#include <cmath>

#include "dpplab/kernels.hpp"
#include "dpplab/tridiag.hpp"

using namespace dpplab;
using kernels::DiscreteEnsembleSpec;
using kernels::Sign;
using orthopoly::FamilySpec;

TEST_CASE("limit Jacobi matrices carry the displayed entries") {
    auto dh = tridiag::build_limit_jacobi(DiscreteEnsembleSpec::dh(Sign::plus, 1.5));
    CHECK(dh.off(0) == doctest::Approx(std::sqrt(0.5)));
    for (int x : {0, 3, 11}) CHECK(dh.diag(x) == doctest::Approx(-1.5));
    auto dhm = tridiag::build_limit_jacobi(DiscreteEnsembleSpec::dh(Sign::minus, 1.5));
    CHECK(dhm.diag(2) == doctest::Approx(1.5));

    auto dl = tridiag::build_limit_jacobi(DiscreteEnsembleSpec::dl(Sign::plus, 2.2, 0.8));
    CHECK(dl.diag(0) == doctest::Approx(0.8 - 2.2));
    CHECK(dl.off(0) == doctest::Approx(std::sqrt(0.8)));

    auto dj = tridiag::build_limit_jacobi(DiscreteEnsembleSpec::dj(Sign::plus, 0.3, 0.4, 0.4));
    for (int x : {0, 2, 7}) CHECK(dj.diag(x) == doctest::Approx(-0.3)); // b^2 - a^2 = 0
    auto djm = tridiag::build_limit_jacobi(DiscreteEnsembleSpec::dj(Sign::minus, 0.3, 0.4, 0.4));
    CHECK(djm.diag(1) == doctest::Approx(0.3));
}

TEST_CASE("pre-limit Jacobi matrices follow the construction") {
    const int N = 12;
    double theta = 3.4;
    auto ch = tridiag::build_prelimit_jacobi(FamilySpec::charlier(theta), N, std::sqrt(2.0 * N));
    for (int x : {0, 4, 9})
        CHECK(ch.off(x) == doctest::Approx(std::sqrt(theta * (x + 1)) / std::sqrt(2.0 * N)));

    double beta = 1.3, xi = 0.6;
    auto mx = tridiag::build_prelimit_jacobi(FamilySpec::meixner(beta, xi), N, 1.0);
    for (int x : {0, 5})
        CHECK(mx.diag(x) == doctest::Approx(-xi * (x + beta) - x + (1 - xi) * N));

    // finite support: -1 extension beyond M, off(M) = 0
    auto kw = tridiag::build_prelimit_jacobi(FamilySpec::krawtchouk(0.5, 9), 6, 1.0);
    CHECK(kw.off(9) == 0.0);
    CHECK(kw.diag(10) == -1.0);
    CHECK(kw.diag(42) == -1.0);
}

TEST_CASE("spectral projection basics") {
    tridiag::TridiagMatrix one;
    one.size = 1;
    one.diag_fn = [](int) { return -2.0; }; // [-rho], rho > 0
    one.off_fn = [](int) { return 1.0; };
    auto p = tridiag::spectral_projection_plus(one, 1);
    CHECK(p.matrix(0, 0) == 0.0);

    // projections are idempotent and symmetric
    auto dl = tridiag::build_limit_jacobi(DiscreteEnsembleSpec::dl(Sign::plus, 2.0, 1.0));
    auto pr = tridiag::spectral_projection_plus(dl, 60);
    for (int i = 0; i < 60; ++i)
        for (int j = 0; j < 60; ++j) {
            double pp = 0.0;
            for (int k = 0; k < 60; ++k) pp += pr.matrix(i, k) * pr.matrix(k, j);
            CHECK(std::fabs(pp - pr.matrix(i, j)) <= 1e-10);
            CHECK(std::fabs(pr.matrix(i, j) - pr.matrix(j, i)) <= 1e-12);
        }
}

TEST_CASE("pre-limit projection has rank exactly N on the full window") {
    // eigenvalues of A_N are (mu_N - mu_k)/c; the positive cluster has
    // exactly N members, separated from zero by the documented gap
    const int N = 7, M = 14;
    auto pre = tridiag::build_prelimit_jacobi(FamilySpec::krawtchouk(0.4, M), N, 1.0);
    auto es = tridiag::eigen_sym_tridiag(pre, M + 1);
    int above_half_gap = 0;
    for (double l : es.values) above_half_gap += (l > 0.5); // gap = mu_N - mu_{N-1} = 1
    CHECK(above_half_gap == N);
    int near_zero = 0;
    for (double l : es.values) near_zero += (std::fabs(l) < 1e-9);
    CHECK(near_zero == 1); // the k = N eigenvalue sits exactly at the cut
}

TEST_CASE("positive rescaling leaves the projection unchanged") {
    auto pre = tridiag::build_prelimit_jacobi(FamilySpec::charlier(9.0), 6, 1.0);
    auto pre_scaled = tridiag::build_prelimit_jacobi(FamilySpec::charlier(9.0), 6, 7.25);
    auto p1 = tridiag::spectral_projection_plus(pre, 48);
    auto p2 = tridiag::spectral_projection_plus(pre_scaled, 48);
    double worst = 0.0;
    for (size_t i = 0; i < p1.matrix.a.size(); ++i)
        worst = std::max(worst, std::fabs(p1.matrix.a[i] - p2.matrix.a[i]));
    CHECK(worst <= 1e-12);
}

TEST_CASE("limit-matrix section estimator reproduces the quadrature kernel") {
    // DL+(2;1): sections at n=400 through the Radau/averaged estimator
    auto spec = DiscreteEnsembleSpec::dl(Sign::plus, 2.0, 1.0);
    auto m = tridiag::build_limit_jacobi(spec);
    auto est = tridiag::limit_kernel_block(m, 9, 400);
    kernels::KernelMatrix K = kernels::kernel_block(spec, 9);
    double worst = 0.0;
    for (int x = 0; x <= 9; ++x)
        for (int y = 0; y <= 9; ++y) worst = std::max(worst, std::fabs(est(x, y) - K.at(x, y)));
    CHECK(worst <= 1e-4);
}

TEST_CASE("cd kernel via inverse iteration matches the Stieltjes summation") {
    for (auto f : {FamilySpec::meixner(1.4, 0.55), FamilySpec::charlier(3.2),
                   FamilySpec::krawtchouk(0.45, 16), FamilySpec::hahn(0.3, -0.2, 14),
                   FamilySpec::racah(0.5, 0.25, 12, 1.0)}) {
        const int N = 5, W = 10;
        auto inv = tridiag::cd_kernel_block(f, N, W);
        auto direct = kernels::cd_kernel_direct(f, N, W);
        double worst = 0.0;
        for (int x = 0; x <= W; ++x)
            for (int y = 0; y <= W; ++y)
                worst = std::max(worst, std::fabs(inv(x, y) - direct.at(x, y)));
        CHECK(worst <= 1e-9);
    }
}

TEST_CASE("J-matrix off-diagonal growth (divergence condition)") {
    // off(x) = O(x) for DH/DL, O(1) for DJ: sum 1/off diverges structurally
    auto dh = tridiag::build_limit_jacobi(DiscreteEnsembleSpec::dh(Sign::plus, 0.7));
    auto dl = tridiag::build_limit_jacobi(DiscreteEnsembleSpec::dl(Sign::minus, 2.0, 2.5));
    auto dj = tridiag::build_limit_jacobi(DiscreteEnsembleSpec::dj(Sign::plus, 0.1, 0.5, -0.3));
    for (int x : {10, 100, 1000, 10000}) {
        CHECK(dh.off(x) <= 2.0 * std::sqrt(x + 1.0));
        CHECK(dl.off(x) <= 3.0 * (x + 1.0));
        CHECK(dj.off(x) <= 0.51);
        CHECK(dj.off(x) > 0.0);
    }
}

TEST_CASE("scaled operator action approaches the continuum form") {
    // g(v) = v: the limit action is g'' - v g = -v^2
    for (double v : {-1.0, 0.5, 1.5}) {
        double prev_err = 1e300;
        for (double rho : {1e2, 1e3, 1e4}) {
            auto spec = DiscreteEnsembleSpec::dh(Sign::plus, rho);
            double got = tridiag::apply_scaled_operator(spec, [](double w) { return w; }, v);
            // compare at the realized lattice point
            auto sc = tridiag::dh_airy_scaling(rho);
            double v_eff = (sc.sigma - std::llround(sc.sigma - sc.tau * v)) / sc.tau;
            double err = std::fabs(got + v_eff * v_eff);
            CHECK(err < prev_err);
            prev_err = err;
        }
        CHECK(prev_err <= 2e-2);
    }
    // g == 1 at v = 0: the continuum action -v*g vanishes
    double act = tridiag::apply_scaled_operator(DiscreteEnsembleSpec::dh(Sign::plus, 1e4),
                                                [](double) { return 1.0; }, 0.0);
    CHECK(std::fabs(act) <= 2e-2);
}

TEST_CASE("DL scaling residuals vanish") {
    for (auto [rho, beta] : {std::pair{50.0, 20.0}, {1000.0, 400.0}, {20.0, 60.0}}) {
        auto sign = rho > beta ? Sign::plus : Sign::minus;
        auto r = tridiag::dl_scaling_residuals(rho, beta, sign);
        CHECK(std::fabs(r.eq_first) <= 1e-10);
        CHECK(std::fabs(r.eq_second) <= 1e-10);
    }
}

TEST_CASE("scaled operator rejects bad inputs") {
    CHECK_THROWS_AS(tridiag::apply_scaled_operator(DiscreteEnsembleSpec::dl(Sign::plus, 2.0, 4.0),
                                                   [](double) { return 1.0; }, 0.0),
                    std::invalid_argument); // ratio condition: rho/beta < 1 for plus
    CHECK_THROWS_AS(tridiag::apply_scaled_operator(DiscreteEnsembleSpec::dh(Sign::plus, 2.0),
                                                   [](double) { return 1.0; }, 1e9),
                    std::domain_error); // scaled site below zero
}
