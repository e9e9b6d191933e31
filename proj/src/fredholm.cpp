#include "dpplab/fredholm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dpplab/errors.hpp"
#include "dpplab/quadrature.hpp"
#include "dpplab/special.hpp"

namespace dpplab::fredholm {

using kernels::DiscreteEnsembleSpec;
using kernels::KernelMatrix;
using orthopoly::Family;
using orthopoly::FamilySpec;

MultiplicativeFunctional MultiplicativeFunctional::q_geometric(double zeta, double q) {
    if (!(zeta > 0) || !(q > 0 && q < 1))
        throw std::invalid_argument("q_geometric: need zeta > 0, q in (0,1)");
    MultiplicativeFunctional mf;
    mf.f = [zeta, q](int z) { return 1.0 / (1.0 + zeta * std::pow(q, z)); };
    mf.tail_bound = [zeta, q](int Z) { return zeta * std::pow(q, Z + 1) / (1.0 - q); };
    return mf;
}

double gap_det_discrete(const DiscreteEnsembleSpec& spec, int N) {
    if (N < 0) throw std::invalid_argument("gap_det_discrete: N >= 0 required");
    if (N == 0) return 1.0;
    KernelMatrix K = kernels::kernel_block(spec, N - 1);
    linalg::Matrix A(N, N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) A(i, j) = (i == j ? 1.0 : 0.0) - K.at(i, j);
    return linalg::det_lu(A);
}

namespace {

// integration interval of the half line I within the weight support
void continuous_interval(const FamilySpec& fam, int N, double rho, HalfLine side, double& lo,
                         double& hi) {
    switch (fam.family) {
        case Family::Hermite: {
            double T = kernels::hermite_tail_cut(rho, N);
            lo = side == HalfLine::above ? rho : -T;
            hi = side == HalfLine::above ? T : rho;
            return;
        }
        case Family::Laguerre: {
            double body = 4.0 * N + 2.0 * fam.beta;
            double T = std::max(rho, body) + 18.0 * std::cbrt(body + 2.0) + 30.0;
            lo = side == HalfLine::above ? rho : 0.0;
            hi = side == HalfLine::above ? T : rho;
            return;
        }
        case Family::Jacobi:
            lo = side == HalfLine::above ? rho : -1.0;
            hi = side == HalfLine::above ? 1.0 : rho;
            return;
        default: throw std::invalid_argument("gap_det_continuous: continuous family required");
    }
}

double nystrom_gap_det(const FamilySpec& fam, int N, double lo, double hi, int level) {
    kernels::NodeSet ns = kernels::weight_nodes(fam, lo, hi, N - 1, level);
    const int m = static_cast<int>(ns.t.size());
    // C[i][n] = sqrt(w_i) phi_n(t_i); operator matrix C C^T on L^2(I)
    std::vector<double> C(static_cast<size_t>(m) * N);
    std::vector<double> phi(N);
    for (int i = 0; i < m; ++i) {
        orthopoly::weighted_sequence(fam, ns.t[i], phi);
        const double sw = std::sqrt(ns.w[i]);
        for (int n = 0; n < N; ++n) C[static_cast<size_t>(i) * N + n] = sw * phi[n];
    }
    linalg::Matrix A(m, m);
    for (int i = 0; i < m; ++i) {
        for (int j = i; j < m; ++j) {
            double s = 0.0;
            const double* ci = &C[static_cast<size_t>(i) * N];
            const double* cj = &C[static_cast<size_t>(j) * N];
            for (int n = 0; n < N; ++n) s += ci[n] * cj[n];
            A(i, j) = (i == j ? 1.0 : 0.0) - s;
            A(j, i) = A(i, j);
        }
    }
    return linalg::det_lu(A);
}

} // namespace

double gap_det_continuous(const FamilySpec& fam, int N, double rho, HalfLine side) {
    fam.validate();
    if (fam.discrete()) throw std::invalid_argument("gap_det_continuous: continuous family required");
    if (N < 0) throw std::invalid_argument("gap_det_continuous: N >= 0 required");
    if (N == 0) return 1.0;
    double lo, hi;
    continuous_interval(fam, N, rho, side, lo, hi);
    if (hi <= lo) return 1.0; // interval carries no weight mass
    double prev = 0.0;
    for (int level = 0; level <= 5; ++level) {
        double d = nystrom_gap_det(fam, N, lo, hi, level);
        if (level > 0 && std::fabs(d - prev) <= 1e-10) return d;
        prev = d;
    }
    throw accuracy_error("gap_det_continuous: quadrature refinement stalled");
}

namespace {

int window_from_tail(const MultiplicativeFunctional& f, double target) {
    for (int Z = 4; Z <= 4'000'000; Z = Z + std::max(4, Z / 4)) {
        if (f.tail_bound(Z) < target) {
            // tighten downward
            int lo = Z / 2, hi = Z;
            while (lo + 1 < hi) {
                int mid = (lo + hi) / 2;
                (f.tail_bound(mid) < target ? hi : lo) = mid;
            }
            return hi;
        }
    }
    throw accuracy_error("expect_multiplicative: no finite window achieves the tail bound");
}

} // namespace

double expect_multiplicative(const KernelMatrix& K, const std::function<double(int)>& f) {
    const int n = K.dim();
    // det(1 - D_g K D_g), g = sqrt(1-f)
    linalg::Matrix A(n, n);
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) {
        double fi = f(i);
        if (!(fi > 0.0) || fi > 1.0 + 1e-14)
            throw std::invalid_argument("expect_multiplicative: f must lie in (0,1]");
        g[i] = std::sqrt(std::max(0.0, 1.0 - fi));
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) A(i, j) = (i == j ? 1.0 : 0.0) - g[i] * K.at(i, j) * g[j];
    return linalg::det_lu(A);
}

double expect_multiplicative(const DiscreteEnsembleSpec& spec, const MultiplicativeFunctional& f,
                             double tol) {
    const int Z = window_from_tail(f, 0.1 * tol);
    KernelMatrix K = kernels::kernel_block(spec, Z, std::min(1e-11, 0.1 * tol / (Z + 1.0)));
    return expect_multiplicative(K, f.f);
}

std::complex<double> expect_multiplicative_qfactor(const KernelMatrix& K,
                                                   std::complex<double> zeta, double q) {
    const int n = K.dim();
    std::vector<std::complex<double>> A(static_cast<size_t>(n) * n);
    double qz = 1.0;
    std::vector<std::complex<double>> fm1(n);
    for (int i = 0; i < n; ++i) {
        std::complex<double> den = 1.0 + zeta * qz;
        if (std::abs(den) < 1e-12)
            throw std::domain_error("expect_multiplicative_qfactor: zeta too close to the pole set");
        fm1[i] = 1.0 / den - 1.0;
        qz *= q;
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            A[static_cast<size_t>(i) * n + j] =
                (i == j ? 1.0 : 0.0) + fm1[i] * K.at(i, j);
    return linalg::det_lu_complex(A, n);
}

std::complex<double> expect_multiplicative_qfactor(const DiscreteEnsembleSpec& spec,
                                                   std::complex<double> zeta, double q, double tol) {
    const double az = std::abs(zeta);
    // window where |zeta| q^{Z+1}/(1-q) < 0.1 tol; also puts |zeta q^z| < 1
    int Z = static_cast<int>(std::ceil(std::log(std::max(az, 1e-30) / (0.1 * tol * (1.0 - q))) /
                                       std::log(1.0 / q))) + 4;
    Z = std::max(Z, 8);
    KernelMatrix K = kernels::kernel_block(spec, Z, std::min(1e-11, 0.1 * tol / (Z + 1.0)));
    return expect_multiplicative_qfactor(K, zeta, q);
}

// --- Airy-side determinants -------------------------------------------------

namespace {

double nystrom_tw(double s, int m) {
    const auto& gl = quadrature::gauss_legendre(m);
    const double L = 10.0;
    std::vector<double> t(m), v(m);
    for (int i = 0; i < m; ++i) {
        double w = gl.nodes[i];
        double phase = 0.25 * M_PI * (w + 1.0);
        double c = std::cos(phase);
        t[i] = s + L * std::tan(phase);
        v[i] = gl.weights[i] * L * 0.25 * M_PI / (c * c);
    }
    linalg::Matrix A(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j) {
            double k = kernels::airy_kernel(t[i], t[j]);
            double a = (i == j ? 1.0 : 0.0) - std::sqrt(v[i] * v[j]) * k;
            A(i, j) = A(j, i) = a;
        }
    return linalg::det_lu(A);
}

} // namespace

double tracy_widom_gue(double s) {
    const int m = 80;
    double d1 = nystrom_tw(s, m);
    double d2 = nystrom_tw(s, 2 * m);
    if (std::fabs(d1 - d2) > 1e-9)
        throw accuracy_error("tracy_widom_gue: quadrature orders disagree");
    return std::clamp(d2, 0.0, 1.0);
}

AiryMoments airy_statistic_moments(double M, double tau_hat) {
    if (!(tau_hat > 0)) throw std::invalid_argument("airy_statistic_moments: tau_hat > 0 required");
    // lower cut where sqrt(|x|) e^{tau x} is negligible against 1e-14
    double X = std::min(M, 0.0) - (40.0 / tau_hat + 10.0);
    auto f1 = [&](double x) { return kernels::airy_kernel(x, x) * std::exp(tau_hat * x); };
    AiryMoments out;
    out.mean = quadrature::integrate_adaptive(f1, X, M, 1e-12, 16);
    // fixed tensor-product grid for the double integral
    std::vector<double> ts, ws;
    quadrature::panel_nodes(X, M, 28, 20, [&](double t, double w) {
        ts.push_back(t);
        ws.push_back(w);
    });
    const int m = static_cast<int>(ts.size());
    std::vector<double> diag(m);
    for (int i = 0; i < m; ++i) diag[i] = kernels::airy_kernel(ts[i], ts[i]);
    double acc = 0.0;
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            double kij = (i == j) ? diag[i] : kernels::airy_kernel(ts[i], ts[j]);
            acc += ws[i] * ws[j] * (diag[i] * diag[j] - kij * kij) *
                   std::exp(tau_hat * (ts[i] + ts[j]));
        }
    }
    out.second_factorial = acc;
    return out;
}

namespace {

double kpz_det(double zeta_hat, double tau_hat, int m) {
    const auto& gl = quadrature::gauss_legendre(m);
    const double L = std::max(6.0, 8.0 / tau_hat);
    const double lz = std::log(zeta_hat);
    std::vector<double> t(m), v(m), g(m);
    for (int i = 0; i < m; ++i) {
        double w = gl.nodes[i];
        double phase = 0.5 * M_PI * w;
        double c = std::cos(phase);
        t[i] = L * std::tan(phase);
        v[i] = gl.weights[i] * L * 0.5 * M_PI / (c * c);
        // g^2 = zeta e^{tau t}/(1+zeta e^{tau t}) evaluated as a stable sigmoid
        double u = tau_hat * t[i] + lz;
        double s = (u > 0) ? 1.0 / (1.0 + std::exp(-u)) : std::exp(u) / (1.0 + std::exp(u));
        g[i] = std::sqrt(s);
    }
    linalg::Matrix A(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j) {
            double k = kernels::airy_kernel(t[i], t[j]);
            double a = (i == j ? 1.0 : 0.0) - std::sqrt(v[i] * v[j]) * g[i] * g[j] * k;
            A(i, j) = A(j, i) = a;
        }
    return linalg::det_lu(A);
}

} // namespace

double kpz_laplace_rhs(double zeta_hat, double tau_hat, double tol) {
    if (!(zeta_hat > 0) || !(tau_hat > 0))
        throw std::invalid_argument("kpz_laplace_rhs: zeta_hat, tau_hat > 0 required");
    double prev = 0.0;
    for (int m = 96; m <= 1536; m *= 2) {
        double d = kpz_det(zeta_hat, tau_hat, m);
        if (m > 96 && std::fabs(d - prev) <= tol) return d;
        prev = d;
    }
    throw accuracy_error("kpz_laplace_rhs: refinement stalled");
}

} // namespace dpplab::fredholm
