#include "dpplab/tridiag.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <set>
#include <stdexcept>

#include "dpplab/errors.hpp"
#include "dpplab/rng.hpp"

namespace dpplab::tridiag {

using kernels::Base;
using kernels::DiscreteEnsembleSpec;
using kernels::Sign;
using orthopoly::FamilySpec;

void TridiagMatrix::realize(int n, std::vector<double>& d, std::vector<double>& e) const {
    if (size >= 0 && n > size) throw std::invalid_argument("TridiagMatrix: section exceeds size");
    d.resize(n);
    e.resize(n > 1 ? n - 1 : 0);
    for (int x = 0; x < n; ++x) d[x] = diag_fn(x);
    for (int x = 0; x + 1 < n; ++x) e[x] = off_fn(x);
}

TridiagMatrix build_limit_jacobi(const DiscreteEnsembleSpec& spec) {
    spec.validate();
    const FamilySpec fam = spec.family();
    const double s = (spec.sign == Sign::plus) ? 1.0 : -1.0;
    const double rho = spec.rho;
    TridiagMatrix m;
    m.size = -1;
    m.diag_fn = [fam, s, rho](int x) { return s * (orthopoly::ttilde_diag(fam, x) - rho); };
    m.off_fn = [fam](int x) { return orthopoly::ttilde_off(fam, x); };
    return m;
}

TridiagMatrix build_prelimit_jacobi(const FamilySpec& spec, int N, double c_N) {
    spec.validate();
    if (!spec.discrete()) throw std::invalid_argument("build_prelimit_jacobi: discrete family required");
    if (c_N <= 0) throw std::invalid_argument("build_prelimit_jacobi: c_N must be positive");
    if (spec.finite_support() && N > spec.M + 1)
        throw std::invalid_argument("build_prelimit_jacobi: N exceeds support size");
    const bool finite = spec.finite_support();
    const int M = spec.M;
    // enough table for any realized section; extended lazily via the formulas
    auto dop = std::make_shared<orthopoly::DifferenceOperatorData>();
    auto ensure = [spec, dop](int x) {
        if (x >= static_cast<int>(dop->up.size())) {
            int want = std::max(x + 1, static_cast<int>(dop->up.size()) * 2 + 64);
            *dop = orthopoly::difference_operator(spec, want);
        }
    };
    ensure(0);
    const double muN = [&] {
        orthopoly::DifferenceOperatorData d0 = orthopoly::difference_operator(
            spec, finite ? -1 : N + 1);
        return d0.mu[N];
    }();
    TridiagMatrix m;
    m.size = -1;
    m.diag_fn = [spec, dop, ensure, muN, c_N, finite, M](int x) {
        if (finite && x > M) return -1.0;
        ensure(x);
        return (-dop->up[x] - dop->down[x] + muN) / c_N;
    };
    m.off_fn = [spec, dop, ensure, c_N, finite, M](int x) {
        if (finite && x >= M) return 0.0;
        ensure(x + 1);
        // sqrt(W(x)/W(x+1)) D(x,x+1) = sqrt(D(x,x+1) D(x+1,x)) by detailed balance
        return std::sqrt(dop->up[x] * dop->down[x + 1]) / c_N;
    };
    return m;
}

linalg::EigenSym eigen_sym_tridiag(const TridiagMatrix& m, int n) {
    std::vector<double> d, e;
    m.realize(n, d, e);
    return linalg::eigen_sym_tridiag(d, e);
}

SpectralProjection spectral_projection_plus(const TridiagMatrix& m, int n) {
    std::vector<double> d, e;
    m.realize(n, d, e);
    linalg::EigenSym es = linalg::eigen_sym_tridiag(d, e);
    SpectralProjection out;
    out.matrix = linalg::Matrix(n, n);
    for (int k = 0; k < n; ++k) {
        double lam = es.values[k];
        if (std::fabs(lam) < 1e-9) out.near_zero.push_back(lam);
        if (lam > 0 || std::fabs(lam) < 1e-9) {
            for (int i = 0; i < n; ++i) {
                const double vik = es.vectors(i, k);
                if (vik == 0.0) continue;
                for (int j = 0; j < n; ++j) out.matrix(i, j) += vik * es.vectors(j, k);
            }
        }
    }
    return out;
}

// --- Radau-corrected sections -------------------------------------------

namespace {

// Section of size n with the last diagonal entry adjusted so that 0 is an
// exact eigenvalue (node pinned at the spectral cut); that eigenvector gets
// half weight in the projection.  This removes the see-saw of eigenvalues
// crossing zero as n varies and leaves a smooth ~1/n bias.
linalg::Matrix radau_section_block(const std::vector<double>& d0, const std::vector<double>& e,
                                   int rows) {
    const int n = static_cast<int>(d0.size());
    std::vector<double> d = d0;
    std::vector<double> u(n);
    u[0] = 1.0;
    u[1] = -d[0] * u[0] / e[0];
    for (int x = 1; x + 1 < n; ++x) {
        u[x + 1] = (-d[x] * u[x] - e[x - 1] * u[x - 1]) / e[x];
        if (std::fabs(u[x + 1]) > 1e250)
            for (int j = 0; j <= x + 1; ++j) u[j] *= 1e-250;
    }
    if (u[n - 1] == 0.0) u[n - 1] = 1e-300;
    d[n - 1] = -(e[n - 2] * u[n - 2]) / u[n - 1];
    linalg::EigenSym es = linalg::eigen_sym_tridiag_rows(d, e, rows);
    int k0 = 0;
    for (int k = 1; k < n; ++k)
        if (std::fabs(es.values[k]) < std::fabs(es.values[k0])) k0 = k;
    linalg::Matrix P(rows, rows);
    for (int k = 0; k < n; ++k) {
        double w = (k == k0) ? 0.5 : (es.values[k] > 0 ? 1.0 : 0.0);
        if (w == 0.0) continue;
        for (int i = 0; i < rows; ++i) {
            const double vik = w * es.vectors(i, k);
            if (vik == 0.0) continue;
            for (int j = 0; j < rows; ++j) P(i, j) += vik * es.vectors(j, k);
        }
    }
    return P;
}

struct AveragedBlock {
    linalg::Matrix mean;
    double inv_size_mean;
};

AveragedBlock averaged_radau(const TridiagMatrix& m, int window, int n) {
    const int J = 12;
    const int span = std::max(24, static_cast<int>(std::lround(4.0 * std::sqrt(double(n)))));
    std::set<int> sizes;
    for (int j = 0; j < J; ++j) sizes.insert(n - static_cast<int>(std::lround(j * double(span) / (J - 1))));
    AveragedBlock out;
    out.mean = linalg::Matrix(window + 1, window + 1);
    out.inv_size_mean = 0.0;
    std::vector<double> d, e;
    for (int sz : sizes) {
        m.realize(sz, d, e);
        linalg::Matrix P = radau_section_block(d, e, window + 1);
        for (size_t i = 0; i < P.a.size(); ++i) out.mean.a[i] += P.a[i];
        out.inv_size_mean += 1.0 / sz;
    }
    const double inv = 1.0 / static_cast<double>(sizes.size());
    for (double& v : out.mean.a) v *= inv;
    out.inv_size_mean *= inv;
    return out;
}

} // namespace

linalg::Matrix limit_kernel_block(const TridiagMatrix& m, int window, int n) {
    if (n < 4 * (window + 1)) n = 4 * (window + 1);
    AveragedBlock hi = averaged_radau(m, window, n);
    AveragedBlock lo = averaged_radau(m, window, n / 2);
    // exact elimination of the c/size term
    const double h1 = lo.inv_size_mean, h2 = hi.inv_size_mean;
    linalg::Matrix out(window + 1, window + 1);
    for (size_t i = 0; i < out.a.size(); ++i)
        out.a[i] = (h1 * hi.mean.a[i] - h2 * lo.mean.a[i]) / (h1 - h2);
    return out;
}

// --- pre-limit kernels via inverse iteration ------------------------------

namespace {

double d_up(const FamilySpec& s, double x) {
    switch (s.family) {
        case orthopoly::Family::Charlier: return s.theta;
        case orthopoly::Family::Meixner: return s.xi * (x + s.beta);
        case orthopoly::Family::Krawtchouk: return s.p * (s.M - x);
        case orthopoly::Family::Hahn: return (s.M - x) * (x + s.a + 1.0);
        case orthopoly::Family::Racah: {
            const double be = s.M + s.a + s.cnst, ga = s.a, de = s.b;
            return (s.M - x) * (x + be + de + 1.0) * (x + ga + 1.0) * (x + ga + de + 1.0) /
                   ((2.0 * x + ga + de + 1.0) * (2.0 * x + ga + de + 2.0));
        }
        default: throw std::invalid_argument("d_up: discrete family required");
    }
}

double d_down(const FamilySpec& s, double x) {
    if (x <= 0) return 0.0;
    switch (s.family) {
        case orthopoly::Family::Charlier: return x;
        case orthopoly::Family::Meixner: return x;
        case orthopoly::Family::Krawtchouk: return (1.0 - s.p) * x;
        case orthopoly::Family::Hahn: return x * (s.M + s.b + 1.0 - x);
        case orthopoly::Family::Racah: {
            const double be = s.M + s.a + s.cnst, ga = s.a, de = s.b;
            return x * (x + s.M + ga + de + 1.0) * (be - ga - x) * (x + de) /
                   ((2.0 * x + ga + de) * (2.0 * x + ga + de + 1.0));
        }
        default: throw std::invalid_argument("d_down: discrete family required");
    }
}

// Support size covering the eigenfunctions of the first N eigenvalues: past
// the classical turning point (sqrt(up)-sqrt(down))^2 > mu_{N-1} they decay.
int invit_support(const FamilySpec& spec, int N, const std::vector<double>& mu) {
    if (spec.finite_support()) return spec.M + 1;
    const double mu_top = mu[N - 1];
    // forbidden once (sqrt(up) - sqrt(down))^2 exceeds the top eigenvalue;
    // probe ahead to land beyond the rightmost turning point
    auto forbidden = [&](double x) {
        double g = std::sqrt(d_up(spec, x)) - std::sqrt(d_down(spec, x));
        return g * g > 1.10 * mu_top + 1.0;
    };
    long x = 1;
    for (;;) {
        if (forbidden(double(x)) && forbidden(x * 1.5 + 8.0) && forbidden(2.0 * x + 16.0)) break;
        x = x < 64 ? x + 1 : x + x / 16;
        if (x > 200'000'000) throw accuracy_error("cd_kernel: no turning point found");
    }
    return static_cast<int>(x + x / 4 + 400);
}

} // namespace

linalg::Matrix cd_kernel_block(const FamilySpec& spec, int N, int window) {
    spec.validate();
    if (!spec.discrete()) throw std::invalid_argument("cd_kernel_block: discrete family required");
    if (N < 1) throw std::invalid_argument("cd_kernel_block: N >= 1 required");
    if (spec.finite_support() && N > spec.M + 1)
        throw std::invalid_argument("cd_kernel_block: N exceeds support size");
    std::vector<double> mu(N);
    {
        orthopoly::DifferenceOperatorData dd = orthopoly::difference_operator(spec, N + 1);
        for (int k = 0; k < N; ++k) mu[k] = dd.mu[k];
    }
    const int S = std::max(invit_support(spec, N, mu), window + 2);
    std::vector<double> diag(S), off(S > 1 ? S - 1 : 0);
    double norm_inf = 0.0;
    for (int x = 0; x < S; ++x) {
        double up = d_up(spec, x), dn = d_down(spec, x);
        if (spec.finite_support() && x == spec.M) up = 0.0;
        diag[x] = -(up + dn);
        if (x + 1 < S) off[x] = std::sqrt(d_up(spec, double(x)) * d_down(spec, double(x + 1)));
        norm_inf = std::max(norm_inf, std::fabs(diag[x]) + 2.0 * (x + 1 < S ? off[x] : 0.0));
    }
    if (spec.finite_support() && S >= 2) off[S - 2] = std::sqrt(d_up(spec, double(S - 2)) * d_down(spec, double(S - 1)));

    linalg::Matrix K(window + 1, window + 1);
    rng::Stream stream(0x5eedULL, static_cast<uint64_t>(N));
    std::vector<double> v(S);
    for (int k = 0; k < N; ++k) {
        const double shift = -mu[k] + 16.0 * 1e-16 * norm_inf;
        for (int x = 0; x < S; ++x) v[x] = stream.normal();
        double res = 1e300;
        for (int it = 0; it < 6; ++it) {
            linalg::tridiag_shifted_solve(diag, off, shift, v);
            double nv = 0.0;
            for (double c : v) nv += c * c;
            nv = std::sqrt(nv);
            for (double& c : v) c /= nv;
            // residual of the exact eigenvalue problem
            res = 0.0;
            for (int x = 0; x < S; ++x) {
                double av = diag[x] * v[x];
                if (x > 0) av += off[x - 1] * v[x - 1];
                if (x + 1 < S) av += off[x] * v[x + 1];
                res = std::max(res, std::fabs(av + mu[k] * v[x]));
            }
            if (res <= 1e-10 * std::max(1.0, norm_inf) && it >= 1) break;
        }
        for (int i = 0; i <= window; ++i)
            for (int j = 0; j <= window; ++j) K(i, j) += v[i] * v[j];
    }
    return K;
}

// --- edge scalings ---------------------------------------------------------

AiryScaling dh_airy_scaling(double rho) {
    const double sigma = 0.5 * rho * rho;
    const double tau = std::cbrt(sigma);
    return {sigma, tau, std::pow(sigma, 1.0 / 6.0)};
}

AiryScaling dl_airy_scaling(double rho, double beta) {
    if (!(rho > 0) || !(beta > 0)) throw std::invalid_argument("dl_airy_scaling: rho, beta > 0");
    const double sigma = (rho - beta) * (rho - beta) / (4.0 * rho);
    const double tau = std::pow(std::fabs(rho * rho - beta * beta), 2.0 / 3.0) /
                       (std::cbrt(16.0) * rho);
    const double c = std::sqrt(sigma * (sigma + beta)) / (tau * tau);
    return {sigma, tau, c};
}

ScalingResiduals dl_scaling_residuals(double rho, double beta, Sign sign) {
    const AiryScaling sc = dl_airy_scaling(rho, beta);
    const double s = (sign == Sign::plus) ? 1.0 : -1.0;
    const double root = std::sqrt(sc.sigma * (sc.sigma + beta));
    const double lhs1 = 2.0 * root + s * (2.0 * sc.sigma + beta - rho);
    const double rhs2 = sc.tau * ((2.0 * sc.sigma + beta + s * 2.0 * root) / root);
    const double lhs2 = root / (sc.tau * sc.tau);
    const double scale1 = 2.0 * root + std::fabs(2.0 * sc.sigma + beta - rho) + 1.0;
    const double scale2 = std::fabs(lhs2) + std::fabs(rhs2) + 1.0;
    return {lhs1 / scale1, (lhs2 - rhs2) / scale2};
}

double apply_scaled_operator(const DiscreteEnsembleSpec& spec,
                             const std::function<double(double)>& g, double v) {
    spec.validate();
    AiryScaling sc;
    double pre;
    switch (spec.base) {
        case Base::DH:
            sc = dh_airy_scaling(std::fabs(spec.rho));
            pre = std::sqrt(2.0) * sc.c;
            break;
        case Base::DL: {
            const double ratio = spec.rho / spec.beta;
            if (spec.sign == Sign::plus ? !(ratio > 1.0) : !(ratio < 1.0))
                throw std::invalid_argument("apply_scaled_operator: DL sign/ratio condition violated");
            sc = dl_airy_scaling(spec.rho, spec.beta);
            pre = 1.0 / sc.c;
            break;
        }
        default:
            throw std::invalid_argument("apply_scaled_operator: DH or DL only");
    }
    const long long x = std::llround(sc.sigma - sc.tau * v);
    if (x < 0) throw std::domain_error("apply_scaled_operator: scaled site below 0");
    TridiagMatrix m = build_limit_jacobi(spec);
    auto f = [&](long long y) { return g((sc.sigma - double(y)) / sc.tau); };
    const int xi = static_cast<int>(x);
    double df = m.diag(xi) * f(x) + m.off(xi) * f(x + 1);
    if (x > 0) df += m.off(xi - 1) * f(x - 1);
    return pre * df;
}

} // namespace dpplab::tridiag
