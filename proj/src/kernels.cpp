#include "dpplab/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dpplab/errors.hpp"
#include "dpplab/quadrature.hpp"
#include "dpplab/special.hpp"
#include "dpplab/tridiag.hpp"

namespace dpplab::kernels {

using orthopoly::Family;
using orthopoly::FamilySpec;

linalg::Matrix KernelMatrix::dense() const {
    linalg::Matrix m(dim(), dim());
    m.a = entries;
    return m;
}

double hermite_tail_cut(double rho, int nmax) {
    return std::max(std::fabs(rho) + 1.0, std::sqrt(4.0 * nmax + 60.0));
}

namespace {

// oscillation-frequency bound of the integrand in the substituted variable
double freq_bound(const FamilySpec& fam, int nmax, double lo, double hi, int m_sub) {
    switch (fam.family) {
        case Family::Hermite: return std::sqrt(2.0 * nmax + 1.0) + 0.5 * std::max(std::fabs(lo), std::fabs(hi)) + 1.0;
        case Family::Laguerre: return 2.0 * std::sqrt(double(nmax)) / m_sub * 2.0 + 2.0;
        case Family::Jacobi: return 1.7 * nmax + 3.0;
        default: throw std::invalid_argument("freq_bound: continuous family expected");
    }
}

// power m of the endpoint substitution t = end +- u^m: the integrand phi*phi
// carries weight^1 ~ u^{m(e+1)-1} near the endpoint with e the weight
// exponent; m is chosen so that exponent is >= 6 (effectively C^6), except
// when the weight is already polynomial there.
int power_for_exponent(double e) {
    if (e >= -1e-12 && std::fabs(e - std::round(e)) < 1e-12) return 1;
    int m = static_cast<int>(std::ceil(7.0 / (e + 1.0)));
    return std::clamp(m, 1, 64);
}

int substitution_power(const FamilySpec& fam, bool left_end) {
    if (fam.family == Family::Laguerre) return power_for_exponent(fam.beta - 1.0);
    if (fam.family == Family::Jacobi) return power_for_exponent(left_end ? fam.b : fam.a);
    return 1;
}

} // namespace

NodeSet weight_nodes(const FamilySpec& fam, double lo, double hi, int nmax, int refine_level) {
    NodeSet out;
    if (hi <= lo) return out;
    const int order = 24;
    auto add_plain = [&](double a, double b, double freq) {
        int panels = std::max(6, static_cast<int>(std::ceil((b - a) * freq * 10.0 / (2.0 * M_PI * order))));
        panels <<= refine_level;
        quadrature::panel_nodes(a, b, panels, order, [&](double t, double w) {
            out.t.push_back(t);
            out.w.push_back(w);
        });
    };
    auto add_subst = [&](double a, double b, int m, bool from_left, double anchor, double freq) {
        // from_left: t = anchor + u^m on [a,b] with a == anchor
        // else     : t = anchor - u^m with b == anchor
        double ulo = 0.0, uhi = std::pow(std::fabs((from_left ? b : a) - anchor), 1.0 / m);
        int panels = std::max(6, static_cast<int>(std::ceil((uhi - ulo) * freq * 10.0 / (2.0 * M_PI * order))));
        panels <<= refine_level;
        quadrature::panel_nodes(ulo, uhi, panels, order, [&](double u, double w) {
            double um1 = std::pow(u, m - 1);
            double dist = um1 * u;
            // drop nodes inside the unrepresentable sliver at the endpoint;
            // for the worst admissible exponent this forgoes ~1e-11 of mass,
            // below every consumer tolerance
            if (dist < 8.0 * 2.3e-16 * (1.0 + std::fabs(anchor))) return;
            double t = from_left ? anchor + dist : anchor - dist;
            out.t.push_back(t);
            out.w.push_back(w * m * um1);
        });
    };
    switch (fam.family) {
        case Family::Hermite:
            add_plain(lo, hi, freq_bound(fam, nmax, lo, hi, 1));
            break;
        case Family::Laguerre: {
            if (lo <= 0.0) {
                int m = substitution_power(fam, true);
                add_subst(0.0, hi, m, true, 0.0, 2.0 * std::sqrt(double(nmax) + 1.0) + 2.0);
            } else {
                add_plain(lo, hi, std::sqrt((nmax + 1.0) / std::max(lo, 0.5)) + 1.0);
            }
            break;
        }
        case Family::Jacobi: {
            const double eps = 1e-14;
            double mid = 0.5 * (lo + hi);
            double freq = freq_bound(fam, nmax, lo, hi, 1);
            if (lo <= -1.0 + eps && hi >= 1.0 - eps) {
                add_subst(-1.0, mid, substitution_power(fam, true), true, -1.0, freq);
                add_subst(mid, 1.0, substitution_power(fam, false), false, 1.0, freq);
            } else if (lo <= -1.0 + eps) {
                add_subst(-1.0, hi, substitution_power(fam, true), true, -1.0, freq);
            } else if (hi >= 1.0 - eps) {
                add_subst(lo, 1.0, substitution_power(fam, false), false, 1.0, freq);
            } else {
                add_plain(lo, hi, freq);
            }
            break;
        }
        default:
            throw std::invalid_argument("weight_nodes: continuous family expected");
    }
    return out;
}

namespace {

// sum_i w_i phi(t_i) phi(t_i)^T restricted to the first (z+1) functions
linalg::Matrix accumulate_block(const FamilySpec& fam, const NodeSet& ns, int z_max) {
    const int n = z_max + 1;
    linalg::Matrix acc(n, n);
    std::vector<double> phi(n);
    for (size_t i = 0; i < ns.t.size(); ++i) {
        orthopoly::weighted_sequence(fam, ns.t[i], phi);
        const double w = ns.w[i];
        for (int x = 0; x < n; ++x) {
            const double wx = w * phi[x];
            if (wx == 0.0) continue;
            for (int y = x; y < n; ++y) acc(x, y) += wx * phi[y];
        }
    }
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < x; ++y) acc(x, y) = acc(y, x);
    return acc;
}

double max_abs_diff(const linalg::Matrix& a, const linalg::Matrix& b) {
    double m = 0.0;
    for (size_t i = 0; i < a.a.size(); ++i) m = std::max(m, std::fabs(a.a[i] - b.a[i]));
    return m;
}

// integral of phi-products over [lo,hi] for all pairs in the window, with
// panel-doubling until two consecutive refinements agree within tol
linalg::Matrix integrate_block(const FamilySpec& fam, double lo, double hi, int z_max, double tol) {
    linalg::Matrix prev;
    for (int level = 0; level <= 6; ++level) {
        NodeSet ns = weight_nodes(fam, lo, hi, z_max, level);
        linalg::Matrix cur = accumulate_block(fam, ns, z_max);
        if (level > 0 && max_abs_diff(prev, cur) <= tol) return cur;
        prev = std::move(cur);
    }
    throw accuracy_error("kernel quadrature: panel refinement stalled");
}

} // namespace

KernelMatrix kernel_block(const DiscreteEnsembleSpec& spec, int z_max, double tol) {
    spec.validate();
    const FamilySpec fam = spec.family();
    double lo = spec.support_left();
    if (spec.base == Base::DH) lo = -hermite_tail_cut(spec.rho, z_max);
    linalg::Matrix minus(z_max + 1, z_max + 1);
    if (spec.rho > lo) minus = integrate_block(fam, lo, spec.rho, z_max, tol);
    KernelMatrix K(z_max);
    const bool plus = spec.sign == Sign::plus;
    for (int x = 0; x <= z_max; ++x)
        for (int y = 0; y <= z_max; ++y)
            K.at(x, y) = plus ? ((x == y ? 1.0 : 0.0) - minus(x, y)) : minus(x, y);
    return K;
}

double discrete_kernel_quadrature(const DiscreteEnsembleSpec& spec, int x, int y, double tol) {
    spec.validate();
    if (x < 0 || y < 0) throw std::domain_error("discrete_kernel_quadrature: sites must be >= 0");
    const FamilySpec fam = spec.family();
    const int nmax = std::max(x, y);
    double lo = spec.support_left();
    if (spec.base == Base::DH) lo = -std::max(std::fabs(spec.rho) + 1.0, std::sqrt(2.0 * x + 2.0 * y + 60.0));
    double kminus = 0.0;
    if (spec.rho > lo) {
        std::vector<double> phi(nmax + 1);
        double prev = 0.0;
        bool ok = false;
        for (int level = 0; level <= 6 && !ok; ++level) {
            NodeSet ns = weight_nodes(fam, lo, spec.rho, nmax, level);
            double sum = 0.0;
            for (size_t i = 0; i < ns.t.size(); ++i) {
                orthopoly::weighted_sequence(fam, ns.t[i], phi);
                sum += ns.w[i] * phi[x] * phi[y];
            }
            if (level > 0 && std::fabs(sum - prev) <= tol) {
                kminus = sum;
                ok = true;
            }
            prev = sum;
        }
        if (!ok) throw accuracy_error("discrete_kernel_quadrature: panel refinement stalled");
    }
    if (spec.sign == Sign::plus) return (x == y ? 1.0 : 0.0) - kminus;
    return kminus;
}

double discrete_kernel_integrable(const DiscreteEnsembleSpec& spec, int x, int y) {
    spec.validate();
    if (x == y) throw std::domain_error("discrete_kernel_integrable: undefined on the diagonal");
    if (x < 0 || y < 0) throw std::domain_error("discrete_kernel_integrable: sites must be >= 0");
    const double sgn = (spec.sign == Sign::plus) ? 1.0 : -1.0;
    const double rho = spec.rho;
    const int n = std::max(x, y) + 1;
    switch (spec.base) {
        case Base::DH: {
            std::vector<double> psi(n + 1);
            orthopoly::weighted_sequence(FamilySpec::hermite(), rho, psi);
            double num = std::sqrt((x + 1.0) / 2.0) * psi[x + 1] * psi[y] -
                         std::sqrt((y + 1.0) / 2.0) * psi[y + 1] * psi[x];
            return -sgn * num / (x - y);
        }
        case Base::DL: {
            std::vector<double> lb(n + 1), lb1(n + 1);
            orthopoly::weighted_sequence(FamilySpec::laguerre(spec.beta), rho, lb);
            orthopoly::weighted_sequence(FamilySpec::laguerre(spec.beta + 1.0), rho, lb1);
            auto up = [&](int k) { return k >= 1 ? lb1[k - 1] : 0.0; };
            double num = std::sqrt(x * rho) * up(x) * lb[y] - std::sqrt(y * rho) * up(y) * lb[x];
            return sgn * num / (x - y);
        }
        case Base::DJ: {
            const double a = spec.a, b = spec.b;
            FamilySpec jab = FamilySpec::jacobi(a, b);
            FamilySpec jab1 = FamilySpec::jacobi(a + 1.0, b + 1.0);
            auto shifted = [&](int k) { return k >= 1 ? orthopoly::eval_poly(jab1, k - 1, rho) : 0.0; };
            const double px = orthopoly::eval_poly(jab, x, rho);
            const double py = orthopoly::eval_poly(jab, y, rho);
            const double norm = std::exp(-0.5 * (orthopoly::log_norm_sq(jab, x) + orthopoly::log_norm_sq(jab, y)));
            const double pref = std::pow(1.0 - rho, a + 1.0) * std::pow(1.0 + rho, b + 1.0) / 2.0;
            const double xt = x * (x + a + b + 1.0), yt = y * (y + a + b + 1.0);
            double num = (x + a + b + 1.0) * shifted(x) * py - (y + a + b + 1.0) * shifted(y) * px;
            return sgn * pref * norm * num / (xt - yt);
        }
    }
    throw std::logic_error("unreachable");
}

KernelMatrix cd_kernel_matrix(const FamilySpec& spec, int N, int z_max) {
    linalg::Matrix block = tridiag::cd_kernel_block(spec, N, z_max);
    KernelMatrix K(z_max);
    K.entries = block.a;
    return K;
}

double cd_kernel(const FamilySpec& spec, int N, int x, int y) {
    if (x < 0 || y < 0) throw std::domain_error("cd_kernel: sites must be >= 0");
    KernelMatrix K = cd_kernel_matrix(spec, N, std::max(x, y));
    return K.at(x, y);
}

KernelMatrix cd_kernel_direct(const FamilySpec& spec, int N, int z_max) {
    spec.validate();
    if (!spec.discrete()) throw std::invalid_argument("cd_kernel_direct: discrete family required");
    if (spec.finite_support() && N > spec.M + 1)
        throw std::invalid_argument("cd_kernel_direct: N exceeds support size");
    orthopoly::Recurrence rec = orthopoly::orthonormal_recurrence(spec, N);
    // run the recurrence at each site of the window (beyond a finite support
    // the kernel is identically zero)
    const int S = spec.finite_support() ? std::min(z_max, spec.M) + 1 : z_max + 1;
    std::vector<double> pm(S, 0.0), pc(S), pn(S);
    std::vector<double> sqw(S);
    for (int xsite = 0; xsite < S; ++xsite) {
        sqw[xsite] = std::exp(0.5 * orthopoly::log_weight(spec, xsite));
        pc[xsite] = 1.0 / std::sqrt(rec.total_mass);
    }
    KernelMatrix K(z_max);
    for (int n = 0; n < N; ++n) {
        for (int xs = 0; xs < S; ++xs)
            for (int ys = 0; ys < S; ++ys)
                K.at(xs, ys) += sqw[xs] * pc[xs] * sqw[ys] * pc[ys];
        if (n + 1 >= N) break;
        const double bn = rec.diag[n], an = rec.offdiag[n];
        const double am = (n > 0) ? rec.offdiag[n - 1] : 0.0;
        for (int xs = 0; xs < S; ++xs) {
            pn[xs] = ((xs - bn) * pc[xs] - am * pm[xs]) / an;
            pm[xs] = pc[xs];
            pc[xs] = pn[xs];
        }
    }
    return K;
}

double airy_kernel(double x, double y) {
    using special::airy;
    if (std::fabs(x - y) < 1e-7) {
        const double m = 0.5 * (x + y);
        const auto v = airy(m);
        return v.aip * v.aip - m * v.ai * v.ai;
    }
    const auto vx = airy(x);
    const auto vy = airy(y);
    return (vx.ai * vy.aip - vx.aip * vy.ai) / (x - y);
}

KernelMatrix complement_kernel(const KernelMatrix& k) {
    KernelMatrix out(k.z_max);
    for (int x = 0; x <= k.z_max; ++x)
        for (int y = 0; y <= k.z_max; ++y)
            out.at(x, y) = (x == y ? 1.0 : 0.0) - k.at(x, y);
    return out;
}

} // namespace dpplab::kernels
