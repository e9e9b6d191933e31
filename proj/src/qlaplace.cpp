#include "dpplab/qlaplace.hpp"

#include <cmath>
#include <stdexcept>

#include "dpplab/errors.hpp"

namespace dpplab::qlaplace {

void QLaplaceParams::validate() const {
    if (!(q > 0 && q < 1)) throw std::invalid_argument("q-Laplace: q must lie in (0,1)");
    // pole proximity is checked where products are formed
}

Cplx geometric_qfactor(Cplx zeta, double q, double start) {
    Cplx out = 1.0;
    double qs = std::pow(q, start);
    for (int i = 0; i < 100000; ++i) {
        Cplx z = zeta * qs;
        Cplx den = 1.0 + z;
        if (std::abs(den) < 1e-12)
            throw std::domain_error("q-Laplace: zeta within 1e-12 of the pole set");
        out /= den;
        if (std::abs(z) < 1e-16) return out;
        qs *= q;
    }
    throw accuracy_error("geometric_qfactor: product did not settle");
}

double geometric_qfactor(double zeta, double q, double start) {
    return geometric_qfactor(Cplx(zeta, 0.0), q, start).real();
}

Cplx q_laplace_rv(std::span<const double> dist, const QLaplaceParams& params) {
    params.validate();
    double mass = 0.0;
    for (double p : dist) mass += p;
    if (std::fabs(mass - 1.0) > 1e-12)
        throw std::invalid_argument("q_laplace_rv: distribution must sum to 1 within 1e-12");
    Cplx out = 0.0;
    for (size_t k = 0; k < dist.size(); ++k)
        if (dist[k] != 0.0) out += dist[k] * geometric_qfactor(params.zeta, params.q, double(k));
    return out;
}

Cplx q_laplace_config(std::span<const int> sites, const QLaplaceParams& params) {
    params.validate();
    Cplx out = 1.0;
    for (int x : sites) {
        Cplx den = 1.0 + params.zeta * std::pow(params.q, x);
        if (std::abs(den) < 1e-12)
            throw std::domain_error("q-Laplace: zeta within 1e-12 of the pole set");
        out /= den;
    }
    return out;
}

Cplx qpoch(Cplx a, double q, int n) {
    Cplx out = 1.0;
    Cplx aq = a;
    for (int k = 0; k < n; ++k) {
        out *= (1.0 - aq);
        aq *= q;
    }
    return out;
}

Cplx qpoch_inf(Cplx a, double q) {
    Cplx out = 1.0;
    Cplx aq = a;
    for (int k = 0; k < 100000; ++k) {
        out *= (1.0 - aq);
        if (std::abs(aq) < 1e-17) return out;
        aq *= q;
    }
    throw accuracy_error("qpoch_inf: product did not settle");
}

Cplx q_laplace_series(std::span<const double> dist, const QLaplaceParams& params) {
    params.validate();
    if (std::abs(params.zeta) >= 1.0)
        throw std::invalid_argument("q_laplace_series: requires |zeta| < 1");
    Cplx out = 0.0, zn = 1.0;
    double qq = 1.0; // (q;q)_n
    for (int n = 0; n < 5000; ++n) {
        double eq = 0.0, qnk = 1.0; // E q^{n xi}
        double qn = std::pow(params.q, n);
        for (size_t k = 0; k < dist.size(); ++k) {
            eq += dist[k] * qnk;
            qnk *= qn;
        }
        Cplx term = zn * eq / qq;
        out += term;
        if (std::abs(term) < 1e-18 && n > 4) return out;
        zn *= -params.zeta;
        qq *= (1.0 - std::pow(params.q, n + 1));
    }
    throw accuracy_error("q_laplace_series: series did not settle");
}

namespace {

double contour_integral_real(const std::function<Cplx(Cplx)>& integrand, double radius,
                             double prefactor) {
    // (prefactor / m) * sum_j z_j F(z_j), trapezoid on |z| = radius,
    // doubled until 1e-10 agreement
    double prev = 0.0;
    for (int m = 64; m <= 16384; m *= 2) {
        Cplx acc = 0.0;
        for (int j = 0; j < m; ++j) {
            double th = 2.0 * M_PI * j / m;
            Cplx z = radius * Cplx(std::cos(th), std::sin(th));
            acc += z * integrand(z);
        }
        double val = prefactor * (acc.real() / m);
        if (m > 64 && std::fabs(val - prev) < 1e-10) return val;
        prev = val;
    }
    throw accuracy_error("q-Laplace inversion: contour nodes did not converge");
}

} // namespace

double invert_q_laplace(const std::function<Cplx(Cplx)>& L, double q, int n) {
    if (!(q > 0 && q < 1)) throw std::invalid_argument("invert_q_laplace: q in (0,1)");
    if (n < 0) throw std::invalid_argument("invert_q_laplace: n >= 0");
    const double radius = 0.5 * (std::pow(q, -n) + std::pow(q, -n - 1));
    const double qn = std::pow(q, n);
    auto integrand = [&](Cplx z) { return qpoch_inf(-z * qn * q, q) * L(z); };
    // P{xi=n} = (q^n / 2 pi i) * oint (-q^{n+1} z; q)_inf L(z) dz, the
    // residue at z = -q^{-n} picks out exactly the mass at n under the
    // i >= 0 product convention (telescoping kills all other terms).
    return contour_integral_real(integrand, radius, qn);
}

std::vector<double> invert_q_laplace_all(const std::function<Cplx(Cplx)>& L, double q, int n_max) {
    std::vector<double> out(n_max + 1);
    for (int n = 0; n <= n_max; ++n) out[n] = invert_q_laplace(L, q, n);
    return out;
}

double q_moment(const std::function<Cplx(Cplx)>& L, double q, int n) {
    if (!(q > 0 && q < 1)) throw std::invalid_argument("q_moment: q in (0,1)");
    if (n < 0) throw std::invalid_argument("q_moment: n >= 0");
    const double radius = 0.5;
    // E q^{n xi} = (-1)^n (q;q)_n oint L(z) z^{-n-1} dz / (2 pi i)
    double sign = (n % 2) ? -1.0 : 1.0;
    double qqn = std::abs(qpoch(Cplx(q, 0.0), q, n));
    auto integrand = [&](Cplx z) { return L(z) / std::pow(z, n + 1); };
    return contour_integral_real(integrand, radius, sign * qqn);
}

} // namespace dpplab::qlaplace
