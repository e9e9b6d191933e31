#include "dpplab/orthopoly.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dpplab/errors.hpp"
#include "dpplab/special.hpp"

namespace dpplab::orthopoly {

using special::log_gamma;
using special::log_pochhammer;

bool is_discrete(Family f) {
    switch (f) {
        case Family::Hermite:
        case Family::Laguerre:
        case Family::Jacobi: return false;
        default: return true;
    }
}

const char* family_name(Family f) {
    switch (f) {
        case Family::Hermite: return "hermite";
        case Family::Laguerre: return "laguerre";
        case Family::Jacobi: return "jacobi";
        case Family::Charlier: return "charlier";
        case Family::Meixner: return "meixner";
        case Family::Krawtchouk: return "krawtchouk";
        case Family::Hahn: return "hahn";
        case Family::Racah: return "racah";
    }
    return "?";
}

FamilySpec FamilySpec::hermite() { return FamilySpec{Family::Hermite}; }
FamilySpec FamilySpec::laguerre(double beta) {
    FamilySpec s{Family::Laguerre};
    s.beta = beta;
    s.validate();
    return s;
}
FamilySpec FamilySpec::jacobi(double a, double b) {
    FamilySpec s{Family::Jacobi};
    s.a = a;
    s.b = b;
    s.validate();
    return s;
}
FamilySpec FamilySpec::charlier(double theta) {
    FamilySpec s{Family::Charlier};
    s.theta = theta;
    s.validate();
    return s;
}
FamilySpec FamilySpec::meixner(double beta, double xi) {
    FamilySpec s{Family::Meixner};
    s.beta = beta;
    s.xi = xi;
    s.validate();
    return s;
}
FamilySpec FamilySpec::krawtchouk(double p, int M) {
    FamilySpec s{Family::Krawtchouk};
    s.p = p;
    s.M = M;
    s.validate();
    return s;
}
FamilySpec FamilySpec::hahn(double a, double b, int M) {
    FamilySpec s{Family::Hahn};
    s.a = a;
    s.b = b;
    s.M = M;
    s.validate();
    return s;
}
FamilySpec FamilySpec::racah(double a, double b, int M, double cnst) {
    FamilySpec s{Family::Racah};
    s.a = a;
    s.b = b;
    s.M = M;
    s.cnst = cnst;
    s.validate();
    return s;
}

bool FamilySpec::finite_support() const {
    return family == Family::Krawtchouk || family == Family::Hahn || family == Family::Racah;
}

int FamilySpec::support_size() const { return finite_support() ? M + 1 : -1; }

void FamilySpec::validate() const {
    auto fail = [&](const std::string& msg) {
        throw std::invalid_argument(std::string(family_name(family)) + ": " + msg);
    };
    switch (family) {
        case Family::Hermite: break;
        case Family::Laguerre:
            if (!(beta > 0)) fail("requires beta > 0");
            break;
        case Family::Jacobi:
            if (!(a > -1 && b > -1)) fail("requires a > -1 and b > -1");
            break;
        case Family::Charlier:
            if (!(theta > 0)) fail("requires theta > 0");
            break;
        case Family::Meixner:
            if (!(beta > 0)) fail("requires beta > 0");
            if (!(xi > 0 && xi < 1)) fail("requires xi strictly inside (0,1)");
            break;
        case Family::Krawtchouk:
            if (!(p > 0 && p < 1)) fail("requires p strictly inside (0,1)");
            if (M < 1) fail("requires M >= 1");
            break;
        case Family::Hahn:
            if (!(a > -1 && b > -1)) fail("requires a > -1 and b > -1");
            if (M < 1) fail("requires M >= 1");
            break;
        case Family::Racah: {
            if (M < 1) fail("requires M >= 1");
            if (!(cnst > 0)) fail("requires const > 0");
            double gamma = a, delta = b, beta_r = M + a + cnst;
            if (!(gamma > -1)) fail("requires gamma = a > -1");
            if (!(delta > -1)) fail("requires delta = b > -1");
            if (!(beta_r > M + gamma)) fail("requires beta = M+a+const > M+gamma");
            break;
        }
    }
}

// ---------------------------------------------------------------------------
// Weights
// ---------------------------------------------------------------------------

double log_weight(const FamilySpec& spec, int x) {
    if (!spec.discrete()) throw std::invalid_argument("log_weight: continuous family");
    if (x < 0 || (spec.finite_support() && x > spec.M))
        throw std::domain_error("log_weight: point outside support");
    switch (spec.family) {
        case Family::Charlier:
            return x * std::log(spec.theta) - log_gamma(x + 1.0);
        case Family::Meixner:
            return log_gamma(spec.beta + x) - log_gamma(spec.beta) - log_gamma(x + 1.0) +
                   x * std::log(spec.xi);
        case Family::Krawtchouk:
            return log_gamma(spec.M + 1.0) - log_gamma(x + 1.0) - log_gamma(spec.M - x + 1.0) +
                   x * std::log(spec.p) + (spec.M - x) * std::log1p(-spec.p);
        case Family::Hahn:
            return log_gamma(spec.a + x + 1) + log_gamma(spec.b + spec.M - x + 1) -
                   log_gamma(x + 1.0) - log_gamma(spec.a + 1) - log_gamma(spec.M - x + 1.0) -
                   log_gamma(spec.b + 1);
        case Family::Racah: {
            const double al = -spec.M - 1.0, be = spec.M + spec.a + spec.cnst;
            const double ga = spec.a, de = spec.b;
            double lg = 0.0, sign = 1.0;
            auto mul = [&](double z, int n, bool inv) {
                auto pl = log_pochhammer(z, n);
                lg += inv ? -pl.log_abs : pl.log_abs;
                sign *= pl.sign;
            };
            mul(al + 1, x, false);
            mul(be + de + 1, x, false);
            mul(ga + 1, x, false);
            mul(ga + de + 1, x, false);
            mul((ga + de + 3) / 2, x, false);
            mul(-al + ga + de + 1, x, true);
            mul(-be + ga + 1, x, true);
            mul((ga + de + 1) / 2, x, true);
            mul(de + 1, x, true);
            lg -= log_gamma(x + 1.0);
            if (sign <= 0.0) throw std::domain_error("racah weight not positive");
            return lg;
        }
        default: throw std::logic_error("log_weight: unreachable");
    }
}

double weight(const FamilySpec& spec, double point) {
    spec.validate();
    if (spec.discrete()) {
        double xr = std::round(point);
        if (std::fabs(point - xr) > 1e-9)
            throw std::domain_error("weight: discrete family needs an integer site");
        return std::exp(log_weight(spec, static_cast<int>(xr)));
    }
    switch (spec.family) {
        case Family::Hermite: return std::exp(-point * point);
        case Family::Laguerre:
            if (point <= 0) throw std::domain_error("weight: laguerre support is (0,inf)");
            return std::exp((spec.beta - 1) * std::log(point) - point);
        case Family::Jacobi:
            if (point <= -1 || point >= 1) throw std::domain_error("weight: jacobi support is (-1,1)");
            return std::exp(spec.a * std::log1p(-point) + spec.b * std::log1p(point));
        default: throw std::logic_error("weight: unreachable");
    }
}

// ---------------------------------------------------------------------------
// Continuous polynomials: standardized values, norms, orthonormal recurrence
// ---------------------------------------------------------------------------

namespace {

// three-term data of the standardized polynomials:
// t P_x = cp(x) P_{x+1} + c0(x) P_x + cm(x) P_{x-1}
void standardized_recurrence(const FamilySpec& s, int x, double& cp, double& c0, double& cm) {
    switch (s.family) {
        case Family::Hermite:
            cp = 0.5;
            c0 = 0.0;
            cm = x;
            return;
        case Family::Laguerre:
            cp = x + 1.0;
            c0 = 2.0 * x + s.beta;
            cm = x + s.beta - 1.0;
            return;
        case Family::Jacobi: {
            const double a = s.a, b = s.b;
            if (x == 0) {
                cp = 2.0 / (a + b + 2.0);
                c0 = (b - a) / (a + b + 2.0);
                cm = 0.0;
                return;
            }
            cp = 2.0 * (x + 1.0) * (x + a + b + 1.0) / ((2.0 * x + a + b + 1.0) * (2.0 * x + a + b + 2.0));
            c0 = (b * b - a * a) / ((2.0 * x + a + b) * (2.0 * x + a + b + 2.0));
            cm = 2.0 * (x + a) * (x + b) / ((2.0 * x + a + b) * (2.0 * x + a + b + 1.0));
            return;
        }
        default: throw std::invalid_argument("standardized_recurrence: discrete family");
    }
}

} // namespace

double eval_poly(const FamilySpec& spec, int n, double t) {
    if (n < 0) throw std::invalid_argument("eval_poly: n must be >= 0");
    if (spec.discrete()) throw std::invalid_argument("eval_poly: continuous families only");
    double pm = 0.0, pc = 1.0;
    for (int x = 0; x < n; ++x) {
        double cp, c0, cm;
        standardized_recurrence(spec, x, cp, c0, cm);
        double pn = ((t - c0) * pc - cm * pm) / cp;
        pm = pc;
        pc = pn;
    }
    return pc;
}

double log_norm_sq(const FamilySpec& spec, int n) {
    if (n < 0) throw std::invalid_argument("norm_sq: n must be >= 0");
    switch (spec.family) {
        case Family::Hermite:
            return 0.5 * std::log(M_PI) + n * std::log(2.0) + log_gamma(n + 1.0);
        case Family::Laguerre:
            return log_gamma(n + spec.beta) - log_gamma(n + 1.0);
        case Family::Jacobi: {
            const double a = spec.a, b = spec.b;
            if (n == 0)
                return (a + b + 1) * std::log(2.0) + log_gamma(a + 1) + log_gamma(b + 1) -
                       log_gamma(a + b + 2);
            return (a + b + 1) * std::log(2.0) + log_gamma(n + a + 1) + log_gamma(n + b + 1) -
                   std::log(2.0 * n + a + b + 1) - log_gamma(n + a + b + 1) - log_gamma(n + 1.0);
        }
        default: throw std::invalid_argument("norm_sq: continuous families only");
    }
}

double norm_sq(const FamilySpec& spec, int n) { return std::exp(log_norm_sq(spec, n)); }

double ttilde_off(const FamilySpec& s, int x) {
    switch (s.family) {
        case Family::Hermite: return std::sqrt((x + 1.0) / 2.0);
        case Family::Laguerre: return std::sqrt((x + 1.0) * (x + s.beta));
        case Family::Jacobi: {
            const double a = s.a, b = s.b;
            if (x == 0)
                return 2.0 / (a + b + 2.0) * std::sqrt((a + 1.0) * (b + 1.0) / (a + b + 3.0));
            double inner = (x + 1.0) * (x + a + 1.0) * (x + b + 1.0) * (x + a + b + 1.0) /
                           ((2.0 * x + a + b + 1.0) * (2.0 * x + a + b + 3.0));
            return 2.0 / (2.0 * x + a + b + 2.0) * std::sqrt(inner);
        }
        default: throw std::invalid_argument("ttilde_off: continuous families only");
    }
}

double ttilde_diag(const FamilySpec& s, int x) {
    double cp, c0, cm;
    standardized_recurrence(s, x, cp, c0, cm);
    return c0;
}

static double log_weight_continuous(const FamilySpec& s, double t) {
    switch (s.family) {
        case Family::Hermite: return -t * t;
        case Family::Laguerre: return (s.beta - 1) * std::log(t) - t;
        case Family::Jacobi: return s.a * std::log1p(-t) + s.b * std::log1p(t);
        default: throw std::invalid_argument("continuous family expected");
    }
}

void weighted_sequence(const FamilySpec& spec, double t, std::span<double> out) {
    if (out.empty()) return;
    if (spec.discrete()) throw std::invalid_argument("weighted_sequence: continuous families only");
    // phi_0 = sqrt(W(t)) / ||P_0||, then the orthonormal three-term recurrence
    // phi_{x+1} = ((t - b_x) phi_x - a_{x-1} phi_{x-1}) / a_x, carried as
    // mantissa * 2^E with on-the-fly renormalization.
    const double lphi0 = 0.5 * (log_weight_continuous(spec, t) - log_norm_sq(spec, 0));
    if (!std::isfinite(lphi0))
        throw std::domain_error("weighted_sequence: point on the support boundary");
    int E = static_cast<int>(std::floor(lphi0 / M_LN2));
    double cur = std::exp(lphi0 - E * M_LN2);
    double prev = 0.0;
    auto emit = [&](int idx, double mant) {
        out[idx] = (E > -1070 && E < 1020) ? std::ldexp(mant, E) : (E >= 1020 ? mant * 1e308 : 0.0);
    };
    emit(0, cur);
    const int nmax = static_cast<int>(out.size()) - 1;
    double a_prev = 0.0;
    for (int x = 0; x < nmax; ++x) {
        const double bx = ttilde_diag(spec, x);
        const double ax = ttilde_off(spec, x);
        double next = ((t - bx) * cur - a_prev * prev) / ax;
        prev = cur;
        cur = next;
        a_prev = ax;
        while (std::fabs(cur) > 0x1.0p+300) {
            cur = std::ldexp(cur, -300);
            prev = std::ldexp(prev, -300);
            E += 300;
        }
        while (cur != 0.0 && std::fabs(cur) < 0x1.0p-300 && std::fabs(prev) < 0x1.0p-300) {
            cur = std::ldexp(cur, 300);
            prev = std::ldexp(prev, 300);
            E -= 300;
        }
        emit(x + 1, cur);
    }
}

// ---------------------------------------------------------------------------
// Discrete families: difference operators, truncation, Stieltjes
// ---------------------------------------------------------------------------

DifferenceOperatorData difference_operator(const FamilySpec& spec, int table_size) {
    spec.validate();
    if (!spec.discrete()) throw std::invalid_argument("difference_operator: discrete families only");
    DifferenceOperatorData d;
    d.finite = spec.finite_support();
    d.support_size = d.finite ? spec.M + 1 : -1;
    int size = d.finite ? spec.M + 1 : (table_size > 0 ? table_size : truncated_support(spec) + 1);
    d.up.resize(size);
    d.down.resize(size);
    d.mu.resize(size);
    for (int x = 0; x < size; ++x) {
        switch (spec.family) {
            case Family::Charlier:
                d.up[x] = spec.theta;
                d.down[x] = x;
                d.mu[x] = x;
                break;
            case Family::Meixner:
                d.up[x] = spec.xi * (x + spec.beta);
                d.down[x] = x;
                d.mu[x] = (1.0 - spec.xi) * x;
                break;
            case Family::Krawtchouk:
                d.up[x] = spec.p * (spec.M - x);
                d.down[x] = (1.0 - spec.p) * x;
                d.mu[x] = x;
                break;
            case Family::Hahn:
                d.up[x] = (spec.M - x) * (x + spec.a + 1.0);
                d.down[x] = x * (spec.M + spec.b + 1.0 - x);
                d.mu[x] = x * (x + spec.a + spec.b + 1.0);
                break;
            case Family::Racah: {
                const double be = spec.M + spec.a + spec.cnst, ga = spec.a, de = spec.b;
                d.up[x] = (spec.M - x) * (x + be + de + 1.0) * (x + ga + 1.0) * (x + ga + de + 1.0) /
                          ((2.0 * x + ga + de + 1.0) * (2.0 * x + ga + de + 2.0));
                d.down[x] = x * (x + spec.M + ga + de + 1.0) * (be - ga - x) * (x + de) /
                            ((2.0 * x + ga + de) * (2.0 * x + ga + de + 1.0));
                d.mu[x] = x * (x + be - spec.M);
                break;
            }
            default: break;
        }
    }
    if (size > 0) d.down[0] = 0.0;
    if (d.finite) d.up[size - 1] = 0.0;
    return d;
}

int truncated_support(const FamilySpec& spec, double rel_tail) {
    if (spec.finite_support()) return spec.M;
    // Weight ratio r(x) = W(x+1)/W(x); once r(x) <= r* < 1 the tail beyond X
    // is bounded by W(X+1)/(1-r*).  Scan until the certified bound drops
    // below rel_tail of the running mass.
    auto ratio = [&](int x) {
        if (spec.family == Family::Charlier) return spec.theta / (x + 1.0);
        return spec.xi * (x + spec.beta) / (x + 1.0);
    };
    // sup of the ratio over y > x: Charlier ratios decrease; Meixner ratios
    // approach xi monotonically from either side
    auto ratio_sup = [&](int x) {
        if (spec.family == Family::Charlier) return ratio(x + 1);
        return std::max(ratio(x + 1), spec.xi);
    };
    double mass = 0.0;
    double logw = log_weight(spec, 0);
    double w = std::exp(logw);
    int x = 0;
    for (;;) {
        mass += w;
        double rbar = ratio_sup(x);
        if (rbar < 0.999999) {
            double tail = w * ratio(x) / (1.0 - rbar); // >= sum_{y > x} W(y)
            if (tail < rel_tail * mass) return x;
        }
        logw += std::log(ratio(x));
        w = std::exp(logw);
        ++x;
        if (x > 50'000'000) throw accuracy_error("truncated_support: no certified truncation found");
    }
}

Recurrence orthonormal_recurrence(const FamilySpec& spec, int n_max) {
    spec.validate();
    if (!spec.discrete()) throw std::invalid_argument("orthonormal_recurrence: discrete families only");
    int X;
    if (spec.finite_support()) {
        X = spec.M;
        if (n_max > spec.M + 1)
            throw std::invalid_argument("orthonormal_recurrence: n_max exceeds support size");
    } else {
        X = truncated_support(spec, 1e-15);
        // certification required by contract: residual below 1e-13 of mass
        // is guaranteed by the 1e-15 construction above
    }
    const int S = X + 1;
    std::vector<double> w(S), tval(S);
    for (int x = 0; x < S; ++x) {
        w[x] = std::exp(log_weight(spec, x));
        tval[x] = x;
    }
    double mass = 0.0;
    for (double v : w) mass += v;

    Recurrence rec;
    rec.total_mass = mass;
    rec.diag.resize(n_max);
    rec.offdiag.resize(n_max > 1 ? n_max - 1 : 0);
    std::vector<double> p_prev(S, 0.0), p_cur(S, 1.0 / std::sqrt(mass)), q(S);
    double a_prev = 0.0;
    for (int n = 0; n < n_max; ++n) {
        double bn = 0.0;
        for (int x = 0; x < S; ++x) bn += tval[x] * p_cur[x] * p_cur[x] * w[x];
        rec.diag[n] = bn;
        if (n + 1 >= n_max) break;
        for (int x = 0; x < S; ++x) q[x] = (tval[x] - bn) * p_cur[x] - a_prev * p_prev[x];
        double an2 = 0.0;
        for (int x = 0; x < S; ++x) an2 += q[x] * q[x] * w[x];
        double an = std::sqrt(an2);
        if (an <= 0.0 || !std::isfinite(an))
            throw accuracy_error("orthonormal_recurrence: breakdown in Stieltjes procedure");
        rec.offdiag[n] = an;
        for (int x = 0; x < S; ++x) {
            double pn = q[x] / an;
            p_prev[x] = p_cur[x];
            p_cur[x] = pn;
        }
        a_prev = an;
    }
    return rec;
}

} // namespace dpplab::orthopoly
