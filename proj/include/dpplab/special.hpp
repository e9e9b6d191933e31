#pragma once

#include <cmath>
#include <utility>

namespace dpplab::special {

inline double log_gamma(double x) { return std::lgamma(x); }

// log of the Pochhammer symbol (z)_n with sign, valid for any real z
// (negative z gives alternating signs until the factor hits zero).
struct SignedLog {
    double log_abs;
    double sign; // -1, 0, +1
};
SignedLog log_pochhammer(double z, int n);

// Regularized lower incomplete gamma P(a,x) = gamma(a,x)/Gamma(a).
double gamma_p(double a, double x);

// Airy function Ai and its derivative on the real line.
// Maclaurin series (compensated double-double accumulation) on [-8, 6],
// asymptotic expansions outside; both branches agree to ~1e-12 at the seams.
struct AiryValue {
    double ai;
    double aip;
};
AiryValue airy(double x);

inline double airy_ai(double x) { return airy(x).ai; }
inline double airy_ai_prime(double x) { return airy(x).aip; }

} // namespace dpplab::special
