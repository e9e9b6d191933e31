#pragma once

#include <span>
#include <string>
#include <vector>

namespace dpplab::orthopoly {

enum class Family { Hermite, Laguerre, Jacobi, Charlier, Meixner, Krawtchouk, Hahn, Racah };

bool is_discrete(Family f);
const char* family_name(Family f);

// One orthogonal-polynomial family with its parameters.
//   Hermite                    : none
//   Laguerre(beta)             : beta > 0                 (weight t^{beta-1}e^{-t} on (0,inf))
//   Jacobi(a,b)                : a,b > -1                 (weight (1-t)^a(1+t)^b on (-1,1))
//   Charlier(theta)            : theta > 0
//   Meixner(beta,xi)           : beta > 0, xi in (0,1)
//   Krawtchouk(p,M)            : p in (0,1), M >= 1
//   Hahn(a,b,M)                : a,b > -1, M >= 1
//   Racah(a,b,M,cnst)          : a,b > -1, M >= 1, cnst > 0; internally
//                                alpha = -M-1, beta_r = M+a+cnst, gamma = a, delta = b
struct FamilySpec {
    Family family = Family::Hermite;
    double beta = 0, a = 0, b = 0, theta = 0, xi = 0, p = 0, cnst = 1;
    int M = 0;

    static FamilySpec hermite();
    static FamilySpec laguerre(double beta);
    static FamilySpec jacobi(double a, double b);
    static FamilySpec charlier(double theta);
    static FamilySpec meixner(double beta, double xi);
    static FamilySpec krawtchouk(double p, int M);
    static FamilySpec hahn(double a, double b, int M);
    static FamilySpec racah(double a, double b, int M, double cnst = 1.0);

    bool discrete() const { return is_discrete(family); }
    bool finite_support() const;
    // number of support points for finite families (M+1), -1 otherwise
    int support_size() const;
    void validate() const; // throws std::invalid_argument
};

// Weight at a point of the support.  Continuous families: Lebesgue density.
// Discrete families: point must be an integer site in the support; computed
// in log space and exponentiated.
double weight(const FamilySpec& spec, double point);
double log_weight(const FamilySpec& spec, int x); // discrete only

// Paper-standardized polynomial values for the continuous families
// (Hermite leading 2^n, Laguerre leading 1/n!, Jacobi standard), by upward
// three-term recurrence.
double eval_poly(const FamilySpec& spec, int n, double t);

// Closed-form squared norms of the standardized continuous polynomials.
double norm_sq(const FamilySpec& spec, int n);
double log_norm_sq(const FamilySpec& spec, int n);

// Second-order difference operator data of a discrete family:
// D f(x) = up(x) f(x+1) - (up(x)+down(x)) f(x) + down(x) f(x-1),
// D P_n = -mu_n P_n.
struct DifferenceOperatorData {
    std::vector<double> up, down; // tabulated on 0..size-1
    std::vector<double> mu;
    int support_size; // M+1 for finite support; table length for truncated infinite
    bool finite;
};
DifferenceOperatorData difference_operator(const FamilySpec& spec, int table_size = -1);

// Certified truncation point for infinite discrete supports: smallest X with
// tail mass / total mass < rel_tail, from the geometric weight-ratio bound.
int truncated_support(const FamilySpec& spec, double rel_tail = 1e-15);

// Recurrence coefficients (orthonormal form) of a discrete family via the
// Stieltjes procedure on the (possibly truncated) weight.
// p_{-1}=0, a_{-1}=0, a_n p_{n+1}(x) = (x - b_n) p_n(x) - a_{n-1} p_{n-1}(x).
struct Recurrence {
    std::vector<double> diag;    // b_n
    std::vector<double> offdiag; // a_n
    double total_mass;           // sum of the (truncated) weight
};
Recurrence orthonormal_recurrence(const FamilySpec& spec, int n_max);

// Orthonormal Jacobi-matrix coefficients of the continuous families (the
// matrix of multiplication by t in the orthonormal basis).
double ttilde_diag(const FamilySpec& spec, int x);
double ttilde_off(const FamilySpec& spec, int x); // entry (x,x+1)

// Weighted orthonormal functions phi_n(t) = sqrt(W(t)) P~_n(t) for
// n = 0..out.size()-1, evaluated by the dynamically rescaled three-term
// recurrence (stable across the full classically-forbidden range).
void weighted_sequence(const FamilySpec& spec, double t, std::span<double> out);

} // namespace dpplab::orthopoly
