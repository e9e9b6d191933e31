#pragma once

#include <complex>
#include <functional>

#include "dpplab/kernels.hpp"

namespace dpplab::fredholm {

// Per-point factor f: Z>=0 -> (0,1] of a multiplicative functional together
// with a certified bound on the neglected tail sum_{z>Z} (1-f(z)) K(z,z).
struct MultiplicativeFunctional {
    std::function<double(int)> f;
    std::function<double(int)> tail_bound;

    // f(z) = 1/(1 + zeta q^z), tail bound zeta q^{Z+1}/(1-q)
    static MultiplicativeFunctional q_geometric(double zeta, double q);
};

// P(X intersect {0..N-1} = empty) = det of the N x N identity-minus-kernel
// block.  N = 0 returns 1.
double gap_det_discrete(const kernels::DiscreteEnsembleSpec& spec, int N);

enum class HalfLine { above, below }; // (rho, +end) or (-end, rho) of the support

// The dual gap probability: Fredholm determinant of the rank-N
// Christoffel-Darboux kernel on L^2(I, W), evaluated by Nystrom quadrature
// on I (an independent route from gap_det_discrete).
double gap_det_continuous(const orthopoly::FamilySpec& spec, int N, double rho, HalfLine side);

// E prod_{x in X} f(x) = det(1 - D_g K D_g), g = sqrt(1-f), on a window
// chosen from the tail bound; result within tol of the infinite expression.
double expect_multiplicative(const kernels::DiscreteEnsembleSpec& spec,
                             const MultiplicativeFunctional& f, double tol);

// finite-window kernel given explicitly (no tail): exact identity
double expect_multiplicative(const kernels::KernelMatrix& K, const std::function<double(int)>& f);

// q-geometric factor with complex zeta (contour evaluations):
// det(1 + (f-1)K) with f(z) = 1/(1+zeta q^z).
std::complex<double> expect_multiplicative_qfactor(const kernels::DiscreteEnsembleSpec& spec,
                                                   std::complex<double> zeta, double q, double tol);
std::complex<double> expect_multiplicative_qfactor(const kernels::KernelMatrix& K,
                                                   std::complex<double> zeta, double q);

// GUE Tracy-Widom distribution F(s) = det(1 - K_Airy)|_{L^2(s,inf)} by
// Nystrom quadrature on a tan-compactified half line; node counts m and 2m
// must agree to 1e-9.
double tracy_widom_gue(double s);

struct AiryMoments {
    double mean;             // E S_M
    double second_factorial; // E S_M (S_M - 1)
};
// Moments of S_M = sum_{z in Airy, z < M} exp(tau_hat z).
AiryMoments airy_statistic_moments(double M, double tau_hat);

// E_Airy prod 1/(1 + zeta_hat exp(tau_hat z)) on L^2(R).
double kpz_laplace_rhs(double zeta_hat, double tau_hat, double tol = 1e-7);

} // namespace dpplab::fredholm
