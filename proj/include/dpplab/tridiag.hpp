#pragma once

#include <functional>
#include <vector>

#include "dpplab/ensemble.hpp"
#include "dpplab/linalg.hpp"
#include "dpplab/orthopoly.hpp"

namespace dpplab::tridiag {

// Symmetric tridiagonal matrix, finite or lazily generated semi-infinite.
struct TridiagMatrix {
    std::function<double(int)> diag_fn;
    std::function<double(int)> off_fn; // entry (x, x+1)
    int size = -1;                     // -1: semi-infinite

    double diag(int x) const { return diag_fn(x); }
    double off(int x) const { return off_fn(x); }
    void realize(int n, std::vector<double>& d, std::vector<double>& e) const;
};

// The limit Jacobi matrix of an ensemble: matrix of +-(T - rho) in the
// orthonormal-polynomial basis.
TridiagMatrix build_limit_jacobi(const kernels::DiscreteEnsembleSpec& spec);

// Pre-limit matrix A_N = (symmetrized difference operator + mu_N)/c_N; for
// finite-support families extended by the constant -1 beyond index M.
TridiagMatrix build_prelimit_jacobi(const orthopoly::FamilySpec& spec, int N, double c_N);

// Full decomposition of the leading n x n section.
linalg::EigenSym eigen_sym_tridiag(const TridiagMatrix& m, int n);

struct SpectralProjection {
    linalg::Matrix matrix;              // n x n, P = V 1_{lambda>0} V^T
    std::vector<double> near_zero;      // eigenvalues within 1e-9, assigned positive
};
// Plain positive-part spectral projection of the n x n section.
SpectralProjection spectral_projection_plus(const TridiagMatrix& m, int n);

// Kernel block of [A]_+ for a semi-infinite limit matrix, computed from
// finite sections with a Radau-type pinned node at the spectral cut,
// averaging over section sizes and eliminating the leading 1/n bias.
// Converges like ~n^{-2} versus the plain section's oscillatory n^{-1/2}.
linalg::Matrix limit_kernel_block(const TridiagMatrix& m, int window, int n);

// Christoffel-Darboux kernel block (counting reference) of the N-point
// ensemble of a discrete family: [A_N]_+ evaluated by inverse iteration with
// the exactly known eigenvalues (mu_N - mu_k)/c_N on the full certified
// support.  Exact-rank N by construction.
linalg::Matrix cd_kernel_block(const orthopoly::FamilySpec& spec, int N, int window);

// Scaling data for the edge limits of the discrete ensembles.
struct AiryScaling {
    double sigma, tau, c;
};
AiryScaling dh_airy_scaling(double rho);                 // sigma = rho^2/2
AiryScaling dl_airy_scaling(double rho, double beta);    // sigma = (rho-beta)^2/(4 rho)

// Residuals of the defining equations of the DL scaling constants.
struct ScalingResiduals {
    double eq_first, eq_second;
};
ScalingResiduals dl_scaling_residuals(double rho, double beta, kernels::Sign sign);

// Normalized action of the scaled difference operator on g at v:
// DH: sqrt(2) c (D f)(x),  DL: c^{-1} (D f)(x),  f(x) = g((sigma-x)/tau),
// x = round(sigma - tau v).  Converges to g''(v) - v g(v).
double apply_scaled_operator(const kernels::DiscreteEnsembleSpec& spec,
                             const std::function<double(double)>& g, double v);

} // namespace dpplab::tridiag
