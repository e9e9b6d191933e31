#pragma once

#include <vector>

#include "dpplab/ensemble.hpp"
#include "dpplab/linalg.hpp"

namespace dpplab::kernels {

// Symmetric kernel on the window {0..z_max}.
struct KernelMatrix {
    int z_max = -1;
    std::vector<double> entries; // (z_max+1)^2 row-major

    KernelMatrix() = default;
    explicit KernelMatrix(int z) : z_max(z), entries(static_cast<size_t>(z + 1) * (z + 1), 0.0) {}
    int dim() const { return z_max + 1; }
    double& at(int x, int y) { return entries[static_cast<size_t>(x) * dim() + y]; }
    double at(int x, int y) const { return entries[static_cast<size_t>(x) * dim() + y]; }
    linalg::Matrix dense() const;
};

// Quadrature nodes/weights for integrating sqrt-weighted orthonormal
// function products over a subinterval of the weight support.  Endpoint
// singularities of the weight are absorbed by power substitutions.
struct NodeSet {
    std::vector<double> t, w;
};
NodeSet weight_nodes(const orthopoly::FamilySpec& family, double lo, double hi, int nmax,
                     int refine_level = 0);

// K^{sign}_rho(x,y) of Eq-level accuracy ~1e-11: the bounded side is
// integrated by panel Gauss-Legendre, the other side via K+ + K- = delta.
double discrete_kernel_quadrature(const DiscreteEnsembleSpec& spec, int x, int y,
                                  double tol = 1e-11);

// Whole window {0..z_max} in one pass (shared quadrature nodes).
KernelMatrix kernel_block(const DiscreteEnsembleSpec& spec, int z_max, double tol = 1e-11);

// Christoffel-Darboux-type closed forms valid off the diagonal.
double discrete_kernel_integrable(const DiscreteEnsembleSpec& spec, int x, int y);

// Rank-N projection kernel of the N-point orthogonal polynomial ensemble
// (counting reference), by spectral projection of the pre-limit Jacobi
// matrix; cross-checked in tests against direct orthonormal summation.
double cd_kernel(const orthopoly::FamilySpec& spec, int N, int x, int y);
KernelMatrix cd_kernel_matrix(const orthopoly::FamilySpec& spec, int N, int z_max);

// Direct summation route sqrt(W(x)W(y)) sum_{n<N} p_n(x) p_n(y) from the
// Stieltjes recurrence (oracle for cd_kernel).
KernelMatrix cd_kernel_direct(const orthopoly::FamilySpec& spec, int N, int z_max);

// Airy kernel (Ai(x)Ai'(y) - Ai'(x)Ai(y))/(x-y), diagonal Ai'^2 - x Ai^2.
double airy_kernel(double x, double y);

KernelMatrix complement_kernel(const KernelMatrix& k);

// Hermite integration cut: beyond |t| = T the discarded product mass is
// certified below ~1e-13 for all indices up to nmax.
double hermite_tail_cut(double rho, int nmax);

} // namespace dpplab::kernels
