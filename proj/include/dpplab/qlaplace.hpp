#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace dpplab::qlaplace {

using Cplx = std::complex<double>;

struct QLaplaceParams {
    double q;  // in (0,1)
    Cplx zeta; // not in -q^{Z<=0}
    void validate() const;
};

// prod_{i>=0} 1/(1 + zeta q^{start+i}); truncated once the running factor is
// within 1e-16 of 1 (geometric tail).  Throws domain_error near a pole.
Cplx geometric_qfactor(Cplx zeta, double q, double start);
double geometric_qfactor(double zeta, double q, double start);

// L_xi(zeta) = E prod_{i>=0} 1/(1+zeta q^{xi+i}) of a finite-support
// distribution p_k = dist[k] on {0,1,...}.
Cplx q_laplace_rv(std::span<const double> dist, const QLaplaceParams& params);

// L^{(q)}_X(zeta) = prod_{x in X} 1/(1+zeta q^x) of a fixed configuration.
Cplx q_laplace_config(std::span<const int> sites, const QLaplaceParams& params);

// Series form sum_n (-zeta)^n E(q^{n xi}) / (q;q)_n, |zeta| < 1.
Cplx q_laplace_series(std::span<const double> dist, const QLaplaceParams& params);

// q-Pochhammer (a;q)_n and (a;q)_inf.
Cplx qpoch(Cplx a, double q, int n);
Cplx qpoch_inf(Cplx a, double q);

// P{xi = n} recovered from the transform by the contour-integral inversion;
// trapezoid nodes on the circle are doubled until 1e-10 agreement.
double invert_q_laplace(const std::function<Cplx(Cplx)>& L, double q, int n);
std::vector<double> invert_q_laplace_all(const std::function<Cplx(Cplx)>& L, double q, int n_max);

// E q^{n xi} from the transform (contour |z| = 1/2).
double q_moment(const std::function<Cplx(Cplx)>& L, double q, int n);

} // namespace dpplab::qlaplace
