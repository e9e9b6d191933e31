#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dpplab/ensemble.hpp"
#include "dpplab/simulators.hpp"
#include "dpplab/tridiag.hpp"

namespace dpplab::harness {

enum class Regime { dh_airy, dl_airy, asep_tw, asep_kpz, sixv_kpz_sixvertex, sixv_kpz_higherspin };

struct ScalingMap {
    Regime regime;
    double sigma = 0, tau = 0, c = 1;
};

ScalingMap scaling_dh_airy(double rho);
ScalingMap scaling_dl_airy(double rho, double beta);
// t_tilde = (1-q) t; x is the height-function position
ScalingMap scaling_asep_tw(double t_tilde, double x);
ScalingMap scaling_asep_kpz(double t_hat, double x_hat);
// v = q^{1/2}/u in the notation of the quadrant model; mu, nu the macroscopic
// coordinates; sixvertex flag selects the s-mode
ScalingMap scaling_6v_kpz(bool sixvertex_mode, double v, double mu, double nu);

struct ExperimentReport {
    std::string name;
    std::vector<std::pair<std::string, std::string>> fields;
    bool pass = true;

    void add(const std::string& key, const std::string& value);
    void add(const std::string& key, double value);
    void add_check(const std::string& key, bool ok); // records and folds into pass
    std::string to_text() const;                     // key=value lines
};

// --- experiments ------------------------------------------------------------

// Theorem-level identity: q-Laplace of the ASEP height vs the multiplicative
// functional on DL+((1-q)t, |x|+1) (shifted form for x < 0).
ExperimentReport verify_asep_dl_identity(double q, double t, int x,
                                         const std::vector<double>& zetas, long n_replicas,
                                         uint64_t seed);

// TASEP corollary: P{h(x) <= N-1} vs the Laguerre rightmost-particle gap.
ExperimentReport verify_tasep_corollary(double t, int x, int N, long n_replicas, uint64_t seed);

enum class LimitKind {
    charlier_dh,
    meixner_dl,
    meixner_dh,
    krawtchouk_dh,
    hahn_dl,
    racah_dj,
    dl_dh,
};
const char* limit_kind_name(LimitKind k);

struct LimitScanRow {
    int N;
    double jacobi_err;   // max entry error, x <= 30
    double jacobi_bound; // analytic rate bound at the same range
    double kernel_err;   // max entry error, x,y <= 8
};
struct LimitScanResult {
    LimitKind kind;
    kernels::DiscreteEnsembleSpec target;
    std::vector<LimitScanRow> rows;
    bool kernel_decreasing = false;
    bool jacobi_within_bound = false;
    ExperimentReport report() const;
};
// rho plus family extras: meixner_dl/hahn_dl need beta resp. (a,b);
// racah_dj needs (a,b).
LimitScanResult verify_limit_transition(LimitKind kind, double rho, double p1, double p2,
                                        const std::vector<int>& n_grid);

// Finitely-many-rightmost-particles regime: law of h at the scaled position
// vs the DH+(r) law recovered by q-Laplace inversion.
ExperimentReport verify_asep_hermite(double q, double r, const std::vector<double>& t_tilde_grid,
                                     long n_replicas, uint64_t seed);

// Tracy-Widom regime: determinant-only route (DL gap vs F_GUE) over the
// t_tilde grid, plus a Monte Carlo Kolmogorov check at the last grid point.
ExperimentReport verify_asep_tw(double q, const std::vector<double>& t_tilde_grid,
                                const std::vector<double>& s_grid, long n_replicas, uint64_t seed);

// Weak-asymmetry (KPZ) regime for the ASEP, and the six-vertex variant.
ExperimentReport verify_kpz_regimes(const std::vector<double>& eps_grid, double t_hat,
                                    double x_hat, const std::vector<double>& zeta_hats,
                                    long n_replicas, uint64_t seed);

// Six-vertex observable identity against exact ensemble enumeration.
ExperimentReport verify_6v_corollary(double q, double u, simulators::SixVertexMode mode, int M,
                                     int N, const std::vector<double>& zetas, long n_replicas,
                                     uint64_t seed);

// exact RHS of the six-vertex identity (enumeration route), exposed for tests
double sixv_identity_rhs(double q, double u, simulators::SixVertexMode mode, int M, int N,
                         double zeta);

} // namespace dpplab::harness
