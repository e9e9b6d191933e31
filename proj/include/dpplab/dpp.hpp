#pragma once

#include <vector>

#include "dpplab/kernels.hpp"
#include "dpplab/rng.hpp"

namespace dpplab::dpp {

// Finite sorted duplicate-free set of sites.
struct PointConfiguration {
    std::vector<int> sites;
    bool contains(int x) const;
};

// Pre-decomposed kernel for repeated sampling.
class Sampler {
public:
    // eigenvalues outside [-1e-6, 1+1e-6] raise invalid_argument; small
    // excursions are clamped to [0,1]
    explicit Sampler(const kernels::KernelMatrix& K);
    PointConfiguration sample(rng::Stream& stream) const;
    const std::vector<double>& eigenvalues() const { return lambda_; }

private:
    int n_;
    std::vector<double> lambda_;
    linalg::Matrix vectors_;
};

PointConfiguration sample_dpp(const kernels::KernelMatrix& K, rng::Stream& stream);

// Fraction of samples containing all given points, with standard error.
struct CorrelationEstimate {
    double value;
    double stderr_;
    long n_samples;
};
CorrelationEstimate empirical_correlation(const std::vector<PointConfiguration>& samples,
                                          const std::vector<int>& points);

// For a rank-N projection kernel: P(X = config) = det K|_config.
double config_probability(const kernels::KernelMatrix& K, const PointConfiguration& config);

} // namespace dpplab::dpp
