#pragma once

#include <utility>
#include <vector>

#include "dpplab/rng.hpp"

namespace dpplab::simulators {

// Realized height values, one per query point.
struct HeightSample {
    std::vector<long> heights;
};

// Continuous-time ASEP on Z with step initial data (all negative sites
// occupied), left jump rate q, right jump rate 1.  Returns h(x) = number of
// particles at sites >= x for each query.  The window {-L..R} with
// L = R = ceil(2t + max|query| + 8 sqrt(t+1) + 20) bounds boundary effects;
// a particle within 5 sites of either edge raises window_overflow_error.
HeightSample asep_simulate(double q, double t, const std::vector<int>& queries,
                           rng::Stream& stream);

enum class SixVertexMode {
    six_vertex,  // s = q^{-1/2}: vertical multiplicity <= 1
    higher_spin, // s = -q^{1/2}
};

struct SixVertexParams {
    double q = 0.5;
    double u = 1.0;
    SixVertexMode mode = SixVertexMode::six_vertex;
    double s() const;
    // weight of the transition (i1,j1) -> (i2,j2); zero off the conservation
    // line i1+j1 = i2+j2
    double transition(int i1, int j1, int i2, int j2) const;
    void validate() const; // all reachable weights must lie in [0,1]
};

// Height h(M,N) of the stochastic (higher spin) six-vertex model in the
// quadrant, sampled diagonal by diagonal, for each query (M,N).
HeightSample six_vertex_sample(const SixVertexParams& params,
                               const std::vector<std::pair<int, int>>& queries,
                               rng::Stream& stream);

} // namespace dpplab::simulators
