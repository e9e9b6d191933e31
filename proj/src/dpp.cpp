#include "dpplab/dpp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dpplab::dpp {

bool PointConfiguration::contains(int x) const {
    return std::binary_search(sites.begin(), sites.end(), x);
}

Sampler::Sampler(const kernels::KernelMatrix& K) : n_(K.dim()) {
    linalg::EigenSym es = linalg::eigen_sym(K.dense());
    lambda_ = es.values;
    vectors_ = std::move(es.vectors);
    for (double& l : lambda_) {
        if (l < -1e-6 || l > 1.0 + 1e-6)
            throw std::invalid_argument("sample_dpp: kernel eigenvalue outside [0,1]");
        l = std::clamp(l, 0.0, 1.0);
    }
}

PointConfiguration Sampler::sample(rng::Stream& stream) const {
    // Bernoulli selection of eigenvectors, then sequential projection
    // sampling from the selected orthonormal set.
    std::vector<int> sel;
    for (int k = 0; k < n_; ++k)
        if (stream.uniform() < lambda_[k]) sel.push_back(k);
    int kcount = static_cast<int>(sel.size());
    // V: n x k working copy
    linalg::Matrix V(n_, kcount);
    for (int c = 0; c < kcount; ++c)
        for (int i = 0; i < n_; ++i) V(i, c) = vectors_(i, sel[c]);
    PointConfiguration out;
    for (int remaining = kcount; remaining > 0; --remaining) {
        // p(x) = ||row_x||^2 / remaining
        double u = stream.uniform() * remaining;
        int x = n_ - 1;
        double acc = 0.0;
        for (int i = 0; i < n_; ++i) {
            double r = 0.0;
            for (int c = 0; c < remaining; ++c) r += V(i, c) * V(i, c);
            acc += r;
            if (acc >= u) {
                x = i;
                break;
            }
        }
        out.sites.push_back(x);
        // project the span onto the complement of e_x: pivot on the column
        // with the largest row-x entry, eliminate, then re-orthonormalize
        int piv = 0;
        for (int c = 1; c < remaining; ++c)
            if (std::fabs(V(x, c)) > std::fabs(V(x, piv))) piv = c;
        for (int c = 0; c < remaining; ++c) {
            if (c == piv || V(x, piv) == 0.0) continue;
            double f = V(x, c) / V(x, piv);
            for (int i = 0; i < n_; ++i) V(i, c) -= f * V(i, piv);
        }
        // drop pivot column
        for (int c = piv; c + 1 < remaining; ++c)
            for (int i = 0; i < n_; ++i) V(i, c) = V(i, c + 1);
        // modified Gram-Schmidt on the remaining-1 columns
        for (int c = 0; c + 1 < remaining; ++c) {
            for (int b = 0; b < c; ++b) {
                double dot = 0.0;
                for (int i = 0; i < n_; ++i) dot += V(i, b) * V(i, c);
                for (int i = 0; i < n_; ++i) V(i, c) -= dot * V(i, b);
            }
            double nrm = 0.0;
            for (int i = 0; i < n_; ++i) nrm += V(i, c) * V(i, c);
            nrm = std::sqrt(nrm);
            if (nrm < 1e-12) throw std::runtime_error("sample_dpp: degenerate projection step");
            for (int i = 0; i < n_; ++i) V(i, c) /= nrm;
        }
    }
    std::sort(out.sites.begin(), out.sites.end());
    return out;
}

PointConfiguration sample_dpp(const kernels::KernelMatrix& K, rng::Stream& stream) {
    Sampler s(K);
    return s.sample(stream);
}

CorrelationEstimate empirical_correlation(const std::vector<PointConfiguration>& samples,
                                          const std::vector<int>& points) {
    for (size_t i = 1; i < points.size(); ++i)
        if (points[i] == points[i - 1]) throw std::invalid_argument("empirical_correlation: points must be distinct");
    long hits = 0;
    for (const auto& s : samples) {
        bool all = true;
        for (int p : points)
            if (!s.contains(p)) {
                all = false;
                break;
            }
        hits += all;
    }
    const double n = static_cast<double>(samples.size());
    double p = hits / n;
    return {p, std::sqrt(std::max(p * (1.0 - p), 1e-12) / n), static_cast<long>(samples.size())};
}

double config_probability(const kernels::KernelMatrix& K, const PointConfiguration& config) {
    // rank check
    linalg::EigenSym es = linalg::eigen_sym(K.dense());
    int rank = 0;
    for (double l : es.values) {
        if (l > 0.5) {
            ++rank;
            if (l > 1.0 + 1e-6) throw std::invalid_argument("config_probability: kernel is not a projection");
        } else if (l > 1e-6 && l < 1.0 - 1e-6) {
            throw std::invalid_argument("config_probability: kernel is not a projection");
        }
    }
    if (rank != static_cast<int>(config.sites.size()))
        throw std::invalid_argument("config_probability: configuration size must equal kernel rank");
    const int k = rank;
    if (k == 0) return 1.0;
    linalg::Matrix A(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) A(i, j) = K.at(config.sites[i], config.sites[j]);
    return linalg::det_lu(A);
}

} // namespace dpplab::dpp
