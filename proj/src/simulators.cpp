#include "dpplab/simulators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dpplab/errors.hpp"

namespace dpplab::simulators {

namespace {

// set of enabled moves with O(1) insert/remove/uniform-pick
class MoveSet {
public:
    explicit MoveSet(int n) : pos_(n, -1) {}
    void insert(int site) {
        if (pos_[site] >= 0) return;
        pos_[site] = static_cast<int>(items_.size());
        items_.push_back(site);
    }
    void erase(int site) {
        int p = pos_[site];
        if (p < 0) return;
        int last = items_.back();
        items_[p] = last;
        pos_[last] = p;
        items_.pop_back();
        pos_[site] = -1;
    }
    bool contains(int site) const { return pos_[site] >= 0; }
    int size() const { return static_cast<int>(items_.size()); }
    int pick(rng::Stream& s) const { return items_[s.below(items_.size())]; }

private:
    std::vector<int> pos_;
    std::vector<int> items_;
};

} // namespace

HeightSample asep_simulate(double q, double t, const std::vector<int>& queries,
                           rng::Stream& stream) {
    if (!(q >= 0 && q < 1)) throw std::invalid_argument("asep_simulate: q must lie in [0,1)");
    if (!(t >= 0)) throw std::invalid_argument("asep_simulate: t must be >= 0");
    int qmax = 0;
    for (int x : queries) qmax = std::max(qmax, std::abs(x));
    const int L = static_cast<int>(std::ceil(2.0 * t + qmax + 8.0 * std::sqrt(t + 1.0) + 20.0));
    const int R = L;
    const int n = L + R + 1; // site x <-> index x + L
    std::vector<uint8_t> occ(n, 0);
    for (int i = 0; i < L; ++i) occ[i] = 1; // sites < 0
    MoveSet right(n), left(n);
    for (int i = 0; i + 1 < n; ++i)
        if (occ[i] && !occ[i + 1]) right.insert(i);
    for (int i = 1; i < n; ++i)
        if (occ[i] && !occ[i - 1]) left.insert(i);

    auto refresh = [&](int i) {
        if (i < 0 || i >= n) return;
        if (i + 1 < n && occ[i] && !occ[i + 1]) right.insert(i);
        else right.erase(i);
        if (i - 1 >= 0 && occ[i] && !occ[i - 1]) left.insert(i);
        else left.erase(i);
    };

    double now = 0.0;
    for (;;) {
        const double lam = right.size() + q * left.size();
        if (lam <= 0.0) break;
        now += stream.exponential(lam);
        if (now > t) break;
        int from, to;
        if (stream.uniform() * lam < right.size()) {
            from = right.pick(stream);
            to = from + 1;
        } else {
            from = left.pick(stream);
            to = from - 1;
        }
        occ[from] = 0;
        occ[to] = 1;
        if (to <= 4 || to >= n - 5)
            throw window_overflow_error("asep_simulate: particle reached the window edge");
        for (int i = std::min(from, to) - 1; i <= std::max(from, to) + 1; ++i) refresh(i);
    }

    // h(x) = number of particles at sites >= x
    std::vector<long> suffix(n + 1, 0);
    for (int i = n - 1; i >= 0; --i) suffix[i] = suffix[i + 1] + occ[i];
    HeightSample out;
    out.heights.reserve(queries.size());
    for (int x : queries) {
        int idx = x + L;
        if (idx < 0) idx = 0;
        if (idx > n) idx = n;
        out.heights.push_back(suffix[idx]);
    }
    return out;
}

// --- six-vertex -------------------------------------------------------------

double SixVertexParams::s() const {
    return mode == SixVertexMode::six_vertex ? 1.0 / std::sqrt(q) : -std::sqrt(q);
}

double SixVertexParams::transition(int i1, int j1, int i2, int j2) const {
    if (i1 + j1 != i2 + j2) return 0.0;
    const double sv = s();
    const double su = sv * u;
    const double qi = std::pow(q, i1);
    if (j1 == 0 && j2 == 0 && i2 == i1) return (1.0 - qi * su) / (1.0 - su);
    if (j1 == 0 && j2 == 1 && i2 == i1 - 1) return (qi - 1.0) * su / (1.0 - su);
    if (j1 == 1 && j2 == 1 && i2 == i1) return (sv * sv * qi - su) / (1.0 - su);
    if (j1 == 1 && j2 == 0 && i2 == i1 + 1) return (1.0 - sv * sv * qi) / (1.0 - su);
    return 0.0;
}

void SixVertexParams::validate() const {
    if (!(q > 0 && q < 1)) throw std::invalid_argument("six-vertex: q must lie in (0,1)");
    if (!(u > 0)) throw std::invalid_argument("six-vertex: u must be positive");
    // all reachable weights must be probabilities; check a generous range of
    // vertical multiplicities plus the i -> infinity limit
    const int imax = (mode == SixVertexMode::six_vertex) ? 1 : 64;
    auto check = [&](int i1, int j1, int i2, int j2) {
        double w = transition(i1, j1, i2, j2);
        if (w < -1e-14 || w > 1.0 + 1e-14) {
            throw std::invalid_argument(
                "six-vertex: weight of (" + std::to_string(i1) + "," + std::to_string(j1) +
                ")->(" + std::to_string(i2) + "," + std::to_string(j2) + ") = " +
                std::to_string(w) + " lies outside [0,1]");
        }
    };
    for (int i1 = 0; i1 <= imax; ++i1) {
        check(i1, 0, i1, 0);
        if (i1 > 0) check(i1, 0, i1 - 1, 1);
        check(i1, 1, i1, 1);
        if (mode != SixVertexMode::six_vertex || i1 == 0) check(i1, 1, i1 + 1, 0);
    }
}

HeightSample six_vertex_sample(const SixVertexParams& params,
                               const std::vector<std::pair<int, int>>& queries,
                               rng::Stream& stream) {
    params.validate();
    int maxM = 1, maxN = 1;
    for (auto [m, nn] : queries) {
        if (m < 1 || nn < 1) throw std::invalid_argument("six_vertex_sample: queries need M,N >= 1");
        maxM = std::max(maxM, m);
        maxN = std::max(maxN, nn);
    }
    // columns 1..maxM-1 influence the queried heights; paths flow up-right
    const int C = maxM - 1;
    std::vector<int> up(C + 2, 0);    // up[x]: vertical output of vertex (x, y(x)) on the last processed diagonal
    std::vector<int> rightv(C + 2, 0); // rightv[x]: horizontal output of (x, y)
    std::vector<long> crossed(queries.size(), 0); // paths exiting the rectangle top left of M
    const double sv = params.s();
    const double su = sv * params.u;

    // process diagonals d = x + y from 2 to C + maxN
    for (int d = 2; d <= C + maxN; ++d) {
        // sweep x descending so rightv[x-1] still holds the previous
        // diagonal's output when vertex (x, y) consumes it
        int xhi = std::min(C, d - 1);
        int xlo = std::max(1, d - maxN);
        for (int x = xhi; x >= xlo; --x) {
            const int y = d - x;
            const int i1 = up[x];
            const int j1 = (x == 1) ? 1 : rightv[x - 1];
            int i2, j2;
            const double qi = std::pow(params.q, i1);
            if (j1 == 0) {
                if (i1 == 0) {
                    i2 = 0;
                    j2 = 0;
                } else {
                    double keep = (1.0 - qi * su) / (1.0 - su);
                    if (stream.uniform() < keep) {
                        i2 = i1;
                        j2 = 0;
                    } else {
                        i2 = i1 - 1;
                        j2 = 1;
                    }
                }
            } else {
                double stay = (sv * sv * qi - su) / (1.0 - su);
                if (stream.uniform() < stay) {
                    i2 = i1;
                    j2 = 1;
                } else {
                    i2 = i1 + 1;
                    j2 = 0;
                }
            }
            up[x] = i2;
            rightv[x] = j2;
            for (size_t k = 0; k < queries.size(); ++k)
                if (y == queries[k].second && x < queries[k].first) crossed[k] += i2;
        }
    }
    HeightSample out;
    out.heights.reserve(queries.size());
    for (size_t k = 0; k < queries.size(); ++k)
        out.heights.push_back(queries[k].second - crossed[k]);
    return out;
}

} // namespace dpplab::simulators
