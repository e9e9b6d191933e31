#include "dpplab/schur.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace dpplab::schur {

int Partition::size() const {
    int s = 0;
    for (int p : parts) s += p;
    return s;
}

void Partition::validate() const {
    for (size_t i = 0; i < parts.size(); ++i) {
        if (parts[i] <= 0) throw std::invalid_argument("Partition: parts must be positive");
        if (i > 0 && parts[i] > parts[i - 1])
            throw std::invalid_argument("Partition: parts must be weakly decreasing");
    }
}

Partition conjugate(const Partition& lam) {
    Partition out;
    if (lam.parts.empty()) return out;
    for (int col = 1; col <= lam.parts[0]; ++col) {
        int cnt = 0;
        for (int p : lam.parts) cnt += (p >= col);
        out.parts.push_back(cnt);
    }
    return out;
}

std::vector<Partition> partitions_in_box(int rows, int cols) {
    // weakly decreasing part lists bounded by cols, at most rows parts; each
    // partition is visited once along its unique prefix path
    std::vector<Partition> out;
    std::vector<int> stack;
    std::function<void(int, int)> rec = [&](int remaining_rows, int max_part) {
        out.push_back(Partition{stack});
        if (remaining_rows == 0) return;
        for (int p = std::min(max_part, cols); p >= 1; --p) {
            stack.push_back(p);
            rec(remaining_rows - 1, p);
            stack.pop_back();
        }
    };
    rec(rows, cols);
    return out;
}

double principal_specialization(const Partition& lam, int a, double x) {
    lam.validate();
    if (!(x > 0)) throw std::invalid_argument("principal_specialization: x > 0 required");
    if (lam.length() > a) return 0.0;
    // log-space product over 1 <= i < j <= a of (l_i - i - l_j + j)/(j - i)
    double lg = lam.size() * std::log(x);
    for (int i = 1; i <= a; ++i) {
        for (int j = i + 1; j <= a; ++j) {
            double num = lam.part(i - 1) - i - lam.part(j - 1) + j;
            lg += std::log(num) - std::log(double(j - i));
        }
    }
    return std::exp(lg);
}

double schur_measure_weight(const Partition& lam, int a, double x, int b, double y, bool primed) {
    if (a < 1 || b < 1) throw std::invalid_argument("schur_measure_weight: a,b >= 1 required");
    if (!primed && !(x * y < 1.0))
        throw std::invalid_argument("schur_measure_weight: xy < 1 required for the unprimed measure");
    const double sx = principal_specialization(lam, a, x);
    const double sy = primed ? principal_specialization(conjugate(lam), b, y)
                             : principal_specialization(lam, b, y);
    if (sx == 0.0 || sy == 0.0) return 0.0;
    // normalization: Pi = (1-xy)^{-ab} or (1+xy)^{ab}
    const double logz = primed ? (double(a) * b) * std::log1p(x * y)
                               : -(double(a) * b) * std::log1p(-x * y);
    return sx * sy * std::exp(-logz);
}

dpp::PointConfiguration pushforward_config(const Partition& lam, int a, int b, bool primed) {
    lam.validate();
    const int n = primed ? a : std::min(a, b);
    if (lam.length() > n)
        throw std::invalid_argument("pushforward_config: partition longer than the point count");
    const int base = primed ? a : std::min(a, b);
    dpp::PointConfiguration out;
    for (int i = 1; i <= n; ++i) out.sites.push_back(base + lam.part(i - 1) - i);
    std::sort(out.sites.begin(), out.sites.end());
    return out;
}

} // namespace dpplab::schur
