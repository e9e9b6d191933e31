#include "dpplab/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "dpplab/errors.hpp"

namespace dpplab::quadrature {

static GaussLegendre compute_gl(int n) {
    GaussLegendre gl;
    gl.nodes.resize(n);
    gl.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            double dx = p0 / pp;
            x -= dx;
            if (std::fabs(dx) < 1e-15) break;
        }
        gl.nodes[i] = -x;
        gl.nodes[n - 1 - i] = x;
        gl.weights[i] = gl.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * pp * pp);
    }
    return gl;
}

const GaussLegendre& gauss_legendre(int order) {
    static std::map<int, GaussLegendre> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, compute_gl(order)).first;
    return it->second;
}

void panel_nodes(double lo, double hi, int panels, int order,
                 const std::function<void(double, double)>& f) {
    const GaussLegendre& gl = gauss_legendre(order);
    const double h = (hi - lo) / panels;
    for (int p = 0; p < panels; ++p) {
        double mid = lo + (p + 0.5) * h, half = 0.5 * h;
        for (int i = 0; i < order; ++i) f(mid + half * gl.nodes[i], half * gl.weights[i]);
    }
}

double integrate_adaptive(const std::function<double(double)>& f, double lo, double hi,
                          double tol, int initial_panels, int order, int max_doublings) {
    if (hi <= lo) return 0.0;
    int panels = initial_panels;
    double prev = 0.0;
    bool have_prev = false;
    for (int round = 0; round <= max_doublings; ++round) {
        double sum = 0.0;
        panel_nodes(lo, hi, panels, order, [&](double t, double w) { sum += w * f(t); });
        if (have_prev && std::fabs(sum - prev) <= tol) return sum;
        prev = sum;
        have_prev = true;
        panels *= 2;
    }
    throw accuracy_error("integrate_adaptive: panel refinement stalled");
}

} // namespace dpplab::quadrature
