#pragma once

#include <functional>
#include <span>
#include <vector>

namespace dpplab::quadrature {

// Gauss-Legendre nodes/weights on (-1,1), computed once per order by Newton
// iteration on the Legendre recurrence.
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
};
const GaussLegendre& gauss_legendre(int order);

// Panelized sampling of [lo,hi]: `panels` equal subintervals, `order` GL
// points each.  Calls f(t, w) for every node.
void panel_nodes(double lo, double hi, int panels, int order,
                 const std::function<void(double, double)>& f);

// Adaptive composite GL of a scalar function: panel count doubles until two
// consecutive refinements agree within tol (absolute); throws accuracy_error
// when refinement stalls.
double integrate_adaptive(const std::function<double(double)>& f, double lo, double hi,
                          double tol, int initial_panels = 8, int order = 24,
                          int max_doublings = 9);

} // namespace dpplab::quadrature
