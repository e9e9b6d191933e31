#include "dpplab/ensemble.hpp"

#include <cmath>
#include <stdexcept>

namespace dpplab::kernels {

DiscreteEnsembleSpec DiscreteEnsembleSpec::dh(Sign s, double rho) {
    DiscreteEnsembleSpec e{Base::DH, s, rho};
    e.validate();
    return e;
}
DiscreteEnsembleSpec DiscreteEnsembleSpec::dl(Sign s, double rho, double beta) {
    DiscreteEnsembleSpec e{Base::DL, s, rho};
    e.beta = beta;
    e.validate();
    return e;
}
DiscreteEnsembleSpec DiscreteEnsembleSpec::dj(Sign s, double rho, double a, double b) {
    DiscreteEnsembleSpec e{Base::DJ, s, rho};
    e.a = a;
    e.b = b;
    e.validate();
    return e;
}

orthopoly::FamilySpec DiscreteEnsembleSpec::family() const {
    switch (base) {
        case Base::DH: return orthopoly::FamilySpec::hermite();
        case Base::DL: return orthopoly::FamilySpec::laguerre(beta);
        case Base::DJ: return orthopoly::FamilySpec::jacobi(a, b);
    }
    throw std::logic_error("unreachable");
}

double DiscreteEnsembleSpec::support_left() const {
    switch (base) {
        case Base::DH: return -std::numeric_limits<double>::infinity();
        case Base::DL: return 0.0;
        case Base::DJ: return -1.0;
    }
    throw std::logic_error("unreachable");
}

void DiscreteEnsembleSpec::validate() const {
    family(); // validates family parameters
    switch (base) {
        case Base::DH: break;
        case Base::DL:
            if (!(rho >= 0))
                throw std::invalid_argument("DL: rho must lie in [0,inf) (inside the weight support)");
            break;
        case Base::DJ:
            if (!(rho > -1 && rho < 1))
                throw std::invalid_argument("DJ: rho must lie strictly inside (-1,1)");
            break;
    }
}

std::string DiscreteEnsembleSpec::name() const {
    std::string s;
    switch (base) {
        case Base::DH: s = "DH"; break;
        case Base::DL: s = "DL"; break;
        case Base::DJ: s = "DJ"; break;
    }
    s += (sign == Sign::plus) ? "+" : "-";
    return s;
}

Base parse_base(const std::string& s) {
    if (s.rfind("DH", 0) == 0) return Base::DH;
    if (s.rfind("DL", 0) == 0) return Base::DL;
    if (s.rfind("DJ", 0) == 0) return Base::DJ;
    throw std::invalid_argument("unknown ensemble '" + s + "' (expected DH/DL/DJ with +/-)");
}

} // namespace dpplab::kernels
