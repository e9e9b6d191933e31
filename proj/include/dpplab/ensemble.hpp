#pragma once

#include <string>

#include "dpplab/orthopoly.hpp"

namespace dpplab::kernels {

enum class Base { DH, DL, DJ };
enum class Sign { plus, minus };

// One of the discrete Hermite / Laguerre / Jacobi ensembles: a sign (which
// half line of the weight support) and the cut point rho.
struct DiscreteEnsembleSpec {
    Base base = Base::DH;
    Sign sign = Sign::plus;
    double rho = 0.0;
    double beta = 1.0; // DL
    double a = 0.0, b = 0.0; // DJ

    static DiscreteEnsembleSpec dh(Sign s, double rho);
    static DiscreteEnsembleSpec dl(Sign s, double rho, double beta);
    static DiscreteEnsembleSpec dj(Sign s, double rho, double a, double b);

    orthopoly::FamilySpec family() const;
    // left end of the weight support (-inf coded by the Hermite tail cut)
    double support_left() const;
    void validate() const;
    std::string name() const;
};

// parse "DH+", "DL-", "DJ+" ... used by the CLI
Base parse_base(const std::string& s);

} // namespace dpplab::kernels
