#pragma once

#include <vector>

#include "dpplab/dpp.hpp"

namespace dpplab::schur {

// Weakly decreasing list of positive parts.
struct Partition {
    std::vector<int> parts;
    int length() const { return static_cast<int>(parts.size()); }
    int size() const; // |lambda|
    int part(int i) const { return i < length() ? parts[i] : 0; } // 0-based
    void validate() const;
};

Partition conjugate(const Partition& lam);

// All partitions with at most `rows` rows and parts <= `cols`.
std::vector<Partition> partitions_in_box(int rows, int cols);

// s_lambda(x,...,x) (a variables) via the principal-specialization product;
// returns 0 when the partition has more than `a` rows.
double principal_specialization(const Partition& lam, int a, double x);

// Schur measure weight of lambda under SM(x^a; y^b) (primed=false) or
// SM'(x^a; y^b) (primed=true).
double schur_measure_weight(const Partition& lam, int a, double x, int b, double y, bool primed);

// lambda -> {min(a,b) + lambda_i - i} (unprimed) or {a + lambda_i - i}
// (primed), 1-based i, as a sorted configuration.
dpp::PointConfiguration pushforward_config(const Partition& lam, int a, int b, bool primed);

} // namespace dpplab::schur
