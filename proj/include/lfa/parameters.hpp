#pragma once

#include <complex>
#include <string>
#include <vector>

#include "lfa/masks.hpp"

namespace lfa {

/// Parameters (a, b_1..b_m, c_1..c_m) of the hypergeometric system.
/// b and c must have equal length m with 1 <= m <= kMaxVariables.
struct ParameterSet {
    cplx a;
    std::vector<cplx> b;
    std::vector<cplx> c;

    int m() const { return static_cast<int>(b.size()); }
    void validate() const;  // throws dimension_error on bad shape

    friend bool operator==(const ParameterSet&, const ParameterSet&) = default;
};

/// beta_{s,i} for s in {0,1} and 0-based coordinate i:
/// beta_{0,i} = b_i and beta_{1,i} = c_i - 1 - b_i.
cplx beta(const ParameterSet& p, int s, int i);

/// gamma_v = a - sum_{i: v_i=1} c_i + |v|.  gamma of the zero mask is a.
cplx gamma_v(const ParameterSet& p, const Mask& v);

/// sum_i beta_{v_i, i}
cplx sigma_beta(const ParameterSet& p, const Mask& v);

/// prod_i beta_{v_i, i}
cplx pi_beta(const ParameterSet& p, const Mask& v);

/// Distance from z to the integer lattice of the real axis.
double integer_distance(cplx z);

struct GenericityIssue {
    std::string quantity;  // e.g. "beta[1,2]" or "gamma[(1,1)]"
    cplx value;
    double distance;
};

/// Non-resonance report: lists every beta_{0,i}, beta_{1,i} and gamma_v whose
/// distance to the nearest integer is <= eps.  Empty means generic.
struct GenericityReport {
    double eps = 0;
    std::vector<GenericityIssue> issues;
    bool generic() const { return issues.empty(); }
};

GenericityReport genericity_check(const ParameterSet& p, double eps = 1e-8);

}  // namespace lfa
