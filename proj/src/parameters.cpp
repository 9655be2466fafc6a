#include "lfa/parameters.hpp"

#include <cmath>

#include "lfa/errors.hpp"

namespace lfa {

void ParameterSet::validate() const {
    if (b.size() != c.size())
        throw dimension_error("parameter vectors b and c have different lengths");
    if (b.empty() || b.size() > static_cast<std::size_t>(kMaxVariables))
        throw dimension_error("parameter length m outside [1, " +
                              std::to_string(kMaxVariables) + "]");
}

cplx beta(const ParameterSet& p, int s, int i) {
    if (i < 0 || i >= p.m()) throw dimension_error("beta coordinate out of range");
    if (s != 0 && s != 1) throw dimension_error("beta selector must be 0 or 1");
    return s == 0 ? p.b[i] : p.c[i] - 1.0 - p.b[i];
}

cplx gamma_v(const ParameterSet& p, const Mask& v) {
    if (v.m() != p.m()) throw dimension_error("mask and parameters disagree on m");
    cplx g = p.a;
    for (int i = 0; i < p.m(); ++i)
        if (v.bit(i)) g += 1.0 - p.c[i];
    return g;
}

cplx sigma_beta(const ParameterSet& p, const Mask& v) {
    if (v.m() != p.m()) throw dimension_error("mask and parameters disagree on m");
    cplx s(0.0);
    for (int i = 0; i < p.m(); ++i) s += beta(p, v.bit(i) ? 1 : 0, i);
    return s;
}

cplx pi_beta(const ParameterSet& p, const Mask& v) {
    if (v.m() != p.m()) throw dimension_error("mask and parameters disagree on m");
    cplx prod(1.0);
    for (int i = 0; i < p.m(); ++i) prod *= beta(p, v.bit(i) ? 1 : 0, i);
    return prod;
}

double integer_distance(cplx z) {
    return std::abs(z - cplx(std::round(z.real()), 0.0));
}

GenericityReport genericity_check(const ParameterSet& p, double eps) {
    p.validate();
    GenericityReport report;
    report.eps = eps;
    auto flag = [&](const std::string& name, cplx value) {
        const double d = integer_distance(value);
        if (d <= eps) report.issues.push_back({name, value, d});
    };
    for (int i = 0; i < p.m(); ++i) {
        flag("beta[0," + std::to_string(i + 1) + "]", beta(p, 0, i));
        flag("beta[1," + std::to_string(i + 1) + "]", beta(p, 1, i));
    }
    for (const Mask& v : enumerate_masks(p.m()))
        flag("gamma[" + v.str() + "]", gamma_v(p, v));
    return report;
}

}  // namespace lfa
