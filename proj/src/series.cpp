#include "lfa/series.hpp"

#include <cmath>

#include "lfa/errors.hpp"

namespace lfa {

cplx pochhammer(cplx z, int n) {
    if (n < 0) throw dimension_error("pochhammer needs a nonnegative length");
    cplx out(1.0);
    for (int k = 0; k < n; ++k) out *= z + double(k);
    return out;
}

namespace {

void check_point(const ParameterSet& p, const Eigen::VectorXcd& x) {
    p.validate();
    if (x.size() != p.m()) throw dimension_error("point dimension does not match parameters");
    double radius = 0;
    for (int i = 0; i < x.size(); ++i) radius += std::abs(x(i));
    if (!(radius < 1.0))
        throw series_domain_error(
            "sum of |x_i| is " + std::to_string(radius) +
            "; the series converges only for sum |x_i| < 1 (continue along a path instead)");
}

}  // namespace

SeriesValue fa_derivative(const ParameterSet& p, const Eigen::VectorXcd& x,
                          const std::vector<int>& orders, const SeriesOptions& opts) {
    check_point(p, x);
    const int m = p.m();
    if (static_cast<int>(orders.size()) != m)
        throw dimension_error("derivative orders must list every coordinate");
    for (int d : orders)
        if (d < 0) throw dimension_error("derivative order must be nonnegative");
    const int N = opts.max_total_degree;
    if (N < 0) throw dimension_error("truncation degree must be nonnegative");

    std::vector<double> shell(N + 1, 0.0);
    cplx total(0.0);
    // Depth-first over multi-indices n with |n| <= N.  `term` carries the full
    // summand for the prefix placed so far: each unit increment of the total
    // multiplies one factor (a + s), so (a, |n|) assembles across coordinates,
    // and coordinate i with derivative order d contributes
    // (b_i,n_i)/((c_i,n_i)) * x_i^{n_i-d} * n_i!/(n_i-d)! with n_i >= d.
    auto walk = [&](auto&& self, int i, int s, cplx term) -> void {
        if (i == m) {
            total += term;
            shell[s] += std::abs(term);
            return;
        }
        const int d = orders[i];
        if (s + d > N) return;
        cplx t = term;
        for (int u = 0; u < d; ++u) t *= p.a + double(s + u);
        t *= pochhammer(p.b[i], d) / pochhammer(p.c[i], d);
        int si = s + d;
        for (int ni = d;; ++ni) {
            self(self, i + 1, si, t);
            if (si >= N || t == cplx(0.0)) break;
            t *= (p.a + double(si)) * (p.b[i] + double(ni)) /
                 ((p.c[i] + double(ni)) * double(ni + 1 - d)) * x(i);
            ++si;
        }
    };
    walk(walk, 0, 0, cplx(1.0));
    return {total, shell[N], N};
}

SeriesValue fa_truncated(const ParameterSet& p, const Eigen::VectorXcd& x,
                         const SeriesOptions& opts) {
    return fa_derivative(p, x, std::vector<int>(p.m(), 0), opts);
}

SeriesValue fa_partial_truncated(const ParameterSet& p, const Eigen::VectorXcd& x,
                                 const std::vector<int>& index_set,
                                 const SeriesOptions& opts) {
    p.validate();
    std::vector<int> orders(p.m(), 0);
    for (int i : index_set) {
        if (i < 0 || i >= p.m()) throw dimension_error("derivative index out of range");
        if (orders[i]) throw dimension_error("derivative index repeated in index set");
        orders[i] = 1;
    }
    return fa_derivative(p, x, orders, opts);
}

SolutionVector solution_vector(const ParameterSet& p, const Eigen::VectorXcd& x,
                               const SeriesOptions& opts) {
    check_point(p, x);
    const MaskBasis basis = make_basis(p.m());
    SolutionVector out;
    out.values.resize(basis.dim());
    out.degree = opts.max_total_degree;
    for (const Mask& v : basis.order) {
        std::vector<int> orders(p.m(), 0);
        cplx prefactor(1.0);
        for (int i = 0; i < p.m(); ++i)
            if (v.bit(i)) {
                orders[i] = 1;
                prefactor *= x(i);
            }
        const SeriesValue val = fa_derivative(p, x, orders, opts);
        out.values(basis.pos(v)) = prefactor * val.value;
        out.tail = std::max(out.tail, val.tail);
    }
    return out;
}

Eigen::VectorXd pfaffian_residual_against(const ParameterSet& series_params,
                                          const ConnectionForm& conn, const GaugeData& g,
                                          const Eigen::VectorXcd& x,
                                          const SeriesOptions& opts) {
    const ParameterSet& p = series_params;
    check_point(p, x);
    if (conn.m() != p.m()) throw dimension_error("connection does not match parameters");
    const MaskBasis& basis = conn.basis;
    const SolutionVector F = solution_vector(p, x, opts);
    const auto omega = gauged_omega_at(conn, g, x);

    Eigen::VectorXd residual(p.m());
    for (int k = 0; k < p.m(); ++k) {
        // d/dx_k of component v: the prefactor prod_{i in v} x_i contributes a
        // product-rule term whenever v_k = 1.
        Eigen::VectorXcd deriv(basis.dim());
        for (const Mask& v : basis.order) {
            std::vector<int> orders(p.m(), 0);
            cplx prefactor(1.0);
            for (int i = 0; i < p.m(); ++i)
                if (v.bit(i)) {
                    orders[i] = 1;
                    if (i != k) prefactor *= x(i);
                }
            if (v.bit(k)) {
                const cplx lower = fa_derivative(p, x, orders, opts).value;
                orders[k] = 2;
                const cplx higher = fa_derivative(p, x, orders, opts).value;
                deriv(basis.pos(v)) = prefactor * (lower + x(k) * higher);
            } else {
                orders[k] = 1;
                deriv(basis.pos(v)) = prefactor * fa_derivative(p, x, orders, opts).value;
            }
        }
        const double scale = deriv.norm();
        if (scale == 0.0) throw series_domain_error("derivative vector vanished; residual undefined");
        residual(k) = (deriv - omega[k] * F.values).norm() / scale;
    }
    return residual;
}

Eigen::VectorXd pfaffian_residual(const ParameterSet& p, const Eigen::VectorXcd& x,
                                  const SeriesOptions& opts) {
    return pfaffian_residual_against(p, build_connection(p), build_gauge(p), x, opts);
}

}  // namespace lfa
