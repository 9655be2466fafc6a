#include "lfa/intersection.hpp"

#include <bit>

#include "lfa/connection.hpp"
#include "lfa/errors.hpp"

namespace lfa {

std::vector<cplx> a_lattice(const ParameterSet& p) {
    p.validate();
    const int m = p.m();
    const std::uint32_t full = (1u << m) - 1;
    std::vector<cplx> A(full + 1, cplx(0.0));
    A[0] = cplx(1.0);
    for (std::uint32_t s = 1; s <= full; ++s) {
        const Mask ms(m, s);
        const cplx g = gamma_v(p, ms);
        if (g == cplx(0.0))
            throw singular_parameter_error("gamma vanishes at " + ms.str() +
                                           "; chain coefficient undefined");
        cplx acc(0.0);
        for (std::uint32_t rest = s; rest;) {
            const std::uint32_t low = rest & (~rest + 1u);
            acc += A[s ^ low];
            rest ^= low;
        }
        A[s] = acc / g;
    }
    return A;
}

namespace {

void require_compatible(const Mask& v, const Mask& vp, const ParameterSet& p) {
    if (v.m() != vp.m() || v.m() != p.m())
        throw dimension_error("masks and parameters disagree on m");
}

// Reciprocals 1/beta_{s,i}, throwing when a beta vanishes.
std::vector<std::array<cplx, 2>> beta_reciprocals(const ParameterSet& p) {
    std::vector<std::array<cplx, 2>> inv(p.m());
    for (int i = 0; i < p.m(); ++i)
        for (int s = 0; s < 2; ++s) {
            const cplx bsi = beta(p, s, i);
            if (bsi == cplx(0.0))
                throw singular_parameter_error("beta[" + std::to_string(s) + "," +
                                               std::to_string(i + 1) + "] vanishes");
            inv[i][s] = cplx(1.0) / bsi;
        }
    return inv;
}

cplx phi_phi_entry(const Mask& v, const Mask& vp, const ParameterSet& p,
                   const std::vector<cplx>& A,
                   const std::vector<std::array<cplx, 2>>& binv) {
    const int m = p.m();
    const std::uint32_t full = (1u << m) - 1;
    const std::uint32_t diff = v.bits() ^ vp.bits();
    // Kronecker deltas kill every w that misses a coordinate where v and v'
    // differ, so only supersets of the difference survive.
    const std::uint32_t free_bits = full & ~diff;
    cplx total(0.0);
    for (std::uint32_t u = free_bits;; u = (u - 1) & free_bits) {
        const std::uint32_t w = diff | u;
        cplx term = A[w];
        for (std::uint32_t z = full & ~w; z;) {
            const std::uint32_t low = z & (~z + 1u);
            const int i = std::countr_zero(low);
            term *= binv[i][v.bit(i) ? 1 : 0];
            z ^= low;
        }
        total += term;
        if (u == 0) break;
    }
    return total;
}

}  // namespace

cplx phi_phi(const Mask& v, const Mask& vp, const ParameterSet& p) {
    require_compatible(v, vp, p);
    return phi_phi_entry(v, vp, p, a_lattice(p), beta_reciprocals(p));
}

cplx phi_psi(const Mask& v, const Mask& vp, const ParameterSet& p) {
    require_compatible(v, vp, p);
    if (v.bits() != vp.bits()) return cplx(0.0);
    const cplx pb = pi_beta(p, v);
    if (pb == cplx(0.0)) throw singular_parameter_error("pi_beta vanishes at " + v.str());
    return cplx(1.0) / pb;
}

cplx psi_psi(const Mask& v, const Mask& vp, const ParameterSet& p) {
    require_compatible(v, vp, p);
    if (p.a == cplx(0.0)) throw singular_parameter_error("parameter a vanishes");
    const int differ = std::popcount(v.bits() ^ vp.bits());
    if (differ == 0) {
        const cplx pb = pi_beta(p, v);
        if (pb == cplx(0.0)) throw singular_parameter_error("pi_beta vanishes at " + v.str());
        return (p.a - sigma_beta(p, v)) / (p.a * pb);
    }
    if (differ == 1) {
        cplx prod(1.0);
        for (int i = 0; i < p.m(); ++i)
            if (v.bit(i) == vp.bit(i)) prod *= beta(p, v.bit(i) ? 1 : 0, i);
        if (prod == cplx(0.0)) throw singular_parameter_error("beta product vanishes");
        return cplx(-1.0) / (p.a * prod);
    }
    return cplx(0.0);
}

IntersectionData build_intersection(const ParameterSet& p) {
    p.validate();
    IntersectionData data;
    data.basis = make_basis(p.m());
    const int n = data.basis.dim();
    const auto A = a_lattice(p);
    const auto binv = beta_reciprocals(p);
    data.C.resize(n, n);
    data.phiPsi.resize(n, n);
    data.psiPsi.resize(n, n);
    for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) {
            const Mask &v = data.basis.at(r), &w = data.basis.at(s);
            data.C(r, s) = phi_phi_entry(v, w, p, A, binv);
            data.phiPsi(r, s) = phi_psi(v, w, p);
            data.psiPsi(r, s) = psi_psi(v, w, p);
        }
    return data;
}

namespace {
cplx int_pow(cplx base, std::uint64_t e) {
    cplx out(1.0);
    while (e) {
        if (e & 1) out *= base;
        base *= base;
        e >>= 1;
    }
    return out;
}
}  // namespace

cplx det_c_closed(const ParameterSet& p) {
    p.validate();
    const int m = p.m();
    cplx denom(1.0);
    for (const Mask& w : enumerate_masks(m)) {
        const cplx g = gamma_v(p, w);
        if (g == cplx(0.0))
            throw singular_parameter_error("gamma vanishes at " + w.str());
        denom *= g;
    }
    const std::uint64_t half = std::uint64_t{1} << (m - 1);
    for (int i = 0; i < m; ++i) {
        const cplx prod = beta(p, 0, i) * beta(p, 1, i);
        if (prod == cplx(0.0))
            throw singular_parameter_error("beta product vanishes at coordinate " +
                                           std::to_string(i + 1));
        denom *= int_pow(prod, half);
    }
    return int_pow(p.a, std::uint64_t{1} << m) / denom;
}

cplx det_phi_psi_closed(const ParameterSet& p) {
    p.validate();
    const int m = p.m();
    const std::uint64_t half = std::uint64_t{1} << (m - 1);
    cplx denom(1.0);
    for (int i = 0; i < m; ++i) denom *= int_pow(beta(p, 0, i) * beta(p, 1, i), half);
    if (denom == cplx(0.0)) throw singular_parameter_error("beta product vanishes");
    return cplx(1.0) / denom;
}

cplx det_psi_psi_closed(const ParameterSet& p) {
    p.validate();
    cplx num(1.0);
    for (const Mask& w : enumerate_masks(p.m())) num *= gamma_v(p, w);
    return num * det_phi_psi_closed(p) / int_pow(p.a, std::uint64_t{1} << p.m());
}

IntersectionIdentityReport verify_intersection_identities(const ParameterSet& p) {
    const IntersectionData data = build_intersection(p);
    const Eigen::MatrixXcd F = f_matrix(p, data.basis);

    IntersectionIdentityReport rep;
    const Eigen::MatrixXcd cf = data.C * F.transpose();
    rep.cf_deviation = (cf - data.phiPsi).cwiseAbs().maxCoeff();
    rep.cf_scale = std::max({1.0, cf.cwiseAbs().maxCoeff(), data.phiPsi.cwiseAbs().maxCoeff()});
    const Eigen::MatrixXcd fcf = F * cf;
    rep.fcf_deviation = (fcf - data.psiPsi).cwiseAbs().maxCoeff();
    rep.fcf_scale =
        std::max({1.0, fcf.cwiseAbs().maxCoeff(), data.psiPsi.cwiseAbs().maxCoeff()});

    const auto rel = [](cplx got, cplx want) { return std::abs(got - want) / std::abs(want); };
    rep.det_c_rel = rel(data.C.partialPivLu().determinant(), det_c_closed(p));
    rep.det_phi_psi_rel = rel(data.phiPsi.partialPivLu().determinant(), det_phi_psi_closed(p));
    rep.det_psi_psi_rel = rel(data.psiPsi.partialPivLu().determinant(), det_psi_psi_closed(p));
    return rep;
}

}  // namespace lfa
