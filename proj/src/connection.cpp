#include "lfa/connection.hpp"

#include <bit>
#include <cmath>
#include <limits>

#include "lfa/errors.hpp"

namespace lfa {

Eigen::RowVectorXcd f_vector(const Mask& v, const ParameterSet& p, const MaskBasis& basis) {
    if (v.m() != p.m() || basis.m != p.m())
        throw dimension_error("mask, parameters and basis disagree on m");
    if (p.a == cplx(0.0)) throw singular_parameter_error("parameter a vanishes");
    Eigen::RowVectorXcd f = Eigen::RowVectorXcd::Zero(basis.dim());
    f(basis.pos(v)) = (p.a - sigma_beta(p, v)) / p.a;
    for (int j = 0; j < p.m(); ++j)
        f(basis.pos(v.flipped(j))) = -beta(p, v.bit(j) ? 0 : 1, j) / p.a;
    return f;
}

Eigen::MatrixXcd f_matrix(const ParameterSet& p, const MaskBasis& basis) {
    Eigen::MatrixXcd F(basis.dim(), basis.dim());
    for (int r = 0; r < basis.dim(); ++r) F.row(r) = f_vector(basis.at(r), p, basis);
    return F;
}

Eigen::MatrixXcd residue_zero(int k, const ParameterSet& p, const IntersectionData& data) {
    if (k < 0 || k >= p.m()) throw dimension_error("coordinate out of range");
    const MaskBasis& basis = data.basis;
    const int n = basis.dim();
    const cplx b1k = beta(p, 1, k);
    Eigen::MatrixXcd R = (cplx(1.0) - p.c[k]) * Eigen::MatrixXcd::Identity(n, n);
    for (const Mask& v : basis.order) {
        if (v.bit(k)) continue;
        const Mask sv = v.flipped(k);
        const Eigen::VectorXcd col =
            data.C * (f_vector(v, p, basis) - f_vector(sv, p, basis)).transpose();
        Eigen::RowVectorXcd row = Eigen::RowVectorXcd::Zero(n);
        row(basis.pos(v)) = cplx(1.0);
        row(basis.pos(sv)) = cplx(-1.0);
        R.noalias() += (b1k * pi_beta(p, v)) * (col * row);
    }
    return R;
}

Eigen::MatrixXcd residue_hyperplane(const Mask& v, const ParameterSet& p,
                                    const IntersectionData& data) {
    if (v.bits() == 0) throw dimension_error("hyperplane residue needs a nonzero mask");
    const Eigen::RowVectorXcd fv = f_vector(v, p, data.basis);
    const Eigen::VectorXcd col = (-p.a * pi_beta(p, v)) * (data.C * fv.transpose());
    return col * fv;
}

ConnectionForm build_connection(const ParameterSet& p) {
    p.validate();
    const IntersectionData data = build_intersection(p);
    ConnectionForm conn;
    conn.basis = data.basis;
    conn.R0.reserve(p.m());
    for (int k = 0; k < p.m(); ++k) conn.R0.push_back(residue_zero(k, p, data));
    const std::size_t count = std::size_t{1} << p.m();
    conn.RV.resize(count);
    conn.RVfac.resize(count);
    for (const Mask& v : conn.basis.order) {
        if (v.bits() == 0) continue;
        const Eigen::RowVectorXcd fv = f_vector(v, p, conn.basis);
        RankOneFactor fac;
        fac.row = fv;
        fac.col = (-p.a * pi_beta(p, v)) * (data.C * fv.transpose());
        conn.RV[v.bits()] = fac.col * fac.row;
        conn.RVfac[v.bits()] = std::move(fac);
    }
    return conn;
}

ConnectionForm residues_from_pde(const ParameterSet& p) {
    p.validate();
    if (p.a == cplx(0.0)) throw singular_parameter_error("parameter a vanishes");
    ConnectionForm conn;
    conn.basis = make_basis(p.m());
    const int n = conn.basis.dim();
    // dlog x_k part: row v couples v with flip_k(v) only.
    for (int k = 0; k < p.m(); ++k) {
        Eigen::MatrixXcd R = Eigen::MatrixXcd::Zero(n, n);
        for (const Mask& v : conn.basis.order) {
            const int r = conn.basis.pos(v);
            R(r, r) = -beta(p, v.bit(k) ? 1 : 0, k);
            R(r, conn.basis.pos(v.flipped(k))) = -beta(p, v.bit(k) ? 0 : 1, k);
        }
        conn.R0.push_back(std::move(R));
    }
    // dlog(1 - v.x) part: the derivative rule puts a multiple of the dual
    // vector into row v and nothing anywhere else.
    const std::size_t count = std::size_t{1} << p.m();
    conn.RV.resize(count);
    conn.RVfac.resize(count);
    for (const Mask& v : conn.basis.order) {
        if (v.bits() == 0) continue;
        RankOneFactor fac;
        fac.row = -p.a * f_vector(v, p, conn.basis);
        fac.col = Eigen::VectorXcd::Zero(n);
        fac.col(conn.basis.pos(v)) = cplx(1.0);
        conn.RV[v.bits()] = fac.col * fac.row;
        conn.RVfac[v.bits()] = std::move(fac);
    }
    return conn;
}

LocusProximity locus_proximity(const Eigen::VectorXcd& x) {
    const int m = static_cast<int>(x.size());
    if (m < 1 || m > kMaxVariables) throw dimension_error("point dimension out of range");
    LocusProximity best{std::numeric_limits<double>::infinity(), ""};
    for (int i = 0; i < m; ++i) {
        const double d = std::abs(x(i));
        if (d < best.distance) best = {d, "x_" + std::to_string(i + 1)};
    }
    for (std::uint32_t b = 1; b < (1u << m); ++b) {
        cplx dot(0.0);
        for (std::uint32_t rest = b; rest;) {
            const std::uint32_t low = rest & (~rest + 1u);
            dot += x(std::countr_zero(low));
            rest ^= low;
        }
        const double d = std::abs(cplx(1.0) - dot) / std::sqrt(double(std::popcount(b)));
        if (d < best.distance) best = {d, "S_" + Mask(m, b).str()};
    }
    return best;
}

std::vector<Eigen::MatrixXcd> omega_at(const ConnectionForm& conn, const Eigen::VectorXcd& x) {
    const int m = conn.m();
    if (x.size() != m) throw dimension_error("point dimension does not match connection");
    const LocusProximity prox = locus_proximity(x);
    if (prox.distance <= 1e-12)
        throw proximity_error("point lies on the singular component " + prox.component);
    const int n = conn.dim();
    std::vector<Eigen::MatrixXcd> omega(m, Eigen::MatrixXcd::Zero(n, n));
    for (int i = 0; i < m; ++i) omega[i] = conn.R0[i] / x(i);
    for (const Mask& v : conn.basis.order) {
        if (v.bits() == 0) continue;
        cplx dot(0.0);
        for (int i = 0; i < m; ++i)
            if (v.bit(i)) dot += x(i);
        const cplx denom = cplx(1.0) - dot;
        for (int i = 0; i < m; ++i)
            if (v.bit(i)) omega[i].noalias() -= conn.RV[v.bits()] / denom;
    }
    return omega;
}

double flatness_residual(const ConnectionForm& conn, const Eigen::VectorXcd& x, int i, int j) {
    if (i < 0 || j < 0 || i >= conn.m() || j >= conn.m())
        throw dimension_error("direction out of range");
    const auto omega = omega_at(conn, x);
    return (omega[i] * omega[j] - omega[j] * omega[i]).cwiseAbs().maxCoeff();
}

GaugeData build_gauge(const ParameterSet& p) {
    p.validate();
    GaugeData g;
    g.basis = make_basis(p.m());
    const int n = g.basis.dim();
    for (int i = 0; i < p.m(); ++i)
        if (beta(p, 1, i) == cplx(0.0))
            throw singular_parameter_error("beta[1," + std::to_string(i + 1) +
                                           "] vanishes; gauge is not invertible");
    g.P = Eigen::MatrixXcd::Zero(n, n);
    g.Pinv = Eigen::MatrixXcd::Zero(n, n);
    for (const Mask& v : g.basis.order)
        for (const Mask& w : g.basis.order) {
            if (!partial_geq(v, w)) continue;
            cplx pe(1.0), num(1.0), den(1.0);
            for (int i = 0; i < p.m(); ++i) {
                if (!v.bit(i)) continue;
                pe *= -beta(p, w.bit(i) ? 1 : 0, i);
                den *= -beta(p, 1, i);
                if (!w.bit(i)) num *= beta(p, 0, i);
            }
            g.P(g.basis.pos(v), g.basis.pos(w)) = pe;
            g.Pinv(g.basis.pos(v), g.basis.pos(w)) = num / den;
        }
    return g;
}

ConnectionForm conjugated_connection(const ConnectionForm& conn, const GaugeData& g) {
    if (g.basis.m != conn.basis.m) throw dimension_error("gauge and connection disagree on m");
    ConnectionForm out;
    out.basis = conn.basis;
    out.R0.reserve(conn.R0.size());
    for (const auto& R : conn.R0) out.R0.push_back(g.P * R * g.Pinv);
    out.RV.resize(conn.RV.size());
    out.RVfac.resize(conn.RVfac.size());
    for (std::size_t b = 0; b < conn.RV.size(); ++b) {
        if (conn.RV[b].size() == 0) continue;
        if (conn.RVfac[b]) {
            RankOneFactor fac;
            fac.col = g.P * conn.RVfac[b]->col;
            fac.row = conn.RVfac[b]->row * g.Pinv;
            out.RV[b] = fac.col * fac.row;
            out.RVfac[b] = std::move(fac);
        } else {
            out.RV[b] = g.P * conn.RV[b] * g.Pinv;
        }
    }
    return out;
}

std::vector<Eigen::MatrixXcd> gauged_omega_at(const ConnectionForm& conn, const GaugeData& g,
                                              const Eigen::VectorXcd& x) {
    auto omega = omega_at(conn, x);
    for (auto& M : omega) M = g.P * M * g.Pinv;
    return omega;
}

}  // namespace lfa
