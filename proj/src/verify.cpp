#include "lfa/verify.hpp"

#include <cmath>

#include "lfa/continuation.hpp"
#include "lfa/errors.hpp"
#include "lfa/intersection.hpp"

namespace lfa {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3e", v);
    return buf;
}

double rel_matrix_dev(const Eigen::MatrixXcd& got, const Eigen::MatrixXcd& want) {
    const double scale = std::max({1e-300, got.cwiseAbs().maxCoeff(), want.cwiseAbs().maxCoeff()});
    return (got - want).cwiseAbs().maxCoeff() / scale;
}

}  // namespace

CheckResult check_det_identity(const ParameterSet& p, double tol) {
    const IntersectionData data = build_intersection(p);
    const cplx lu = data.C.partialPivLu().determinant();
    const cplx closed = det_c_closed(p);
    const double rel = std::abs(lu - closed) / std::abs(closed);
    return {"determinant identity", rel < tol, rel, tol,
            "LU " + fmt(std::abs(lu)) + " vs closed " + fmt(std::abs(closed))};
}

CheckResult check_intersection_consistency(const ParameterSet& p, double entry_tol,
                                           double det_tol) {
    const IntersectionIdentityReport rep = verify_intersection_identities(p);
    const double cf = rep.cf_deviation / rep.cf_scale;
    const double fcf = rep.fcf_deviation / rep.fcf_scale;
    const double det_rel = std::max(rep.det_phi_psi_rel, rep.det_psi_psi_rel);
    const bool pass = cf < entry_tol && fcf < entry_tol && det_rel < det_tol;
    return {"intersection identities", pass, std::max(cf, fcf), entry_tol,
            "C F^T dev " + fmt(cf) + ", F C F^T dev " + fmt(fcf) + ", aux det rel " +
                fmt(det_rel) + " (tol " + fmt(det_tol) + ")"};
}

CheckResult check_dual_construction(const ParameterSet& p, double tol) {
    const ConnectionForm a = build_connection(p);
    const ConnectionForm b = residues_from_pde(p);
    double worst = 0;
    for (int k = 0; k < p.m(); ++k) worst = std::max(worst, rel_matrix_dev(a.R0[k], b.R0[k]));
    for (const Mask& v : a.basis.order)
        if (v.bits() != 0)
            worst = std::max(worst, rel_matrix_dev(a.RV[v.bits()], b.RV[v.bits()]));
    return {"dual residue construction", worst < tol, worst, tol,
            "pairing route vs derivative route, max relative entry deviation"};
}

CheckResult check_eigenstructure(const ParameterSet& p, double eig_tol, double rank_tol,
                                 double trace_tol) {
    const ConnectionForm conn = build_connection(p);
    const int half = conn.dim() / 2;
    double worst_eig = 0, worst_rank = 0, worst_trace = 0;
    bool pass = true;
    for (int k = 0; k < p.m(); ++k) {
        const cplx lam = cplx(1.0) - p.c[k];
        const double tol_k = eig_tol * (1.0 + std::abs(lam));
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(conn.R0[k], false);
        int at_zero = 0, at_lam = 0;
        for (int i = 0; i < conn.dim(); ++i) {
            const cplx ev = es.eigenvalues()(i);
            const double d0 = std::abs(ev), dl = std::abs(ev - lam);
            if (d0 <= dl) {
                ++at_zero;
                worst_eig = std::max(worst_eig, d0 / (1.0 + std::abs(lam)));
                if (d0 > tol_k) pass = false;
            } else {
                ++at_lam;
                worst_eig = std::max(worst_eig, dl / (1.0 + std::abs(lam)));
                if (dl > tol_k) pass = false;
            }
        }
        if (at_zero != half || at_lam != half) pass = false;
    }
    for (const Mask& v : conn.basis.order) {
        if (v.bits() == 0) continue;
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(conn.RV[v.bits()]);
        const auto& sv = svd.singularValues();
        const double ratio = sv(1) / sv(0);
        worst_rank = std::max(worst_rank, ratio);
        if (ratio > rank_tol) pass = false;
        const cplx want = sigma_beta(p, v) - p.a;
        const double trel = std::abs(conn.RV[v.bits()].trace() - want) / (1.0 + std::abs(want));
        worst_trace = std::max(worst_trace, trel);
        if (trel > trace_tol) pass = false;
    }
    return {"residue eigenstructure", pass, std::max({worst_eig, worst_rank, worst_trace}),
            std::max({eig_tol, rank_tol, trace_tol}),
            "eigenvalue dev " + fmt(worst_eig) + ", sigma2/sigma1 " + fmt(worst_rank) +
                ", trace dev " + fmt(worst_trace)};
}

CheckResult check_flatness(const ParameterSet& p, std::mt19937_64& rng, int points,
                           double clearance, double tol) {
    if (p.m() == 1)
        return {"flatness", true, 0.0, tol, "single variable, nothing to commute"};
    const ConnectionForm conn = build_connection(p);
    double worst = 0;
    for (int n = 0; n < points; ++n) {
        const Eigen::VectorXcd x = sample_point_clear(p.m(), rng, clearance);
        const auto omega = omega_at(conn, x);
        for (int i = 0; i < p.m(); ++i)
            for (int j = i + 1; j < p.m(); ++j) {
                const double comm = (omega[i] * omega[j] - omega[j] * omega[i]).norm();
                const double scale = omega[i].norm() * omega[j].norm();
                worst = std::max(worst, comm / scale);
            }
    }
    return {"flatness", worst < tol, worst, tol,
            std::to_string(points) + " random points, clearance " + fmt(clearance)};
}

CheckResult check_pfaffian(const ParameterSet& p, std::mt19937_64& rng, int points,
                           const SeriesOptions& opts, double tol) {
    double worst = 0;
    for (int n = 0; n < points; ++n) {
        const Eigen::VectorXcd x = sample_point_in_domain(p.m(), rng);
        worst = std::max(worst, pfaffian_residual(p, x, opts).maxCoeff());
    }
    return {"series against system", worst < tol, worst, tol,
            std::to_string(points) + " domain points, degree " +
                std::to_string(opts.max_total_degree)};
}

CheckResult check_gauge_inverse(const ParameterSet& p, double tol) {
    const GaugeData g = build_gauge(p);
    const int n = g.basis.dim();
    const double dev =
        (g.P * g.Pinv - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
    return {"gauge closed-form inverse", dev < tol, dev, tol, "max entry of P Pinv - id"};
}

CheckResult check_classical_reduction(const ParameterSet& p, double tol) {
    if (p.m() != 1)
        return {"classical reduction", true, 0.0, tol, "only defined for m = 1, skipped"};
    const ConnectionForm conn = build_connection(p);
    const GaugeData g = build_gauge(p);
    const cplx a = p.a, b = p.b[0], c = p.c[0];
    double worst = 0;
    for (const cplx x : {cplx(0.2, 0.0), cplx(0.37, -0.11), cplx(-0.25, 0.4), cplx(0.81, 0.07)}) {
        Eigen::VectorXcd pt(1);
        pt(0) = x;
        const Eigen::MatrixXcd M = gauged_omega_at(conn, g, pt)[0];
        // With Y = (F, x F') the first row must read F' = Y2 / x and the second
        // must reproduce x(1-x) F'' + (c - (a+b+1) x) F' - a b F = 0.
        const double scale = std::max(1.0, M.cwiseAbs().maxCoeff());
        const cplx one_minus = cplx(1.0) - x;
        worst = std::max({worst, std::abs(M(0, 0)) / scale,
                          std::abs(M(0, 1) - cplx(1.0) / x) / scale,
                          std::abs(M(1, 0) - a * b / one_minus) / scale,
                          std::abs(M(1, 1) - ((cplx(1.0) - c) / x +
                                              (a + b + 1.0 - c) / one_minus)) / scale});
    }
    return {"classical reduction", worst < tol, worst, tol,
            "second-order elimination coefficients at 4 sample points"};
}

CheckResult check_biorthogonality(const ParameterSet& p, double tol) {
    const IntersectionData data = build_intersection(p);
    const MaskBasis& basis = data.basis;
    double worst = 0;
    for (int k = 0; k < p.m(); ++k) {
        const cplx b0 = beta(p, 0, k), b1 = beta(p, 1, k);
        for (const Mask& v : basis.order) {
            if (v.bit(k)) continue;
            const Eigen::VectorXcd col =
                data.C *
                (f_vector(v, p, basis) - f_vector(v.flipped(k), p, basis)).transpose();
            const cplx scale = b1 * pi_beta(p, v) / (b0 + b1);
            for (const Mask& w : basis.order) {
                if (w.bit(k)) continue;
                const cplx pair = scale * (col(basis.pos(w)) - col(basis.pos(w.flipped(k))));
                const cplx want = (v == w) ? cplx(1.0) : cplx(0.0);
                worst = std::max(worst, std::abs(pair - want));
            }
        }
    }
    return {"paired-frame projection", worst < tol, worst, tol,
            "delta identity over halved frames, every direction"};
}

Eigen::VectorXcd sample_point_clear(int m, std::mt19937_64& rng, double clearance, double box) {
    std::uniform_real_distribution<double> u(-box, box);
    for (int tries = 0; tries < 10000; ++tries) {
        Eigen::VectorXcd x(m);
        for (int i = 0; i < m; ++i) x(i) = cplx(u(rng), u(rng));
        if (singular_distance(x) > clearance) return x;
    }
    throw error("could not sample a point clear of the singular locus");
}

Eigen::VectorXcd sample_point_in_domain(int m, std::mt19937_64& rng, double radius_sum,
                                        double min_coord) {
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    const double total = radius_sum * (0.6 + 0.35 * u01(rng));
    const double floor_r = std::min(min_coord, total / (2.0 * m));
    std::vector<double> w(m);
    double wsum = 0;
    for (double& wi : w) {
        wi = 0.2 + 0.8 * u01(rng);
        wsum += wi;
    }
    Eigen::VectorXcd x(m);
    for (int i = 0; i < m; ++i) {
        const double r = floor_r + (w[i] / wsum) * (total - m * floor_r);
        const double th = 2.0 * M_PI * u01(rng);
        x(i) = cplx(r * std::cos(th), r * std::sin(th));
    }
    return x;
}

}  // namespace lfa
