#pragma once

#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "lfa/parameters.hpp"
#include "lfa/series.hpp"

namespace lfa {

struct CheckResult {
    std::string name;
    bool pass = false;
    double error = 0;      // worst observed deviation
    double tolerance = 0;
    std::string detail;
};

/// Determinant of the phi/phi pairing against its closed form.
CheckResult check_det_identity(const ParameterSet& p, double tol = 1e-10);

/// C F^T = phiPsi, F C F^T = psiPsi entrywise, plus the two auxiliary
/// determinant closed forms.
CheckResult check_intersection_consistency(const ParameterSet& p, double entry_tol = 1e-12,
                                           double det_tol = 1e-10);

/// Intersection-pairing residues against the derivative-rule residues.
CheckResult check_dual_construction(const ParameterSet& p, double tol = 1e-12);

/// Residue eigenstructure: R0[k] has eigenvalues {0, 1-c_k} with equal
/// multiplicity; RV[v] is rank one with trace sigma_beta(v) - a.
CheckResult check_eigenstructure(const ParameterSet& p, double eig_tol = 1e-8,
                                 double rank_tol = 1e-10, double trace_tol = 1e-10);

/// Commutators [Omega_i, Omega_j] at random points clear of the locus.
CheckResult check_flatness(const ParameterSet& p, std::mt19937_64& rng, int points = 20,
                           double clearance = 0.05, double tol = 1e-10);

/// Series solution vector against the gauged system at random domain points.
CheckResult check_pfaffian(const ParameterSet& p, std::mt19937_64& rng, int points = 5,
                           const SeriesOptions& opts = {}, double tol = 1e-8);

/// P Pinv = id (closed-form inverse, max entry deviation).
CheckResult check_gauge_inverse(const ParameterSet& p, double tol = 1e-12);

/// m = 1 only: the gauged system eliminates to the classical second-order
/// equation x(1-x) F'' + (c_1 - (a+b_1+1) x) F' - a b_1 F = 0; compares the
/// implied coefficients at sample points.
CheckResult check_classical_reduction(const ParameterSet& p, double tol = 1e-10);

/// Paired-frame projection identity:
/// beta_{1,k} pi_beta(v) / (beta_{0,k}+beta_{1,k}) *
///   (e_w - e_{s_k w}) C (f_v - f_{s_k v})^T = delta(v,w) over v_k = w_k = 0.
CheckResult check_biorthogonality(const ParameterSet& p, double tol = 1e-10);

/// Random point with singular_distance above the clearance, coordinates drawn
/// from a centered complex box.
Eigen::VectorXcd sample_point_clear(int m, std::mt19937_64& rng, double clearance = 0.05,
                                    double box = 1.2);

/// Random point inside the convergence domain: sum |x_i| <= radius_sum and
/// every |x_i| >= min_coord.
Eigen::VectorXcd sample_point_in_domain(int m, std::mt19937_64& rng, double radius_sum = 0.4,
                                        double min_coord = 0.05);

}  // namespace lfa
