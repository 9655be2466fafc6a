#pragma once

#include <Eigen/Dense>

#include "lfa/parameters.hpp"

namespace lfa {

/// All A_w over the full subset lattice, indexed by mask bits.
std::vector<cplx> a_lattice(const ParameterSet& p);

/// Pairing of the twisted cocycle frame {phi_v} with itself, normalized by
/// (2 pi i)^m:  sum over masks w of A_w times prod_{i: w_i=0} of
/// delta(v_i, w'_i) / beta_{v_i,i}.  Only w containing v xor v' contribute.
cplx phi_phi(const Mask& v, const Mask& vp, const ParameterSet& p);

/// Pairing of {phi_v} against the dual frame {psi_v}: diagonal, 1 / pi_beta(v).
cplx phi_psi(const Mask& v, const Mask& vp, const ParameterSet& p);

/// Pairing of {psi_v} with itself: depends only on how many coordinates agree.
cplx psi_psi(const Mask& v, const Mask& vp, const ParameterSet& p);

struct IntersectionData {
    MaskBasis basis;
    Eigen::MatrixXcd C;       // phi against phi
    Eigen::MatrixXcd phiPsi;  // phi against psi (diagonal)
    Eigen::MatrixXcd psiPsi;  // psi against psi
};

IntersectionData build_intersection(const ParameterSet& p);

/// Closed form a^{2^m} / (prod_w gamma_w * prod_i (beta_{0,i} beta_{1,i})^{2^{m-1}}).
cplx det_c_closed(const ParameterSet& p);

/// Closed forms for the determinants of the two auxiliary pairing matrices.
cplx det_phi_psi_closed(const ParameterSet& p);
cplx det_psi_psi_closed(const ParameterSet& p);

struct IntersectionIdentityReport {
    double cf_deviation = 0;   // max entry of |C F^T - phiPsi|
    double cf_scale = 1;
    double fcf_deviation = 0;  // max entry of |F C F^T - psiPsi|
    double fcf_scale = 1;
    double det_c_rel = 0;        // LU determinant vs closed form
    double det_phi_psi_rel = 0;
    double det_psi_psi_rel = 0;
};

/// Cross-checks the pairing matrices against the dual-frame coefficient matrix
/// F (rows f_v): C F^T must equal phiPsi and F C F^T must equal psiPsi, and the
/// three determinants must match their closed forms.
IntersectionIdentityReport verify_intersection_identities(const ParameterSet& p);

}  // namespace lfa
