#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "lfa/intersection.hpp"

namespace lfa {

/// Coordinate row vector of psi_v in the phi frame:
/// f_v = ((a - sigma_beta(v))/a) e_v - sum_j (beta_{1-v_j, j}/a) e_{flip_j(v)}.
Eigen::RowVectorXcd f_vector(const Mask& v, const ParameterSet& p, const MaskBasis& basis);

/// Stacked rows f_v in basis order.
Eigen::MatrixXcd f_matrix(const ParameterSet& p, const MaskBasis& basis);

/// Residue matrix of the connection along x_k = 0 (0-based k), built from the
/// intersection pairings:
///   (1-c_k) id + sum_{v: v_k=0} beta_{1,k} pi_beta(v) C (f_v - f_{s_k v})^T (e_v - e_{s_k v}).
/// Matrices act on coordinate row vectors from the right: z -> z R.
Eigen::MatrixXcd residue_zero(int k, const ParameterSet& p, const IntersectionData& data);

/// Residue matrix along the hyperplane 1 - v.x = 0 for v != 0:
///   -a pi_beta(v) C f_v^T f_v.   Rank one.
Eigen::MatrixXcd residue_hyperplane(const Mask& v, const ParameterSet& p,
                                    const IntersectionData& data);

struct RankOneFactor {
    Eigen::VectorXcd col;
    Eigen::RowVectorXcd row;
};

/// The full logarithmic connection: dlog x_k residues R0[k] and dlog(1 - v.x)
/// residues RV[v.bits()] for v != 0.  RVfac keeps the rank-one factorization
/// (col * row == RV) used for fast right-multiplication during continuation.
struct ConnectionForm {
    MaskBasis basis;
    std::vector<Eigen::MatrixXcd> R0;
    std::vector<Eigen::MatrixXcd> RV;                 // indexed by bits; [0] stays empty
    std::vector<std::optional<RankOneFactor>> RVfac;  // parallel to RV

    int m() const { return static_cast<int>(R0.size()); }
    int dim() const { return basis.dim(); }
};

/// Intersection-pairing route.
ConnectionForm build_connection(const ParameterSet& p);

/// Independent route: assemble the same residues directly from the first-order
/// derivative rules of the cocycle frame.  Row v of R0[k] is -beta_{v_k,k} at
/// column v and -beta_{1-v_k,k} at column flip_k(v); row v of RV[v] is -a f_v
/// and every other row of RV[v] is zero.
ConnectionForm residues_from_pde(const ParameterSet& p);

/// Distance from x to the singular locus together with the closest component
/// name ("x_2" or "S_(1,1)").  Hyperplane distances are |1 - v.x| / ||v||.
struct LocusProximity {
    double distance = 0;
    std::string component;
};
LocusProximity locus_proximity(const Eigen::VectorXcd& x);

/// Coefficient matrices Omega_i(x) of the connection written in dx_i:
/// Omega_i = R0[i]/x_i - sum_{v: v_i=1} RV[v]/(1 - v.x).
/// Throws proximity_error when x is (numerically) on the locus.
std::vector<Eigen::MatrixXcd> omega_at(const ConnectionForm& conn, const Eigen::VectorXcd& x);

/// Max-entry norm of the commutator [Omega_i, Omega_j] at x.  Zero curvature
/// makes this vanish identically in exact arithmetic.
double flatness_residual(const ConnectionForm& conn, const Eigen::VectorXcd& x, int i, int j);

/// Lower-triangular gauge between the cocycle frame and the classical frame of
/// the function and its scaled derivatives.  Both P and its inverse come from
/// closed forms, not numeric inversion:
///   P[v][w]    = prod_{i: v_i=1} (-beta_{w_i,i})                  for v >= w
///   Pinv[v][w] = prod_{i: v_i=1, w_i=0} beta_{0,i}
///                / prod_{i: v_i=1} (-beta_{1,i})                  for v >= w.
struct GaugeData {
    MaskBasis basis;
    Eigen::MatrixXcd P, Pinv;
};
GaugeData build_gauge(const ParameterSet& p);

/// Connection with every residue conjugated to the classical frame, P R Pinv.
ConnectionForm conjugated_connection(const ConnectionForm& conn, const GaugeData& g);

/// P Omega_i(x) Pinv for all i.
std::vector<Eigen::MatrixXcd> gauged_omega_at(const ConnectionForm& conn, const GaugeData& g,
                                              const Eigen::VectorXcd& x);

}  // namespace lfa
