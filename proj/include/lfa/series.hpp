#pragma once

#include <Eigen/Dense>

#include "lfa/connection.hpp"
#include "lfa/parameters.hpp"

namespace lfa {

struct SeriesOptions {
    int max_total_degree = 60;     // truncate at sum n_i <= this
    double tail_tolerance = 1e-12; // advisory threshold for the tail estimate
};

struct SeriesValue {
    cplx value;
    double tail = 0;  // sum of |term| over the top retained degree shell
    int degree = 0;   // truncation degree actually applied
    bool converged(double tol) const { return tail <= tol; }
};

/// (z)_n = z (z+1) ... (z+n-1), empty product for n = 0.
cplx pochhammer(cplx z, int n);

/// Truncated series sum_{|n| <= N} (a,|n|) prod_i (b_i,n_i)/((c_i,n_i) n_i!) x^n.
/// Requires sum_i |x_i| < 1 (throws series_domain_error otherwise).
SeriesValue fa_truncated(const ParameterSet& p, const Eigen::VectorXcd& x,
                         const SeriesOptions& opts = {});

/// Term-wise derivative of the truncated series; orders[i] >= 0 is the order
/// of differentiation in x_i.
SeriesValue fa_derivative(const ParameterSet& p, const Eigen::VectorXcd& x,
                          const std::vector<int>& orders, const SeriesOptions& opts = {});

/// First partial derivatives along a set of distinct coordinates (0-based).
SeriesValue fa_partial_truncated(const ParameterSet& p, const Eigen::VectorXcd& x,
                                 const std::vector<int>& index_set,
                                 const SeriesOptions& opts = {});

/// Solution column in basis order: component at mask v is
/// (prod_{i: v_i=1} x_i) * (partial derivative along {i: v_i=1}) of the series.
struct SolutionVector {
    Eigen::VectorXcd values;
    double tail = 0;  // worst component tail
    int degree = 0;
};
SolutionVector solution_vector(const ParameterSet& p, const Eigen::VectorXcd& x,
                               const SeriesOptions& opts = {});

/// Relative defect of the first-order system in each direction k:
/// || d/dx_k F_series - (P Omega_k Pinv) F_series || / || d/dx_k F_series ||,
/// with series, connection and gauge all built from p.
Eigen::VectorXd pfaffian_residual(const ParameterSet& p, const Eigen::VectorXcd& x,
                                  const SeriesOptions& opts = {});

/// Same defect but against an explicitly supplied connection and gauge, so a
/// deliberately mismatched connection can be measured.
Eigen::VectorXd pfaffian_residual_against(const ParameterSet& series_params,
                                          const ConnectionForm& conn, const GaugeData& g,
                                          const Eigen::VectorXcd& x,
                                          const SeriesOptions& opts = {});

}  // namespace lfa
