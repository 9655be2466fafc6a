#pragma once

#include <Eigen/Dense>

#include "lfa/connection.hpp"

namespace lfa {

/// min( min_i |x_i|, min_{v != 0} |1 - v.x| / ||v||_2 ).
double singular_distance(const Eigen::VectorXcd& x);

/// One smooth piece of a path in C^m, parametrized over t in [0,1].
/// A line runs from .from to .to.  An arc moves coordinate .coordinate on the
/// circle around .center of radius .radius, starting at .start_angle and
/// sweeping 2 pi * .turns (negative = clockwise); the other coordinates stay
/// at .base.
struct PathSegment {
    enum class Kind { line, arc };
    Kind kind = Kind::line;

    Eigen::VectorXcd from, to;  // line endpoints
    Eigen::VectorXcd base;      // arc: frozen coordinates (entry .coordinate ignored)
    int coordinate = 0;
    cplx center;
    double radius = 0;
    double start_angle = 0;
    double turns = 0;

    Eigen::VectorXcd at(double t) const;
    Eigen::VectorXcd velocity(double t) const;
    Eigen::VectorXcd start() const { return at(0.0); }
    Eigen::VectorXcd end() const { return at(1.0); }
};

struct Path {
    std::vector<PathSegment> segments;
    int min_samples = 16;  // lower bound on accepted steps per segment

    Eigen::VectorXcd start() const;
    Eigen::VectorXcd end() const;
    bool closed(double tol = 1e-9) const;
};

/// Chains segments so each starts where the previous one ended.
class PathBuilder {
public:
    explicit PathBuilder(Eigen::VectorXcd start);
    PathBuilder& line_to(const Eigen::VectorXcd& q);
    /// Full circle fraction around `center` in the plane of `coordinate`,
    /// starting at the current point (which fixes the radius and phase).
    PathBuilder& arc(int coordinate, cplx center, double turns);
    const Eigen::VectorXcd& current() const { return current_; }
    Path build() &&;

private:
    Eigen::VectorXcd current_;
    Path path_;
};

Path reversed(const Path& path);

struct ContinuationOptions {
    double tol = 1e-10;        // local error target per step
    double clearance = 0.02;   // abort when singular_distance drops below this
    long max_steps = 1000000;  // per segment
};

struct ContinuationResult {
    Eigen::MatrixXcd state;
    long steps = 0;             // accepted steps over the whole path
    double max_local_error = 0; // largest accepted per-step error estimate
};

/// Transport `initial` (a column vector, or a matrix of columns) along the
/// path under d/dt Y = (sum_i Omega_i(x) dx_i/dt) Y using an embedded
/// Dormand-Prince 4(5) pair with PI step-size control.  The step size is also
/// capped by the distance to the singular locus; dropping below the clearance
/// aborts with proximity_error naming the offending component and position.
ContinuationResult integrate_path(const ConnectionForm& conn, const Path& path,
                                  const Eigen::MatrixXcd& initial,
                                  const ContinuationOptions& opts = {});

/// Same, but in the classical frame: residues conjugated by the gauge first.
ContinuationResult integrate_path(const ConnectionForm& conn, const GaugeData& g,
                                  const Path& path, const Eigen::MatrixXcd& initial,
                                  const ContinuationOptions& opts = {});

/// Fundamental matrix around a closed loop, normalized to the identity at the
/// basepoint.  Throws path_error when the loop does not close.
Eigen::MatrixXcd monodromy_loop(const ConnectionForm& conn, const Path& loop,
                                const ContinuationOptions& opts = {});
Eigen::MatrixXcd monodromy_loop(const ConnectionForm& conn, const GaugeData& g,
                                const Path& loop, const ContinuationOptions& opts = {});

}  // namespace lfa
