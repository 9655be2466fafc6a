#include "lfa/continuation.hpp"

#include <algorithm>
#include <cmath>

#include "lfa/errors.hpp"

namespace lfa {

double singular_distance(const Eigen::VectorXcd& x) { return locus_proximity(x).distance; }

Eigen::VectorXcd PathSegment::at(double t) const {
    if (kind == Kind::line) return from + t * (to - from);
    Eigen::VectorXcd x = base;
    const double angle = start_angle + 2.0 * M_PI * turns * t;
    x(coordinate) = center + radius * cplx(std::cos(angle), std::sin(angle));
    return x;
}

Eigen::VectorXcd PathSegment::velocity(double t) const {
    if (kind == Kind::line) return to - from;
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(base.size());
    const double angle = start_angle + 2.0 * M_PI * turns * t;
    const double w = 2.0 * M_PI * turns;
    v(coordinate) = radius * w * cplx(-std::sin(angle), std::cos(angle));
    return v;
}

Eigen::VectorXcd Path::start() const {
    if (segments.empty()) throw path_error("empty path has no start point");
    return segments.front().start();
}

Eigen::VectorXcd Path::end() const {
    if (segments.empty()) throw path_error("empty path has no end point");
    return segments.back().end();
}

bool Path::closed(double tol) const {
    const Eigen::VectorXcd s = start(), e = end();
    return (s - e).cwiseAbs().maxCoeff() <= tol * (1.0 + s.cwiseAbs().maxCoeff());
}

PathBuilder::PathBuilder(Eigen::VectorXcd start) : current_(std::move(start)) {
    if (current_.size() < 1) throw path_error("path start point is empty");
}

PathBuilder& PathBuilder::line_to(const Eigen::VectorXcd& q) {
    if (q.size() != current_.size()) throw path_error("segment changes dimension");
    PathSegment seg;
    seg.kind = PathSegment::Kind::line;
    seg.from = current_;
    seg.to = q;
    path_.segments.push_back(std::move(seg));
    current_ = q;
    return *this;
}

PathBuilder& PathBuilder::arc(int coordinate, cplx center, double turns) {
    if (coordinate < 0 || coordinate >= current_.size())
        throw path_error("arc coordinate out of range");
    PathSegment seg;
    seg.kind = PathSegment::Kind::arc;
    seg.base = current_;
    seg.coordinate = coordinate;
    seg.center = center;
    const cplx offset = current_(coordinate) - center;
    seg.radius = std::abs(offset);
    if (seg.radius == 0.0) throw path_error("arc starts at its own center");
    seg.start_angle = std::arg(offset);
    seg.turns = turns;
    path_.segments.push_back(seg);
    current_ = path_.segments.back().end();
    return *this;
}

Path PathBuilder::build() && { return std::move(path_); }

Path reversed(const Path& path) {
    Path out;
    out.min_samples = path.min_samples;
    out.segments.reserve(path.segments.size());
    for (auto it = path.segments.rbegin(); it != path.segments.rend(); ++it) {
        PathSegment seg = *it;
        if (seg.kind == PathSegment::Kind::line) {
            std::swap(seg.from, seg.to);
        } else {
            seg.start_angle += 2.0 * M_PI * seg.turns;
            seg.turns = -seg.turns;
        }
        out.segments.push_back(std::move(seg));
    }
    return out;
}

namespace {

// Dormand-Prince 5(4) pair.  Last row of `a` doubles as the 5th order weights
// (FSAL), `e` holds the weight difference giving the embedded error estimate.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

Eigen::MatrixXcd apply_connection(const ConnectionForm& conn, const Eigen::VectorXcd& x,
                                  const Eigen::VectorXcd& xdot, const Eigen::MatrixXcd& Y) {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(Y.rows(), Y.cols());
    for (int i = 0; i < conn.m(); ++i)
        out.noalias() += (xdot(i) / x(i)) * (conn.R0[i] * Y);
    for (const Mask& v : conn.basis.order) {
        if (v.bits() == 0) continue;
        cplx dot(0.0), vdot(0.0);
        for (int i = 0; i < conn.m(); ++i)
            if (v.bit(i)) {
                dot += x(i);
                vdot += xdot(i);
            }
        const cplx coeff = vdot / (cplx(1.0) - dot);
        const auto& fac = conn.RVfac[v.bits()];
        if (fac)
            out.noalias() -= coeff * (fac->col * (fac->row * Y));
        else
            out.noalias() -= coeff * (conn.RV[v.bits()] * Y);
    }
    return out;
}

double error_ratio(const Eigen::MatrixXcd& err, const Eigen::MatrixXcd& y0,
                   const Eigen::MatrixXcd& y1, double tol) {
    double sum = 0;
    for (Eigen::Index c = 0; c < err.cols(); ++c)
        for (Eigen::Index r = 0; r < err.rows(); ++r) {
            const double sc = tol + tol * std::max(std::abs(y0(r, c)), std::abs(y1(r, c)));
            const double q = std::abs(err(r, c)) / sc;
            sum += q * q;
        }
    return std::sqrt(sum / double(err.size()));
}

}  // namespace

ContinuationResult integrate_path(const ConnectionForm& conn, const Path& path,
                                  const Eigen::MatrixXcd& initial,
                                  const ContinuationOptions& opts) {
    if (path.segments.empty())
        return {initial, 0, 0.0};
    if (initial.rows() != conn.dim())
        throw dimension_error("initial state does not match the system rank");
    if (path.start().size() != conn.m())
        throw dimension_error("path dimension does not match connection");
    if (!(opts.tol > 0)) throw path_error("tolerance must be positive");

    ContinuationResult res;
    res.state = initial;
    const double h_cap_samples = 1.0 / std::max(1, path.min_samples);

    for (std::size_t si = 0; si < path.segments.size(); ++si) {
        const PathSegment& seg = path.segments[si];
        auto guard = [&](double t) -> double {
            const LocusProximity prox = locus_proximity(seg.at(t));
            if (prox.distance < opts.clearance)
                throw proximity_error("clearance violated near " + prox.component +
                                      " at segment " + std::to_string(si + 1) + ", t=" +
                                      std::to_string(t) + " (distance " +
                                      std::to_string(prox.distance) + ")");
            return prox.distance;
        };

        double t = 0.0;
        double err_prev = 1.0;
        long attempts = 0;
        Eigen::MatrixXcd k1 = apply_connection(conn, seg.at(0.0), seg.velocity(0.0), res.state);
        double dist = guard(0.0);
        double speed = seg.velocity(0.0).norm();
        double h = std::min({h_cap_samples, 0.5 * dist / (speed + 1e-300), 0.1});

        while (t < 1.0) {
            if (++attempts > opts.max_steps)
                throw stiffness_error("step limit exceeded on segment " + std::to_string(si + 1));
            h = std::min({h, 1.0 - t, h_cap_samples, 0.5 * dist / (speed + 1e-300)});
            if (h < 1e-14)
                throw stiffness_error("step size underflow on segment " + std::to_string(si + 1) +
                                      " at t=" + std::to_string(t));

            const Eigen::MatrixXcd& y = res.state;
            const auto stage = [&](double ct, const Eigen::MatrixXcd& yst) {
                return apply_connection(conn, seg.at(t + ct * h), seg.velocity(t + ct * h), yst);
            };
            const Eigen::MatrixXcd k2 = stage(c2, y + h * (a21 * k1));
            const Eigen::MatrixXcd k3 = stage(c3, y + h * (a31 * k1 + a32 * k2));
            const Eigen::MatrixXcd k4 = stage(c4, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
            const Eigen::MatrixXcd k5 =
                stage(c5, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
            const Eigen::MatrixXcd k6 =
                stage(1.0, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
            const Eigen::MatrixXcd y1 =
                y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
            const Eigen::MatrixXcd k7 = stage(1.0, y1);
            const Eigen::MatrixXcd errm =
                h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

            const double err = error_ratio(errm, y, y1, opts.tol);
            if (err <= 1.0) {
                t += h;
                res.state = y1;
                k1 = k7;  // first-same-as-last
                ++res.steps;
                res.max_local_error = std::max(res.max_local_error, err * opts.tol);
                if (t < 1.0) {
                    dist = guard(t);
                    speed = seg.velocity(t).norm();
                }
                const double fac = (err == 0.0)
                                       ? 5.0
                                       : 0.9 * std::pow(err, -0.7 / 5.0) *
                                             std::pow(err_prev, 0.4 / 5.0);
                err_prev = std::max(err, 1e-10);
                h *= std::clamp(fac, 0.2, 5.0);
            } else {
                h *= std::clamp(0.9 * std::pow(err, -0.2), 0.1, 0.9);
            }
        }
        guard(1.0);
    }
    return res;
}

ContinuationResult integrate_path(const ConnectionForm& conn, const GaugeData& g,
                                  const Path& path, const Eigen::MatrixXcd& initial,
                                  const ContinuationOptions& opts) {
    return integrate_path(conjugated_connection(conn, g), path, initial, opts);
}

Eigen::MatrixXcd monodromy_loop(const ConnectionForm& conn, const Path& loop,
                                const ContinuationOptions& opts) {
    if (!loop.closed())
        throw path_error("monodromy loop does not close up");
    const int n = conn.dim();
    return integrate_path(conn, loop, Eigen::MatrixXcd::Identity(n, n), opts).state;
}

Eigen::MatrixXcd monodromy_loop(const ConnectionForm& conn, const GaugeData& g,
                                const Path& loop, const ContinuationOptions& opts) {
    return monodromy_loop(conjugated_connection(conn, g), loop, opts);
}

}  // namespace lfa
