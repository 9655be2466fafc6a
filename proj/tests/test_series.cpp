#include <doctest.h>

#include <cmath>

#include "lfa/errors.hpp"
#include "lfa/series.hpp"
#include "lfa/verify.hpp"
#include "test_support.hpp"

using lfa::cplx;
using lfa_test::cdist;

static lfa::ParameterSet frozen_m1() {
    lfa::ParameterSet p;
    p.a = cplx(0.5);
    p.b = {cplx(0.3)};
    p.c = {cplx(0.9)};
    return p;
}

static lfa::ParameterSet frozen_m2() {
    lfa::ParameterSet p;
    p.a = cplx(0.55);
    p.b = {cplx(0.3), cplx(0.35)};
    p.c = {cplx(0.85), cplx(0.75)};
    return p;
}

namespace {
double factorial(int n) { return std::tgamma(double(n) + 1.0); }

// Deliberately naive reference sums, term by term from scratch.
cplx gauss_reference(cplx a, cplx b, cplx c, cplx x, int N) {
    cplx sum(0.0);
    for (int n = 0; n <= N; ++n)
        sum += lfa::pochhammer(a, n) * lfa::pochhammer(b, n) /
               (lfa::pochhammer(c, n) * factorial(n)) * std::pow(x, double(n));
    return sum;
}

cplx two_variable_reference(const lfa::ParameterSet& p, cplx x1, cplx x2, int N) {
    cplx sum(0.0);
    for (int n1 = 0; n1 <= N; ++n1)
        for (int n2 = 0; n2 + n1 <= N; ++n2)
            sum += lfa::pochhammer(p.a, n1 + n2) * lfa::pochhammer(p.b[0], n1) *
                   lfa::pochhammer(p.b[1], n2) /
                   (lfa::pochhammer(p.c[0], n1) * lfa::pochhammer(p.c[1], n2) *
                    factorial(n1) * factorial(n2)) *
                   std::pow(x1, double(n1)) * std::pow(x2, double(n2));
    return sum;
}
}  // namespace

TEST_CASE("pochhammer") {
    CHECK(cdist(lfa::pochhammer(cplx(2.7, 0.3), 0), cplx(1.0)) == 0.0);
    CHECK(cdist(lfa::pochhammer(cplx(2.0), 3), cplx(24.0)) < 1e-14);
    CHECK(cdist(lfa::pochhammer(cplx(0.5), 2), cplx(0.75)) < 1e-15);
    CHECK(cdist(lfa::pochhammer(cplx(-1.0), 2), cplx(0.0)) == 0.0);
}

TEST_CASE("series value at the origin is one") {
    for (int m = 1; m <= 3; ++m) {
        std::mt19937_64 rng(771 + m);
        const auto p = lfa_test::random_generic_parameters(m, rng);
        const auto v = lfa::fa_truncated(p, Eigen::VectorXcd::Zero(m));
        CHECK(cdist(v.value, cplx(1.0)) == 0.0);
        CHECK(v.tail == 0.0);
    }
}

TEST_CASE("one variable agrees with a naive reference sum") {
    const auto p = frozen_m1();
    for (cplx x : {cplx(0.3), cplx(-0.55), cplx(0.2, 0.35)}) {
        Eigen::VectorXcd pt(1);
        pt << x;
        lfa::SeriesOptions opts;
        opts.max_total_degree = 60;
        const auto got = lfa::fa_truncated(p, pt, opts);
        const cplx want = gauss_reference(p.a, p.b[0], p.c[0], x, 60);
        CHECK(cdist(got.value, want) <= 1e-13 * std::abs(want));
    }
}

TEST_CASE("two variables agree with a naive reference sum") {
    const auto p = frozen_m2();
    Eigen::VectorXcd pt(2);
    pt << cplx(0.22, 0.05), cplx(-0.31, 0.02);
    lfa::SeriesOptions opts;
    opts.max_total_degree = 50;
    const auto got = lfa::fa_truncated(p, pt, opts);
    const cplx want = two_variable_reference(p, pt(0), pt(1), 50);
    CHECK(cdist(got.value, want) <= 1e-13 * std::abs(want));
}

TEST_CASE("swapping coordinates together with their parameters is a symmetry") {
    auto p = frozen_m2();
    auto q = p;
    std::swap(q.b[0], q.b[1]);
    std::swap(q.c[0], q.c[1]);
    Eigen::VectorXcd x(2), xs(2);
    x << cplx(0.2, 0.1), cplx(-0.15);
    xs << x(1), x(0);
    CHECK(cdist(lfa::fa_truncated(p, x).value, lfa::fa_truncated(q, xs).value) < 1e-14);
}

TEST_CASE("zero-order derivative is the plain sum") {
    const auto p = frozen_m2();
    Eigen::VectorXcd x(2);
    x << cplx(0.15), cplx(0.2);
    const auto plain = lfa::fa_truncated(p, x);
    const auto deriv = lfa::fa_derivative(p, x, {0, 0});
    CHECK(cdist(plain.value, deriv.value) == 0.0);
    const auto part = lfa::fa_partial_truncated(p, x, {});
    CHECK(cdist(plain.value, part.value) == 0.0);
}

TEST_CASE("partial derivative equals the contiguous parameter shift") {
    // d/dx_1 shifts a, b_1, c_1 up by one and scales by a b_1 / c_1.
    const auto p = frozen_m1();
    Eigen::VectorXcd x(1);
    x << cplx(0.3);
    auto shifted = p;
    shifted.a += 1.0;
    shifted.b[0] += 1.0;
    shifted.c[0] += 1.0;
    const cplx want = p.a * p.b[0] / p.c[0] * lfa::fa_truncated(shifted, x).value;
    const cplx got = lfa::fa_derivative(p, x, {1}).value;
    CHECK(cdist(got, want) <= 1e-10 * std::abs(want));

    const auto p2 = frozen_m2();
    Eigen::VectorXcd y(2);
    y << cplx(0.18, 0.04), cplx(-0.2);
    auto s2 = p2;
    s2.a += 1.0;
    s2.b[0] += 1.0;
    s2.c[0] += 1.0;
    const cplx want2 = p2.a * p2.b[0] / p2.c[0] * lfa::fa_truncated(s2, y).value;
    CHECK(cdist(lfa::fa_derivative(p2, y, {1, 0}).value, want2) <=
          1e-10 * std::abs(want2));
}

TEST_CASE("partial derivative matches a central difference") {
    const auto p = frozen_m2();
    Eigen::VectorXcd x(2);
    x << cplx(0.2), cplx(0.15);
    const double h = 1e-5;
    Eigen::VectorXcd xp = x, xm = x;
    xp(1) += h;
    xm(1) -= h;
    const cplx fd =
        (lfa::fa_truncated(p, xp).value - lfa::fa_truncated(p, xm).value) / (2.0 * h);
    const cplx got = lfa::fa_derivative(p, x, {0, 1}).value;
    CHECK(cdist(got, fd) <= 1e-6 * std::abs(got));

    // mixed second derivative against a cross difference
    Eigen::VectorXcd xpp = x, xpm = x, xmp = x, xmm = x;
    xpp(0) += h, xpp(1) += h;
    xpm(0) += h, xpm(1) -= h;
    xmp(0) -= h, xmp(1) += h;
    xmm(0) -= h, xmm(1) -= h;
    const cplx fd2 = (lfa::fa_truncated(p, xpp).value - lfa::fa_truncated(p, xpm).value -
                      lfa::fa_truncated(p, xmp).value + lfa::fa_truncated(p, xmm).value) /
                     (4.0 * h * h);
    const cplx got2 = lfa::fa_derivative(p, x, {1, 1}).value;
    CHECK(cdist(got2, fd2) <= 1e-5 * std::abs(got2));
}

TEST_CASE("index-set partials agree with order vectors") {
    const auto p = frozen_m2();
    Eigen::VectorXcd x(2);
    x << cplx(0.12, 0.08), cplx(0.22);
    CHECK(cdist(lfa::fa_partial_truncated(p, x, {0}).value,
                lfa::fa_derivative(p, x, {1, 0}).value) == 0.0);
    CHECK(cdist(lfa::fa_partial_truncated(p, x, {1}).value,
                lfa::fa_derivative(p, x, {0, 1}).value) == 0.0);
    CHECK(cdist(lfa::fa_partial_truncated(p, x, {0, 1}).value,
                lfa::fa_derivative(p, x, {1, 1}).value) == 0.0);
}

TEST_CASE("solution vector components in one and two variables") {
    const auto p = frozen_m1();
    Eigen::VectorXcd x(1);
    x << cplx(0.35, -0.1);
    const auto sol = lfa::solution_vector(p, x);
    REQUIRE(sol.values.size() == 2);
    CHECK(cdist(sol.values(0), lfa::fa_truncated(p, x).value) == 0.0);
    CHECK(cdist(sol.values(1), x(0) * lfa::fa_derivative(p, x, {1}).value) < 1e-15);

    const auto p2 = frozen_m2();
    Eigen::VectorXcd y(2);
    y << cplx(0.2), cplx(0.17, 0.06);
    const auto sol2 = lfa::solution_vector(p2, y);
    REQUIRE(sol2.values.size() == 4);
    CHECK(cdist(sol2.values(0), lfa::fa_truncated(p2, y).value) == 0.0);
    CHECK(cdist(sol2.values(1), y(0) * lfa::fa_derivative(p2, y, {1, 0}).value) < 1e-15);
    CHECK(cdist(sol2.values(2), y(1) * lfa::fa_derivative(p2, y, {0, 1}).value) < 1e-15);
    CHECK(cdist(sol2.values(3), y(0) * y(1) * lfa::fa_derivative(p2, y, {1, 1}).value) <
          1e-15);
}

TEST_CASE("points outside the convergence domain are rejected") {
    const auto p = frozen_m2();
    Eigen::VectorXcd x(2);
    x << cplx(0.6), cplx(0.45);
    CHECK_THROWS_AS(lfa::fa_truncated(p, x), lfa::series_domain_error);
    Eigen::VectorXcd y(1);
    y << cplx(2.0);
    CHECK_THROWS_AS(lfa::fa_truncated(frozen_m1(), y), lfa::series_domain_error);
    CHECK_THROWS_AS(lfa::solution_vector(frozen_m1(), y), lfa::series_domain_error);
}

TEST_CASE("tail estimate decays with the truncation degree") {
    const auto p = frozen_m2();
    Eigen::VectorXcd x(2);
    x << cplx(0.2), cplx(0.2);
    lfa::SeriesOptions lo, hi;
    lo.max_total_degree = 20;
    hi.max_total_degree = 60;
    const auto vlo = lfa::fa_truncated(p, x, lo);
    const auto vhi = lfa::fa_truncated(p, x, hi);
    CHECK(vhi.tail < vlo.tail);
    CHECK(vhi.converged(1e-12));
    CHECK(vhi.degree == 60);
}

TEST_CASE("hypergeometric operator annihilates the truncated sum") {
    // theta_k (theta_k + c_k - 1) F = x_k (sum_i theta_i + a)(theta_k + b_k) F
    // with theta_i = x_i d/dx_i, evaluated term-wise from the derivative sums.
    std::mt19937_64 rng(772);
    for (int m = 1; m <= 2; ++m) {
        const auto p = lfa_test::random_generic_parameters(m, rng);
        const auto x = lfa::sample_point_in_domain(m, rng);
        const cplx f = lfa::fa_truncated(p, x).value;
        for (int k = 0; k < m; ++k) {
            std::vector<int> ord(m, 0);
            ord[k] = 1;
            const cplx dk = lfa::fa_derivative(p, x, ord).value;
            ord[k] = 2;
            const cplx dkk = lfa::fa_derivative(p, x, ord).value;
            const cplx lhs = x(k) * x(k) * dkk + p.c[k] * x(k) * dk;

            // (sum_i theta_i + a)(x_k dF/dx_k + b_k F), expanded by hand
            cplx rhs = x(k) * dk + p.b[k] * f;
            rhs *= p.a;
            cplx theta_sum(0.0);
            for (int i = 0; i < m; ++i) {
                std::vector<int> oi(m, 0);
                oi[i] = 1;
                oi[k] += 1;
                const cplx dik = lfa::fa_derivative(p, x, oi).value;
                const cplx di = [&] {
                    std::vector<int> o(m, 0);
                    o[i] = 1;
                    return lfa::fa_derivative(p, x, o).value;
                }();
                theta_sum += x(i) * (x(k) * dik + p.b[k] * di);
            }
            theta_sum += x(k) * dk;  // product-rule term from theta_i hitting x_k
            rhs += theta_sum;
            rhs *= x(k);
            CHECK(std::abs(lhs - rhs) <= 1e-7 * std::max(1.0, std::abs(lhs)));
        }
    }
}

TEST_CASE("series solution satisfies the gauged first-order system") {
    std::mt19937_64 rng(773);
    for (int m = 1; m <= 2; ++m) {
        const auto p = lfa_test::random_generic_parameters(m, rng);
        for (int pt = 0; pt < 3; ++pt) {
            const auto x = lfa::sample_point_in_domain(m, rng);
            const Eigen::VectorXd res = lfa::pfaffian_residual(p, x);
            REQUIRE(res.size() == m);
            CHECK(res.maxCoeff() < 1e-8);
        }
    }
}

TEST_CASE("a detuned connection leaves a visible residual") {
    std::mt19937_64 rng(774);
    const auto p = lfa_test::random_generic_parameters(2, rng);
    auto q = p;
    q.c[0] += 0.1;
    const auto conn = lfa::build_connection(q);
    const auto g = lfa::build_gauge(q);
    const auto x = lfa::sample_point_in_domain(2, rng);
    const Eigen::VectorXd res = lfa::pfaffian_residual_against(p, conn, g, x);
    CHECK(res.maxCoeff() > 1e-3);
}
