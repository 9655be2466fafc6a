#include <doctest.h>

#include "lfa/errors.hpp"
#include "lfa/json_io.hpp"
#include "lfa/masks.hpp"
#include "lfa/parameters.hpp"
#include "test_support.hpp"

using lfa::Mask;
using lfa::cplx;
using lfa_test::cdist;

static lfa::ParameterSet frozen_m2() {
    lfa::ParameterSet p;
    p.a = cplx(0.55, 0.0);
    p.b = {cplx(0.3, 0.0), cplx(0.35, 0.0)};
    p.c = {cplx(0.85, 0.0), cplx(0.75, 0.0)};
    return p;
}

TEST_CASE("beta selection") {
    const auto p = frozen_m2();
    CHECK(cdist(lfa::beta(p, 0, 0), cplx(0.3)) == 0.0);
    CHECK(cdist(lfa::beta(p, 0, 1), cplx(0.35)) == 0.0);
    // c_i - 1 - b_i
    CHECK(cdist(lfa::beta(p, 1, 0), cplx(-0.45)) < 1e-15);
    CHECK(cdist(lfa::beta(p, 1, 1), cplx(-0.6)) < 1e-15);
    CHECK_THROWS_AS(lfa::beta(p, 2, 0), lfa::dimension_error);
    CHECK_THROWS_AS(lfa::beta(p, 0, 2), lfa::dimension_error);
}

TEST_CASE("mask-indexed beta sums and products") {
    std::mt19937_64 rng(313);
    const auto p = lfa_test::random_generic_parameters(3, rng);
    for (std::uint32_t b = 0; b < 8; ++b) {
        const Mask v(3, b);
        cplx s(0.0), q(1.0);
        for (int i = 0; i < 3; ++i) {
            s += lfa::beta(p, v.bit(i) ? 1 : 0, i);
            q *= lfa::beta(p, v.bit(i) ? 1 : 0, i);
        }
        CHECK(cdist(lfa::sigma_beta(p, v), s) < 1e-14);
        CHECK(cdist(lfa::pi_beta(p, v), q) < 1e-14);
    }
    // summing beta over v and over its complement collapses to sum(c_i - 1)
    cplx cs(0.0);
    for (int i = 0; i < 3; ++i) cs += p.c[i] - 1.0;
    for (std::uint32_t b = 0; b < 8; ++b) {
        const Mask v(3, b);
        const Mask nv(3, ~b & 7u);
        CHECK(cdist(lfa::sigma_beta(p, v) + lfa::sigma_beta(p, nv), cs) < 1e-13);
    }
}

TEST_CASE("gamma values and linearity") {
    const auto p = frozen_m2();
    CHECK(cdist(lfa::gamma_v(p, Mask(2, 0b00)), cplx(0.55)) < 1e-15);
    CHECK(cdist(lfa::gamma_v(p, Mask(2, 0b01)), cplx(0.55 - 0.85 + 1.0)) < 1e-15);
    CHECK(cdist(lfa::gamma_v(p, Mask(2, 0b10)), cplx(0.55 - 0.75 + 1.0)) < 1e-15);
    CHECK(cdist(lfa::gamma_v(p, Mask(2, 0b11)), cplx(0.55 - 0.85 - 0.75 + 2.0)) < 1e-15);

    // gamma_v - gamma_0 is additive over the set bits
    std::mt19937_64 rng(314);
    const auto q = lfa_test::random_generic_parameters(4, rng);
    for (std::uint32_t b = 0; b < 16; ++b) {
        const Mask v(4, b);
        cplx acc = q.a;
        for (int i = 0; i < 4; ++i)
            if (v.bit(i)) acc += 1.0 - q.c[i];
        CHECK(cdist(lfa::gamma_v(q, v), acc) < 1e-14);
    }
}

TEST_CASE("validate rejects mismatched lengths") {
    lfa::ParameterSet p;
    p.a = cplx(0.5);
    p.b = {cplx(0.3), cplx(0.2)};
    p.c = {cplx(0.9)};
    CHECK_THROWS_AS(p.validate(), lfa::dimension_error);
    p.b = {};
    p.c = {};
    CHECK_THROWS_AS(p.validate(), lfa::dimension_error);
}

TEST_CASE("genericity: clean parameters pass") {
    lfa::ParameterSet p;
    p.a = cplx(0.5);
    p.b = {cplx(0.3)};
    p.c = {cplx(0.9)};
    const auto rep = lfa::genericity_check(p, 1e-6);
    CHECK(rep.generic());
    CHECK(rep.issues.empty());
}

TEST_CASE("genericity: integral beta[1,i] is flagged") {
    lfa::ParameterSet p;
    p.a = cplx(0.5);
    p.b = {cplx(0.3)};
    p.c = {cplx(1.3)};  // c - 1 - b = 0
    const auto rep = lfa::genericity_check(p, 1e-8);
    REQUIRE(!rep.generic());
    bool found = false;
    for (const auto& iss : rep.issues) found = found || iss.quantity == "beta[1,1]";
    CHECK(found);
}

TEST_CASE("genericity: integral gamma is flagged with its mask") {
    lfa::ParameterSet p;
    p.a = cplx(0.5);
    p.b = {cplx(0.3), cplx(0.25)};
    p.c = {cplx(1.2), cplx(1.3)};  // a - c1 - c2 + 2 = 0
    const auto rep = lfa::genericity_check(p, 1e-8);
    REQUIRE(!rep.generic());
    bool found = false;
    for (const auto& iss : rep.issues) found = found || iss.quantity == "gamma[(1,1)]";
    CHECK(found);
}

TEST_CASE("genericity: near-integral values respect eps") {
    lfa::ParameterSet p;
    p.a = cplx(0.5);
    p.b = {cplx(1e-5)};  // beta[0,1] is 1e-5 away from 0
    p.c = {cplx(0.9)};
    CHECK(lfa::genericity_check(p, 1e-6).generic());
    CHECK(!lfa::genericity_check(p, 1e-4).generic());
}

TEST_CASE("integer distance is measured to the nearest real integer") {
    CHECK(lfa::integer_distance(cplx(2.0)) == doctest::Approx(0.0));
    CHECK(lfa::integer_distance(cplx(2.4)) == doctest::Approx(0.4));
    CHECK(lfa::integer_distance(cplx(-1.5)) == doctest::Approx(0.5));
    CHECK(lfa::integer_distance(cplx(3.0, 0.25)) == doctest::Approx(0.25));
}

TEST_CASE("parameter JSON round trip") {
    std::mt19937_64 rng(711);
    const auto p = lfa_test::random_generic_parameters(3, rng);
    const lfa::json j = lfa::params_to_json(p);
    const auto q = lfa::params_from_json(j);
    REQUIRE(q.m() == 3);
    CHECK(cdist(p.a, q.a) == 0.0);
    for (int i = 0; i < 3; ++i) {
        CHECK(cdist(p.b[i], q.b[i]) == 0.0);
        CHECK(cdist(p.c[i], q.c[i]) == 0.0);
    }
}

TEST_CASE("parameter JSON rejects malformed input") {
    CHECK_THROWS_AS(lfa::params_from_json(lfa::json::parse(R"({"a":[0.5,0]})")),
                    lfa::config_error);
    CHECK_THROWS_AS(
        lfa::params_from_json(lfa::json::parse(R"({"a":[0.5,0],"b":[[0.3,0]],"c":[]})")),
        lfa::config_error);
    CHECK_THROWS_AS(
        lfa::params_from_json(lfa::json::parse(R"({"a":"x","b":[[0.3,0]],"c":[[0.9,0]]})")),
        lfa::config_error);
}
