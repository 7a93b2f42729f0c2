#include "hydrion/error.hpp"
#include "hydrion/model.hpp"

#include <doctest.h>

#include <cfenv>
#include <cmath>

using namespace hydrion;

TEST_CASE("model params reject unphysical knobs") {
    CHECK_THROWS_AS(ModelParams(0.0, 0.5), InvalidParameter);
    CHECK_THROWS_AS(ModelParams(-1.0, 0.5), InvalidParameter);
    CHECK_THROWS_AS(ModelParams(1.0, std::nan("")), InvalidParameter);
    CHECK_THROWS_AS(ModelParams(1.0, 0.5, 2.0), InvalidParameter);
    CHECK_THROWS_AS(ModelParams(1.0, 0.5, 1.0, 0.5), InvalidParameter);
    const ModelParams p(2.0, 0.3);
    CHECK(p.with_energy(-0.4).energy() == -0.4);
    CHECK(p.with_energy(-0.4).gamma() == 2.0);
}

TEST_CASE("screened coupling") {
    CHECK(screened_coupling(0.0, ModelParams(2.0, 0.0)) == doctest::Approx(1.0));
    CHECK(screened_coupling(0.0, ModelParams(0.5, 0.0)) == doctest::Approx(0.25));
    const ModelParams p(3.0, 0.0);
    for (double s : {0.1, 1.0, 7.5}) {
        CHECK(screened_coupling(s, p) == screened_coupling(-s, p));
        CHECK(screened_coupling(s, p) > 0.0);
        CHECK(screened_coupling(s, p) < screened_coupling(0.5 * s, p));
    }
    CHECK(screened_coupling(800.0, p) == 0.0);
}

TEST_CASE("theta right-hand side") {
    CHECK(theta_rhs({0.0, half_pi}, ModelParams(2.0, 0.0)) == doctest::Approx(-2.0));
    // the potential drops out on the boundary
    CHECK(theta_rhs({half_pi, 0.0}, ModelParams(5.0, 1.0)) == doctest::Approx(0.0));
    for (double e : {-0.9, 0.0, 0.7}) {
        CHECK(std::abs(theta_rhs({half_pi, std::acos(e)}, ModelParams(3.0, e))) < 1e-14);
        CHECK(std::abs(theta_rhs({-half_pi, -std::acos(e)}, ModelParams(3.0, e))) < 1e-14);
    }
    std::feclearexcept(FE_ALL_EXCEPT);
    const double at_edge = theta_rhs({half_pi, 1.0}, ModelParams(1.0, 0.0));
    CHECK(std::isfinite(at_edge));
    CHECK_FALSE(std::fetestexcept(FE_INVALID | FE_DIVBYZERO));
}

TEST_CASE("z right-hand side") {
    CHECK(z_rhs({0.0, 0.0}) == 1.0);
    CHECK(z_rhs({half_pi, 0.0}) == 0.0);
    CHECK(z_rhs({-half_pi, 3.0}) == 0.0);
    CHECK(z_rhs({0.3, 0.0}) == doctest::Approx(std::cos(0.3) * std::cos(0.3)));
    CHECK_THROWS_AS(validate(PruferState{2.0, 0.0}), InvalidParameter);
}

TEST_CASE("equilibria inside the gap") {
    const double e = 0.3;
    const auto eq = equilibria(e);
    REQUIRE(eq.size() == 4);
    const double rate = 2.0 * std::sqrt(1.0 - e * e);
    for (const auto& p : eq) {
        CHECK(std::abs(std::abs(p.location.z) - half_pi) < 1e-15);
        CHECK(std::abs(std::cos(p.location.theta) - e) < 1e-14);
        const bool saddle = p.kind == EquilibriumKind::S_minus || p.kind == EquilibriumKind::S_plus;
        CHECK(p.tangential_eigenvalue == doctest::Approx(saddle ? -rate : rate));
    }
    CHECK(to_string(eq[0].kind) == "S-");
}

TEST_CASE("degenerate and missing equilibria") {
    for (double e : {-1.0, 1.0}) {
        const auto eq = equilibria(e);
        REQUIRE(eq.size() == 2);
        for (const auto& p : eq) {
            CHECK(p.tangential_eigenvalue == 0.0);
            CHECK(std::cos(p.location.theta) == doctest::Approx(e));
        }
    }
    CHECK_THROWS_AS(equilibria(1.2), NoEquilibria);
    CHECK_THROWS_AS(equilibria(-1.0001), NoEquilibria);
}

TEST_CASE("winding numbers and symmetric shooting data") {
    CHECK(winding_number(pi, -pi).value == 1);
    CHECK(winding_number(0.5, 0.0).value == 0);
    CHECK(winding_number(0.0, 0.5).value == -1);
    // connectors of winding n: theta(-inf) = 2 theta(0) - theta(+inf)
    for (int n = 0; n < 6; ++n) {
        const double e = 0.4;
        const double target = saddle_target(e, n);
        CHECK(target == doctest::Approx(two_pi - std::acos(e) - two_pi * n));
        const double start = symmetric_start(n);
        CHECK(start == doctest::Approx(pi * (2 - n)));
        CHECK(winding_number(2 * start - target, target).value == n);
    }
}
