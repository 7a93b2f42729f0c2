#include "fd_hamiltonian.hpp"
#include "fixtures.hpp"
#include "uv_integrator.hpp"

#include "hydrion/error.hpp"
#include "hydrion/spectrum.hpp"

#include <doctest.h>

#include <cmath>

using namespace hydrion;

namespace {

// Largest |theta_rk4 - theta| over [-S, S], S the truncation point, with the linear
// (u, v) system started from the reconstructed angle at -S.
double pruefer_discrepancy(const BoundState& st, double gamma) {
    const double h = density_grid_step;
    const auto half = static_cast<std::ptrdiff_t>(std::floor(st.truncation_s / h));
    const auto mid = static_cast<std::ptrdiff_t>(st.s_grid.size() / 2);
    const std::size_t i0 = static_cast<std::size_t>(mid - half);
    const auto trace = oracle::integrate_uv(gamma, st.energy, st.s_grid[i0], st.s_grid[mid + half],
                                            st.theta[i0], h);
    double worst = 0.0;
    for (std::size_t k = 0; k < trace.s.size(); ++k) {
        worst = std::max(worst, std::abs(trace.theta[k] - st.theta[i0 + k]));
    }
    return worst;
}

}  // namespace

TEST_CASE("shooting classification brackets the eigenvalue") {
    const auto& t = fixtures::tables8();
    const auto e0 = find_eigenvalue(0.5, 0, 1e-12, t);
    REQUIRE(e0);
    CHECK_FALSE(e0->low_confidence);
    CHECK(shoot(ModelParams(0.5, e0->energy + 0.05), 0).classification == Terminal::Overshoot);
    CHECK(shoot(ModelParams(0.5, e0->energy - 0.05), 0).classification == Terminal::Undershoot);
    CHECK(shoot(ModelParams(0.5, e0->energy + 1e-9), 0).classification == Terminal::Overshoot);
    CHECK(shoot(ModelParams(0.5, e0->energy - 1e-9), 0).classification == Terminal::Undershoot);

    const Shot s = shoot(ModelParams(0.5, 0.3), 0);
    CHECK(s.target == doctest::Approx(saddle_target(0.3, 0)));
    CHECK(s.orbit.first().state.theta == doctest::Approx(symmetric_start(0)));
    REQUIRE(s.orbit.winding);
    CHECK(s.orbit.winding->value == 0);

    CHECK_THROWS_AS(shoot(ModelParams(0.5, 1.0 - 1e-7), 0), EnergyTooCloseToContinuum);
    CHECK_THROWS_AS(shoot(ModelParams(0.5, -1.0 + 1e-7), 0), EnergyTooCloseToContinuum);
    CHECK_NOTHROW(shoot(ModelParams(0.5, 1.0 - continuum_gap), 0));
    CHECK_THROWS_AS(shoot(ModelParams(0.5, 0.0), -1), InvalidParameter);
}

TEST_CASE("find_eigenvalue honours the tables") {
    const auto& t = fixtures::tables8();
    const auto e0 = find_eigenvalue(0.5, 0, 1e-8, t);
    REQUIRE(e0);
    const auto fd = oracle::gap_eigenvalues(0.5);
    REQUIRE(fd.size() == 1);
    CHECK(std::abs(e0->energy - fd[0]) < 1e-6);
    CHECK_FALSE(find_eigenvalue(0.5, 1, 1e-8, t));

    CHECK_FALSE(find_eigenvalue(7.5, 0, 1e-8, t));
    for (int n = 1; n <= 3; ++n) CHECK(find_eigenvalue(7.5, n, 1e-8, t));
    CHECK_FALSE(find_eigenvalue(7.5, 4, 1e-8, t));
    CHECK_THROWS_AS(find_eigenvalue(0.5, 0, 1e-13, t), InvalidParameter);
}

TEST_CASE("eigenvalues agree with the finite-difference hamiltonian") {
    const auto& t = fixtures::tables8();
    for (double gamma : {0.5, 2.0, 5.0, 7.5, 10.0}) {
        CAPTURE(gamma);
        const auto s = enumerate_bound_states(gamma, 1e-8, t, {}, Reconstruction::EnergiesOnly);
        const auto fd = oracle::gap_eigenvalues(gamma);
        REQUIRE(fd.size() == s.states.size());
        for (std::size_t i = 0; i < fd.size(); ++i) {
            CHECK(s.states[i].energy > -1.0);
            CHECK(s.states[i].energy < 1.0);
            CHECK(std::abs(s.states[i].energy - fd[i]) < 1e-5);
            if (i > 0) CHECK(s.states[i].energy > s.states[i - 1].energy);
        }
    }
}

TEST_CASE("bound-state enumeration") {
    const auto& t = fixtures::tables8();
    struct Case {
        double gamma;
        int ground;
        int count;
    };
    for (const Case c : {Case{0.5, 0, 1}, Case{5.0, 0, 3}, Case{7.5, 1, 3}, Case{10.0, 1, 4}}) {
        CAPTURE(c.gamma);
        const auto s = enumerate_bound_states(c.gamma, 1e-8, t, {}, Reconstruction::EnergiesOnly);
        CHECK(s.ground_winding == c.ground);
        CHECK(s.count == c.count);
        REQUIRE(s.states.size() == static_cast<std::size_t>(c.count));
        for (int i = 0; i < c.count; ++i) CHECK(s.states[i].winding.value == c.ground + i);
        const auto p = staircase_point(c.gamma, t);
        CHECK(p.j_index == s.j_index);
        CHECK(p.n_index == s.n_index);
    }
    CHECK_THROWS_AS(enumerate_bound_states(t.gamma(2), 1e-8, t), ThresholdDegenerate);
    CHECK_THROWS_AS(enumerate_bound_states(t.big_gamma(1) + 1e-10, 1e-8, t), ThresholdDegenerate);
    CHECK_THROWS_AS(enumerate_bound_states(-1.0, 1e-8, t), InvalidParameter);
}

TEST_CASE("reconstructed states satisfy their invariants") {
    const auto& t = fixtures::tables8();
    for (double gamma : {0.5, 2.0, 5.0, 7.5, 10.0}) {
        const auto s = enumerate_bound_states(gamma, 1e-8, t);
        for (const auto& st : s.states) {
            CAPTURE(gamma);
            CAPTURE(st.winding.value);
            REQUIRE(st.reconstructed());
            const std::size_t n = st.s_grid.size();
            CHECK(n % 2 == 1);
            CHECK(st.normalization_residual < 1e-6);
            CHECK(count_crests(st.density) == st.winding.value + 1);

            const double theta0 = st.theta[n / 2];
            double sym = 0.0, pointwise = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                sym = std::max(sym, std::abs(st.theta[i] + st.theta[n - 1 - i] - 2.0 * theta0));
                const double uv = st.u_samples[i] * st.u_samples[i] + st.v_samples[i] * st.v_samples[i];
                pointwise = std::max(pointwise, std::abs(uv - st.density[i]));
            }
            CHECK(sym < 1e-6);
            CHECK(pointwise < 1e-10);

            // the density falls to 1e-12 of its peak at the grid ends
            const double peak = *std::max_element(st.density.begin(), st.density.end());
            CHECK(st.density.front() < 1.01e-12 * peak);
            CHECK(st.density.back() < 1.01e-12 * peak);

            // sin(theta) > 0 far left, < 0 far right
            CHECK(std::sin(st.theta.front()) > 0.0);
            CHECK(std::sin(st.theta.back()) < 0.0);

            // the two-sided orbit is point-symmetric about (0, theta(0))
            const auto& o = st.orbit;
            for (double tau : {0.5, 2.0, 5.0}) {
                CHECK(std::abs(o.at(tau).theta + o.at(-tau).theta - 2.0 * theta0) < 1e-6);
                CHECK(std::abs(o.at(tau).z + o.at(-tau).z) < 1e-12);
            }

            CHECK(pruefer_discrepancy(st, gamma) < 1e-5);
        }
    }
}

TEST_CASE("ground state at gamma = 0.5 has one crest at the origin") {
    const auto& t = fixtures::tables8();
    const auto e0 = find_eigenvalue(0.5, 0, 1e-8, t);
    REQUIRE(e0);
    const auto st = bound_state(0.5, 0, *e0);
    const auto peak = std::max_element(st.density.begin(), st.density.end()) - st.density.begin();
    CHECK(std::abs(st.s_grid[static_cast<std::size_t>(peak)]) < 2 * density_grid_step);
    CHECK(count_crests(st.density) == 1);
}

TEST_CASE("reconstruction rejects a grid that misses the tail") {
    const auto& t = fixtures::tables8();
    const auto e0 = find_eigenvalue(0.5, 0, 1e-8, t);
    REQUIRE(e0);
    IntegratorConfig fine;
    fine.max_step = 0.01;
    const ModelParams p(0.5, e0->energy);
    const Shot shot = shoot(p, 0, fine);
    std::vector<double> short_grid;
    for (int i = -1000; i <= 1000; ++i) short_grid.push_back(i * 1e-3);
    CHECK_THROWS_AS(reconstruct_wavefunction(shot.orbit, p, 0, short_grid), NonNormalizable);
    CHECK_THROWS_AS(reconstruct_wavefunction(shot.orbit, p, 0, {0.0, 1.0}), InvalidParameter);
}

TEST_CASE("low-confidence eigenvalues near the continuum") {
    const auto& t = fixtures::tables8();
    // just above gamma_1 the winding-1 state has barely left the upper continuum
    const double g = t.gamma(1) + 1e-6;
    const auto e1 = find_eigenvalue(g, 1, 1e-8, t);
    REQUIRE(e1);
    CHECK(e1->low_confidence);
    CHECK(e1->energy == doctest::Approx(1.0 - continuum_gap));
    const auto st = bound_state(g, 1, *e1);
    CHECK(st.low_confidence);
    CHECK_FALSE(st.reconstructed());
}

TEST_CASE("crest counting") {
    CHECK(count_crests({0.0, 1.0, 0.0}) == 1);
    CHECK(count_crests({0.0, 1.0, 0.5, 2.0, 0.0}) == 2);
    CHECK(count_crests({0.0, 1.0, 1.0, 1.0, 0.0}) == 1);             // flat top
    CHECK(count_crests({0.0, 1.0, 1.0 - 1e-14, 1.0, 0.0}) == 1);     // plateau ripple
    CHECK(count_crests({1.0, 0.5, 0.0}) == 0);
    CHECK(count_crests({}) == 0);
}

TEST_CASE("eigenvalues decrease with the coupling") {
    const auto& t = fixtures::tables8();
    // winding 1 exists for gamma in (gamma_1, Gamma_2) = (1.23, 11.63)
    double previous = 2.0;
    for (int i = 0; i < 10; ++i) {
        const double g = 2.0 + i;
        const auto e = find_eigenvalue(g, 1, 1e-8, t);
        REQUIRE(e);
        CHECK(e->energy < previous);
        previous = e->energy;
    }
}

TEST_CASE("staircase") {
    const auto& t = fixtures::tables8();
    const auto low = staircase(0.01, t.gamma(1) - 0.01, 10, t);
    for (const auto& p : low) {
        CHECK(p.ground_winding == 0);
        CHECK(p.count == 1);
    }
    const auto p75 = staircase_point(7.5, t);
    CHECK(p75.ground_winding == 1);
    CHECK(p75.count == 3);

    // a grid point on a threshold is nudged above it
    const auto on = staircase(t.gamma(2), t.gamma(2) + 1.0, 2, t);
    CHECK(on[0].gamma > t.gamma(2));
    CHECK(on[0].j_index == 3);

    const auto grid = staircase(0.02, 12.0, 600, t);
    CHECK(grid.size() == 600);
    CHECK(grid.back().gamma == 12.0);
    int max_count = 0;
    for (const auto& p : grid) max_count = std::max(max_count, p.count);
    CHECK(max_count == 5);  // on (gamma_5, Gamma_2) = (10.28, 11.63)
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const bool jump = grid[i].count != grid[i - 1].count ||
                          grid[i].ground_winding != grid[i - 1].ground_winding;
        bool entry_between = false;
        for (int k = 1; k <= 8; ++k) {
            for (double x : {t.gamma(k), t.big_gamma(k)}) {
                if (x > grid[i - 1].gamma && x <= grid[i].gamma) entry_between = true;
            }
        }
        CHECK(jump == entry_between);
    }
    CHECK_THROWS_AS(staircase(0.0, 1.0, 10, t), InvalidParameter);
    CHECK_THROWS_AS(staircase(2.0, 1.0, 10, t), InvalidParameter);
    CHECK_THROWS_AS(staircase(1.0, 2.0, 1, t), InvalidParameter);
}
