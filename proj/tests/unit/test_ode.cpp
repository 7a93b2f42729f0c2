#include "hydrion/error.hpp"
#include "hydrion/ode.hpp"

#include <doctest.h>

#include <cmath>

using namespace hydrion;

TEST_CASE("integrator config validation") {
    IntegratorConfig c;
    CHECK_NOTHROW(c.validate());
    c.rel_tol = 0.0;
    CHECK_THROWS_AS(c.validate(), InvalidParameter);
    c = {};
    c.max_steps = 0;
    CHECK_THROWS_AS(c.validate(), InvalidParameter);
    CHECK_THROWS_AS(integrate(ModelParams(1.0, 0.0), {3.0, 0.0}, Direction::Forward, {}),
                    InvalidParameter);
}

TEST_CASE("z component follows arctan exactly") {
    // z' = cos^2 z has the closed form z(tau) = atan(tau + tan z0)
    IntegratorConfig c;
    c.max_step = 0.05;
    const auto fwd = integrate(ModelParams(2.0, 0.1), {0.0, 0.3}, Direction::Forward, c);
    const auto bwd = integrate(ModelParams(2.0, 0.1), {0.0, 0.3}, Direction::Backward, c);
    for (const auto& s : fwd.samples) CHECK(std::abs(s.state.z - std::atan(s.tau)) < 1e-10);
    for (const auto& s : bwd.samples) CHECK(std::abs(s.state.z - std::atan(s.tau)) < 1e-10);
    // between samples: cubic Hermite error h^4 max|z^(4)| / 384 < 1e-7 for h = 0.05
    for (double tau : {0.0, 0.37, 1.0, 4.2, 11.9}) {
        CHECK(std::abs(fwd.at(tau).z - std::atan(tau)) < 1e-7);
        CHECK(std::abs(bwd.at(-tau).z + std::atan(tau)) < 1e-7);
    }
    for (std::size_t i = 1; i < bwd.samples.size(); ++i) {
        CHECK(bwd.samples[i].tau > bwd.samples[i - 1].tau);
    }
    CHECK(bwd.last().tau == 0.0);
    CHECK(&bwd.end_sample() == &bwd.first());
}

TEST_CASE("orbit interpolation is consistent with a finer integration") {
    const ModelParams p(3.0, 0.2);
    IntegratorConfig coarse;
    coarse.max_step = 0.01;
    IntegratorConfig fine = coarse;
    fine.rel_tol = fine.abs_tol = 1e-12;
    fine.max_step = 0.002;
    const auto a = integrate(p, {0.0, pi}, Direction::Forward, coarse);
    const auto b = integrate(p, {0.0, pi}, Direction::Forward, fine);
    for (double tau = 0.0; tau < 8.0; tau += 0.123) {
        CHECK(std::abs(a.at(tau).theta - b.at(tau).theta) < 1e-7);
    }
}

TEST_CASE("orbit settles on an attracting node once the potential is negligible") {
    const ModelParams p(1.0, 0.0);
    const auto o = integrate(p, {0.0, 0.0}, Direction::Forward, {});
    CHECK(o.stop_reason == StopReason::Settled);
    CHECK(o.terminal == Terminal::Converged);
    const double node = std::acos(0.0);
    CHECK(std::abs(std::remainder(o.terminal_theta - node, two_pi)) < 1e-12);
    CHECK(std::abs(o.last().state.theta - o.terminal_theta) < 1e-9);
    CHECK(std::tan(o.last().state.z) > 30.0);

    const auto back = integrate(p, {0.0, 0.0}, Direction::Backward, {});
    CHECK(back.stop_reason == StopReason::Settled);
    CHECK(std::abs(std::remainder(back.terminal_theta + node, two_pi)) < 1e-12);
}

TEST_CASE("boundary start stops immediately") {
    const auto o = integrate(ModelParams(1.0, 0.5), {half_pi, 0.2}, Direction::Forward, {});
    CHECK(o.stop_reason == StopReason::Boundary);
    CHECK(o.samples.size() == 1);
}

TEST_CASE("theta window stops runaway orbits") {
    // a strong well drives theta down by many turns near s = 0
    const auto o = integrate(ModelParams(40.0, 0.9), {0.0, 0.0}, Direction::Forward, {}, 0.0);
    CHECK(o.stop_reason == StopReason::LeftWindow);
    CHECK(o.terminal == Terminal::Overshoot);
    CHECK(o.last().state.theta < -3.0 * pi);

    // a far target below is never reached: the orbit settles above it
    const auto far = integrate(ModelParams(1.0, 0.0), {0.0, 0.0}, Direction::Forward, {}, -40.0);
    CHECK(far.stop_reason == StopReason::Settled);
    CHECK(far.terminal == Terminal::Undershoot);
}

TEST_CASE("step budget and step underflow") {
    IntegratorConfig c;
    c.max_steps = 5;
    const auto o = integrate(ModelParams(1.0, 0.0), {0.0, 0.0}, Direction::Forward, c);
    CHECK(o.stop_reason == StopReason::StepBudget);
    CHECK(o.terminal == Terminal::Truncated);
    CHECK(o.samples.size() == 6);

    IntegratorConfig tight;
    // round-off in the error estimate alone exceeds this tolerance at any step above 1e-14
    tight.rel_tol = 1e-300;
    tight.abs_tol = 1e-300;
    CHECK_THROWS_AS(integrate(ModelParams(1.0, 0.0), {0.0, 0.0}, Direction::Forward, tight),
                    StepSizeUnderflow);
}

namespace {

Orbit fake_orbit(double theta, double dtheta, StopReason reason) {
    Orbit o;
    o.samples.push_back({0.0, {0.0, 0.0}, 1.0, 0.0});
    o.samples.push_back({1.0, {0.5, theta}, 0.5, dtheta});
    o.stop_reason = reason;
    return o;
}

}  // namespace

TEST_CASE("terminal classification against a target") {
    CHECK(classify_terminal(fake_orbit(2.0, 0.0, StopReason::Settled), 0.0) == Terminal::Undershoot);
    CHECK(classify_terminal(fake_orbit(-2.0, 0.0, StopReason::Settled), 0.0) == Terminal::Overshoot);
    CHECK(classify_terminal(fake_orbit(0.1, 0.0, StopReason::Settled), 0.0) == Terminal::Converged);
    CHECK(classify_terminal(fake_orbit(0.1, 1e-12, StopReason::StepBudget), 0.0) ==
          Terminal::Converged);
    CHECK_THROWS_AS(classify_terminal(fake_orbit(0.1, 0.3, StopReason::StepBudget), 0.0),
                    IndeterminateTerminal);
    CHECK(classify_terminal(fake_orbit(0.3, 0.0, StopReason::Settled), 0.0, 0.2) ==
          Terminal::Undershoot);
    CHECK_THROWS_AS(classify_terminal(Orbit{}, 0.0), InvalidParameter);
}
