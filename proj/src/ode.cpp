#include "hydrion/ode.hpp"

#include "hydrion/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace hydrion {

void IntegratorConfig::validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0) || !(max_step > 0.0) || max_steps <= 0) {
        throw InvalidParameter("integrator tolerances, max_step and max_steps must be positive");
    }
}

PruferState Orbit::at(double tau) const {
    if (samples.empty()) {
        throw InvalidParameter("empty orbit");
    }
    if (tau <= samples.front().tau) return samples.front().state;
    if (tau >= samples.back().tau) return samples.back().state;
    auto hi = std::upper_bound(samples.begin(), samples.end(), tau,
                               [](double t, const OrbitSample& s) { return t < s.tau; });
    const OrbitSample& b = *hi;
    const OrbitSample& a = *(hi - 1);
    const double h = b.tau - a.tau;
    const double t = (tau - a.tau) / h;
    const double t2 = t * t;
    const double t3 = t2 * t;
    const double h00 = 2 * t3 - 3 * t2 + 1;
    const double h10 = t3 - 2 * t2 + t;
    const double h01 = -2 * t3 + 3 * t2;
    const double h11 = t3 - t2;
    return {h00 * a.state.z + h10 * h * a.dz + h01 * b.state.z + h11 * h * b.dz,
            h00 * a.state.theta + h10 * h * a.dtheta + h01 * b.state.theta + h11 * h * b.dtheta};
}

namespace {

using Vec2 = std::array<double, 2>;

// Dormand-Prince 5(4) tableau.
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

constexpr double min_step = 1e-14;
constexpr double settle_distance = 1e-9;

struct Field {
    const ModelParams& params;
    double sign;

    Vec2 operator()(const Vec2& y) const {
        const PruferState s{y[0], y[1]};
        return {sign * z_rhs(s), sign * theta_rhs(s, params)};
    }
};

Vec2 axpy(const Vec2& y, double h, std::initializer_list<std::pair<double, const Vec2*>> terms) {
    Vec2 out = y;
    for (const auto& [c, k] : terms) {
        out[0] += h * c * (*k)[0];
        out[1] += h * c * (*k)[1];
    }
    return out;
}

// True when theta sits on an equilibrium that attracts in the integration direction and
// the potential is below round-off relative to the other terms.
bool settled(const Vec2& y, const ModelParams& params, double sign, double& node) {
    const double energy = params.energy();
    if (std::abs(energy) >= 1.0) return false;
    const double s = std::abs(y[0]) < half_pi - boundary_epsilon ? std::abs(std::tan(y[0])) : 1e300;
    if (params.gamma() * std::exp(-s) > 1e-17) return false;
    const double a = std::acos(energy);
    // forward-attracting equilibria have sin(theta) > 0: theta = a + 2pi m;
    // backward-attracting ones are theta = -a + 2pi m.
    const double base = sign > 0 ? a : -a;
    const double m = std::round((y[1] - base) / two_pi);
    node = base + two_pi * m;
    return std::abs(y[1] - node) < settle_distance;
}

}  // namespace

Orbit integrate(const ModelParams& params, const PruferState& initial, Direction direction,
                const IntegratorConfig& config, std::optional<double> theta_target) {
    validate(initial);
    config.validate();

    const double sign = direction == Direction::Forward ? 1.0 : -1.0;
    const Field f{params, sign};

    Orbit orbit;
    orbit.direction = direction;
    orbit.theta_target = theta_target;

    Vec2 y{initial.z, initial.theta};
    Vec2 k1 = f(y);
    double t = 0.0;  // elapsed |tau|
    orbit.samples.push_back({0.0, initial, sign * k1[0], sign * k1[1]});

    double h = std::min(config.max_step, 1e-2);
    double err_old = 1e-4;
    bool last_rejected = false;
    constexpr double beta = 0.04;
    constexpr double alpha = 0.2 - 0.75 * beta;

    // theta window: 3pi beyond the target below, 3pi beyond the start or target above
    const double window_lo = theta_target ? *theta_target - 3.0 * pi : 0.0;
    const double window_hi = theta_target ? std::max(*theta_target, initial.theta) + 3.0 * pi : 0.0;

    auto at_boundary = [&](const Vec2& v) { return sign * v[0] >= half_pi - boundary_epsilon; };

    std::int64_t accepted = 0;
    double settled_node = 0.0;
    bool stopped = false;
    while (!stopped) {
        if (at_boundary(y)) {
            orbit.stop_reason = StopReason::Boundary;
            break;
        }
        if (accepted >= config.max_steps) {
            orbit.stop_reason = StopReason::StepBudget;
            break;
        }

        const Vec2 k2 = f(axpy(y, h, {{a21, &k1}}));
        const Vec2 k3 = f(axpy(y, h, {{a31, &k1}, {a32, &k2}}));
        const Vec2 k4 = f(axpy(y, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
        const Vec2 k5 = f(axpy(y, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
        const Vec2 k6 = f(axpy(y, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
        const Vec2 y_new = axpy(y, h, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
        const Vec2 k7 = f(y_new);

        double err = 0.0;
        for (int i = 0; i < 2; ++i) {
            const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                                  e7 * k7[i]);
            const double scale =
                config.abs_tol + config.rel_tol * std::max(std::abs(y[i]), std::abs(y_new[i]));
            err += (e / scale) * (e / scale);
        }
        err = std::sqrt(err / 2.0);

        if (err <= 1.0) {
            t += h;
            y = y_new;
            k1 = k7;
            ++accepted;
            orbit.samples.push_back({sign * t, {y[0], y[1]}, sign * k1[0], sign * k1[1]});

            double factor = 0.9 * std::pow(std::max(err, 1e-10), -alpha) * std::pow(err_old, beta);
            factor = std::clamp(factor, 0.2, 5.0);
            if (last_rejected) factor = std::min(factor, 1.0);
            h = std::min(h * factor, config.max_step);
            err_old = std::max(err, 1e-4);
            last_rejected = false;

            if (theta_target && (y[1] < window_lo || y[1] > window_hi)) {
                orbit.stop_reason = StopReason::LeftWindow;
                stopped = true;
            } else if (settled(y, params, sign, settled_node)) {
                orbit.stop_reason = StopReason::Settled;
                stopped = true;
            }
        } else {
            h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
            last_rejected = true;
        }
        if (h < min_step) {
            throw StepSizeUnderflow("step size fell below 1e-14");
        }
    }

    if (direction == Direction::Backward) {
        std::reverse(orbit.samples.begin(), orbit.samples.end());
    }

    orbit.terminal_theta = orbit.stop_reason == StopReason::Settled ? settled_node : y[1];
    if (theta_target) {
        const double margin = pi / 4;
        try {
            orbit.terminal = classify_terminal(orbit, *theta_target, margin);
            if (orbit.terminal == Terminal::Converged) orbit.terminal_theta = *theta_target;
        } catch (const IndeterminateTerminal&) {
            orbit.terminal = Terminal::Truncated;
        }
    } else {
        orbit.terminal = orbit.stop_reason == StopReason::StepBudget ? Terminal::Truncated
                                                                     : Terminal::Converged;
    }
    return orbit;
}

Terminal classify_terminal(const Orbit& orbit, double theta_target, double margin) {
    if (orbit.samples.empty()) {
        throw InvalidParameter("cannot classify an empty orbit");
    }
    const OrbitSample& end = orbit.end_sample();
    const double theta = end.state.theta;
    if (theta > theta_target + margin) return Terminal::Undershoot;
    if (theta < theta_target - margin) return Terminal::Overshoot;
    const bool still_moving = std::abs(end.dtheta) > 1e-8;
    if (orbit.stop_reason == StopReason::StepBudget && still_moving) {
        throw IndeterminateTerminal("orbit truncated near its target while still moving");
    }
    return Terminal::Converged;
}

}  // namespace hydrion
