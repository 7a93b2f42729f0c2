#pragma once

#include "hydrion/model.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace hydrion {

enum class Direction { Forward, Backward };

struct IntegratorConfig {
    double rel_tol = 1e-10;
    double abs_tol = 1e-10;
    double max_step = 0.5;
    std::int64_t max_steps = 2'000'000;

    void validate() const;
};

/// One accepted step of the flow, with the vector field at that point so the orbit
/// can be interpolated (cubic Hermite) between samples.
struct OrbitSample {
    double tau = 0.0;
    PruferState state;
    double dz = 0.0;
    double dtheta = 0.0;
};

enum class Terminal { Converged, Overshoot, Undershoot, Truncated };

enum class StopReason {
    Boundary,    // z reached the cylinder edge
    LeftWindow,  // theta left [target - 3pi, max(target, theta(0)) + 3pi]
    Settled,     // parked on an attracting equilibrium, potential negligible
    StepBudget,  // max_steps accepted steps
};

struct Orbit {
    /// Strictly increasing in tau regardless of the integration direction.
    std::vector<OrbitSample> samples;
    Direction direction = Direction::Forward;
    StopReason stop_reason = StopReason::StepBudget;
    Terminal terminal = Terminal::Truncated;
    /// Target for Converged; the node the orbit settled on otherwise (or its last theta).
    double terminal_theta = 0.0;
    std::optional<double> theta_target;
    std::optional<WindingNumber> winding;

    const OrbitSample& first() const { return samples.front(); }
    const OrbitSample& last() const { return samples.back(); }
    /// The sample where integration stopped (last for Forward, first for Backward).
    const OrbitSample& end_sample() const {
        return direction == Direction::Forward ? samples.back() : samples.front();
    }
    double tau_min() const { return samples.front().tau; }
    double tau_max() const { return samples.back().tau; }

    /// Hermite interpolation; clamps to the sampled range.
    PruferState at(double tau) const;
};

/// Embedded Dormand-Prince 5(4) integration of (z, theta) from `initial` at tau = 0.
///
/// Stops when z is within boundary_epsilon of +-pi/2, when theta leaves
/// [target - 3pi, max(target, theta(0)) + 3pi] (only if a target is given), when the orbit has settled
/// on an attracting equilibrium with the potential below round-off, or after
/// config.max_steps steps. Throws StepSizeUnderflow if the controller needs a step
/// below 1e-14.
Orbit integrate(const ModelParams& params, const PruferState& initial, Direction direction,
                const IntegratorConfig& config, std::optional<double> theta_target = std::nullopt);

/// Compares the end of the orbit against a saddle target.
///
/// Undershoot: final theta above target + margin. Overshoot: below target - margin.
/// Converged: within margin and not still moving. Throws IndeterminateTerminal when the
/// orbit was cut by the step budget while within margin and still moving.
Terminal classify_terminal(const Orbit& orbit, double theta_target, double margin = pi / 4);

}  // namespace hydrion
