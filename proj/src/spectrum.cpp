#include "hydrion/spectrum.hpp"

#include "hydrion/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace hydrion {

namespace {

constexpr double threshold_exclusion = 1e-9;
// Step cap used when an orbit is re-shot for reconstruction, so that the Hermite
// interpolant between samples is accurate far below the test tolerances.
constexpr double reconstruction_max_step = 0.01;
// A density that has not dropped below this fraction of its peak at the grid ends is
// not normalizable on that grid.
constexpr double end_density_limit = 1e-6;

Terminal classify(double gamma, double energy, int winding, const IntegratorConfig& config) {
    return shoot(ModelParams(gamma, energy), winding, config).classification;
}

double theta_at(const Orbit& forward, double theta0, double truncation, double s) {
    const double t = std::min(std::abs(s), truncation);
    const double theta = forward.at(t).theta;
    return s >= 0.0 ? theta : 2.0 * theta0 - theta;
}

}  // namespace

Shot shoot(const ModelParams& params, int winding, const IntegratorConfig& config) {
    if (winding < 0) throw InvalidParameter("winding number must be non-negative");
    const double energy = params.energy();
    // the strip edges themselves (up to round-off) are admissible
    if (1.0 - std::abs(energy) < continuum_gap * (1.0 - 1e-9)) {
        throw EnergyTooCloseToContinuum("|E| is within 1e-6 of the continuum edge");
    }
    Shot shot;
    shot.target = saddle_target(energy, winding);
    shot.orbit = integrate(params, {0.0, symmetric_start(winding)}, Direction::Forward, config,
                           shot.target);
    shot.orbit.winding = WindingNumber{winding};
    const double a = std::acos(energy);
    const double margin = std::min(pi / 4, std::min(a, pi - a));
    try {
        shot.classification = classify_terminal(shot.orbit, shot.target, margin);
    } catch (const IndeterminateTerminal&) {
        shot.classification = Terminal::Truncated;
    }
    shot.orbit.terminal = shot.classification;
    return shot;
}

std::optional<Eigenvalue> find_eigenvalue(double gamma, int winding, double tol,
                                          const RootTables& tables,
                                          const IntegratorConfig& config) {
    if (!(tol >= 1e-12)) throw InvalidParameter("tolerance must be at least 1e-12");
    if (winding < 0) throw InvalidParameter("winding number must be non-negative");
    const int j = tables.j_index(gamma);
    const int n = tables.n_index(gamma);
    if (winding < n || winding >= j) return std::nullopt;

    double lo = -1.0 + continuum_gap;
    double hi = 1.0 - continuum_gap;
    const Terminal at_lo = classify(gamma, lo, winding, config);
    const Terminal at_hi = classify(gamma, hi, winding, config);
    if (at_lo == Terminal::Overshoot && at_hi == Terminal::Overshoot) {
        return Eigenvalue{lo, true};
    }
    if (at_lo == Terminal::Undershoot && at_hi == Terminal::Undershoot) {
        return Eigenvalue{hi, true};
    }
    if (at_lo != Terminal::Undershoot || at_hi != Terminal::Overshoot) {
        throw BracketFailure("no (undershoot, overshoot) bracket for winding " +
                             std::to_string(winding) + " at gamma " + std::to_string(gamma));
    }
    while (hi - lo >= 2.0 * tol) {
        const double mid = 0.5 * (lo + hi);
        switch (classify(gamma, mid, winding, config)) {
            case Terminal::Undershoot: lo = mid; break;
            case Terminal::Overshoot: hi = mid; break;
            // the orbit lingered at the saddle for the whole step budget
            case Terminal::Converged:
            case Terminal::Truncated: return Eigenvalue{mid, false};
        }
    }
    return Eigenvalue{0.5 * (lo + hi), false};
}

Orbit reflect_orbit(const Orbit& forward) {
    if (forward.samples.empty() || forward.samples.front().tau != 0.0) {
        throw InvalidParameter("reflection needs a forward orbit starting at tau = 0");
    }
    Orbit out = forward;
    const double theta0 = forward.samples.front().state.theta;
    out.samples.clear();
    out.samples.reserve(2 * forward.samples.size() - 1);
    for (auto it = forward.samples.rbegin(); it != forward.samples.rend() - 1; ++it) {
        out.samples.push_back(
            {-it->tau, {-it->state.z, 2.0 * theta0 - it->state.theta}, it->dz, it->dtheta});
    }
    out.samples.insert(out.samples.end(), forward.samples.begin(), forward.samples.end());
    return out;
}

double truncation_point(const Orbit& forward, double target) {
    double best = std::numeric_limits<double>::infinity();
    double tau = 0.0;
    for (const auto& sample : forward.samples) {
        const double d = std::abs(sample.state.theta - target);
        if (d < best) {
            best = d;
            tau = sample.tau;
        }
    }
    return tau;
}

std::vector<double> default_s_grid(const Orbit& forward, const ModelParams& params, int winding) {
    const double target = saddle_target(params.energy(), winding);
    const double s_star = truncation_point(forward, target);
    const double h = density_grid_step;
    const double log_cut = 0.5 * std::log(density_cutoff);  // in units of log R

    // log R along the forward half up to the truncation point
    double log_r = 0.0;
    double log_r_max = 0.0;
    double prev = std::sin(forward.at(0.0).theta);
    double s = 0.0;
    double extent = -1.0;
    while (s < s_star) {
        const double next = std::min(s + h, s_star);
        const double cur = std::sin(forward.at(next).theta);
        log_r += 0.5 * (next - s) * (prev + cur);
        log_r_max = std::max(log_r_max, log_r);
        prev = cur;
        s = next;
        if (log_r - log_r_max < log_cut) {
            extent = s;
            break;
        }
    }
    if (extent < 0.0) {
        // theta is held at its truncation value, so log R falls linearly
        const double slope = std::sin(forward.at(s_star).theta);
        if (!(slope < 0.0)) {
            throw NonNormalizable("orbit does not decay beyond its truncation point");
        }
        extent = s_star + (log_cut - (log_r - log_r_max)) / slope;
    }
    const auto half = static_cast<std::int64_t>(std::ceil(extent / h));
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(2 * half + 1));
    for (std::int64_t i = -half; i <= half; ++i) grid.push_back(static_cast<double>(i) * h);
    return grid;
}

BoundState reconstruct_wavefunction(const Orbit& forward, const ModelParams& params, int winding,
                                    const std::vector<double>& s_grid) {
    if (s_grid.size() < 3 || !std::is_sorted(s_grid.begin(), s_grid.end())) {
        throw InvalidParameter("reconstruction grid must be sorted with at least 3 points");
    }
    if (forward.direction != Direction::Forward || forward.samples.empty() ||
        forward.samples.front().tau != 0.0) {
        throw InvalidParameter("reconstruction needs a forward orbit starting at tau = 0");
    }
    const double target = saddle_target(params.energy(), winding);
    const double theta0 = forward.samples.front().state.theta;
    const double s_star = truncation_point(forward, target);

    BoundState state;
    state.winding = WindingNumber{winding};
    state.energy = params.energy();
    state.orbit = reflect_orbit(forward);
    state.truncation_s = s_star;
    state.s_grid = s_grid;

    const std::size_t n = s_grid.size();
    state.theta.resize(n);
    for (std::size_t i = 0; i < n; ++i) state.theta[i] = theta_at(forward, theta0, s_star, s_grid[i]);

    // log R by cumulative trapezoid outward from the grid point nearest s = 0
    const auto k0 = static_cast<std::size_t>(
        std::min_element(s_grid.begin(), s_grid.end(),
                         [](double a, double b) { return std::abs(a) < std::abs(b); }) -
        s_grid.begin());
    std::vector<double> log_r(n);
    log_r[k0] = 0.5 * s_grid[k0] * (std::sin(theta0) + std::sin(state.theta[k0]));
    for (std::size_t i = k0 + 1; i < n; ++i) {
        log_r[i] = log_r[i - 1] + 0.5 * (s_grid[i] - s_grid[i - 1]) *
                                      (std::sin(state.theta[i - 1]) + std::sin(state.theta[i]));
    }
    for (std::size_t i = k0; i-- > 0;) {
        log_r[i] = log_r[i + 1] - 0.5 * (s_grid[i + 1] - s_grid[i]) *
                                      (std::sin(state.theta[i + 1]) + std::sin(state.theta[i]));
    }
    const double log_r_max = *std::max_element(log_r.begin(), log_r.end());

    state.density.resize(n);
    for (std::size_t i = 0; i < n; ++i) state.density[i] = std::exp(2.0 * (log_r[i] - log_r_max));
    const double peak = 1.0;
    if (state.density.front() > end_density_limit * peak ||
        state.density.back() > end_density_limit * peak) {
        throw NonNormalizable("density has not decayed at the grid ends");
    }

    auto trapezoid = [&](const std::vector<double>& f) {
        double sum = 0.0;
        for (std::size_t i = 1; i < n; ++i) sum += 0.5 * (s_grid[i] - s_grid[i - 1]) * (f[i] + f[i - 1]);
        return sum;
    };
    const double mass = trapezoid(state.density);
    if (!(mass > 0.0) || !std::isfinite(mass)) {
        throw NonNormalizable("density integral is not finite and positive");
    }
    for (double& rho : state.density) rho /= mass;
    state.normalization_residual = std::abs(trapezoid(state.density) - 1.0);

    state.u_samples.resize(n);
    state.v_samples.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double r = std::sqrt(state.density[i]);
        state.u_samples[i] = r * std::cos(0.5 * state.theta[i]);
        state.v_samples[i] = r * std::sin(0.5 * state.theta[i]);
    }
    return state;
}

BoundState bound_state(double gamma, int winding, const Eigenvalue& eigenvalue,
                       const IntegratorConfig& config) {
    IntegratorConfig fine = config;
    fine.max_step = std::min(config.max_step, reconstruction_max_step);
    const ModelParams params(gamma, eigenvalue.energy);
    const Shot shot = shoot(params, winding, fine);
    if (eigenvalue.low_confidence) {
        BoundState state;
        state.winding = WindingNumber{winding};
        state.energy = eigenvalue.energy;
        state.low_confidence = true;
        state.orbit = reflect_orbit(shot.orbit);
        return state;
    }
    return reconstruct_wavefunction(shot.orbit, params, winding,
                                    default_s_grid(shot.orbit, params, winding));
}

int count_crests(const std::vector<double>& density) {
    if (density.empty()) return 0;
    const double tol = 1e-12 * *std::max_element(density.begin(), density.end());
    int crests = 0;
    int direction = 0;
    for (std::size_t i = 1; i < density.size(); ++i) {
        const double d = density[i] - density[i - 1];
        if (std::abs(d) <= tol) continue;
        const int next = d > 0.0 ? 1 : -1;
        if (direction == 1 && next == -1) ++crests;
        direction = next;
    }
    return crests;
}

StaircasePoint staircase_point(double gamma, const RootTables& tables) {
    StaircasePoint p;
    p.gamma = gamma;
    p.j_index = tables.j_index(gamma);
    p.n_index = tables.n_index(gamma);
    p.ground_winding = p.n_index;
    p.count = p.j_index - p.n_index;
    return p;
}

SpectrumSummary enumerate_bound_states(double gamma, double tol, const RootTables& tables,
                                       const IntegratorConfig& config,
                                       Reconstruction reconstruction) {
    if (!(gamma > 0.0)) throw InvalidParameter("gamma must be positive");
    if (tables.distance_to_threshold(gamma) < threshold_exclusion) {
        throw ThresholdDegenerate("gamma is within 1e-9 of a threshold");
    }
    const StaircasePoint p = staircase_point(gamma, tables);
    SpectrumSummary summary;
    summary.gamma = gamma;
    summary.j_index = p.j_index;
    summary.n_index = p.n_index;
    summary.ground_winding = p.ground_winding;
    summary.count = p.count;
    for (int w = p.n_index; w < p.j_index; ++w) {
        const auto ev = find_eigenvalue(gamma, w, tol, tables, config);
        if (!ev) throw BracketFailure("admitted winding " + std::to_string(w) + " not found");
        if (reconstruction == Reconstruction::Full) {
            summary.states.push_back(bound_state(gamma, w, *ev, config));
        } else {
            BoundState state;
            state.winding = WindingNumber{w};
            state.energy = ev->energy;
            state.low_confidence = ev->low_confidence;
            summary.states.push_back(std::move(state));
        }
    }
    for (std::size_t i = 1; i < summary.states.size(); ++i) {
        if (!(summary.states[i].energy > summary.states[i - 1].energy)) {
            throw OrderingViolation("energies are not strictly increasing in the winding number");
        }
    }
    return summary;
}

std::vector<StaircasePoint> staircase(double gamma_min, double gamma_max, int steps,
                                      const RootTables& tables) {
    if (!(gamma_min > 0.0) || !(gamma_max > gamma_min)) {
        throw InvalidParameter("staircase needs 0 < gamma_min < gamma_max");
    }
    if (steps < 2) throw InvalidParameter("staircase needs at least 2 steps");
    std::vector<StaircasePoint> out;
    out.reserve(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) {
        double g = i + 1 == steps ? gamma_max
                                  : gamma_min + (gamma_max - gamma_min) * i / (steps - 1.0);
        if (tables.distance_to_threshold(g) < threshold_exclusion) g += threshold_exclusion;
        out.push_back(staircase_point(g, tables));
    }
    return out;
}

}  // namespace hydrion
