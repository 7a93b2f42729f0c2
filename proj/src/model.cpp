#include "hydrion/model.hpp"

#include "hydrion/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace hydrion {

ModelParams::ModelParams(double gamma, double energy, double mass, double screening_length)
    : gamma_(gamma), energy_(energy), mass_(mass), screening_length_(screening_length) {
    if (!(gamma > 0.0) || !std::isfinite(gamma)) {
        throw InvalidParameter("gamma must be positive and finite, got " + std::to_string(gamma));
    }
    if (!std::isfinite(energy)) {
        throw InvalidParameter("energy must be finite");
    }
    if (mass != 1.0 || screening_length != 1.0) {
        throw InvalidParameter("mass and screening length are fixed to 1");
    }
}

void validate(const PruferState& state) {
    if (!(std::abs(state.z) <= half_pi + 1e-15) || !std::isfinite(state.theta)) {
        throw InvalidParameter("Pruefer state outside [-pi/2, pi/2] x R");
    }
}

std::string_view to_string(EquilibriumKind kind) {
    switch (kind) {
        case EquilibriumKind::S_minus: return "S-";
        case EquilibriumKind::S_plus: return "S+";
        case EquilibriumKind::N_minus: return "N-";
        case EquilibriumKind::N_plus: return "N+";
        case EquilibriumKind::C_minus: return "C-";
        case EquilibriumKind::C_plus: return "C+";
        case EquilibriumKind::D_minus: return "D-";
        case EquilibriumKind::D_plus: return "D+";
    }
    return "?";
}

double screened_coupling(double s, const ModelParams& params) {
    return 0.5 * params.gamma() * std::exp(-std::abs(s));
}

double theta_rhs(const PruferState& state, const ModelParams& params) {
    double potential = 0.0;
    if (std::abs(state.z) < half_pi - boundary_epsilon) {
        potential = params.gamma() * std::exp(-std::abs(std::tan(state.z)));
    }
    return 2.0 * std::cos(state.theta) - potential - 2.0 * params.energy();
}

double z_rhs(const PruferState& state) {
    if (std::abs(state.z) >= half_pi - boundary_epsilon) {
        return 0.0;
    }
    const double c = std::cos(state.z);
    return c * c;
}

std::vector<EquilibriumPoint> equilibria(double energy) {
    if (std::abs(energy) > 1.0) {
        throw NoEquilibria("no equilibrium points for |E| > 1");
    }
    if (energy == 1.0) {
        return {{EquilibriumKind::D_minus, {-half_pi, 0.0}, 0.0},
                {EquilibriumKind::D_plus, {half_pi, 0.0}, 0.0}};
    }
    if (energy == -1.0) {
        return {{EquilibriumKind::C_minus, {-half_pi, pi}, 0.0},
                {EquilibriumKind::C_plus, {half_pi, pi}, 0.0}};
    }
    const double a = std::acos(energy);
    const double rate = 2.0 * std::sqrt(1.0 - energy * energy);
    return {{EquilibriumKind::S_minus, {-half_pi, a}, -rate},
            {EquilibriumKind::S_plus, {half_pi, -a}, -rate},
            {EquilibriumKind::N_minus, {-half_pi, -a}, rate},
            {EquilibriumKind::N_plus, {half_pi, a}, rate}};
}

WindingNumber winding_number(double theta_at_minus_inf, double theta_at_plus_inf) {
    const double turns = (theta_at_minus_inf - theta_at_plus_inf) / two_pi;
    // absorb round-off when the difference is an exact multiple of 2pi
    const double slack = 8.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(turns));
    return {static_cast<int>(std::floor(turns + slack))};
}

double saddle_target(double energy, int winding) {
    return two_pi - std::acos(energy) - two_pi * winding;
}

double symmetric_start(int winding) { return pi * (2 - winding); }

}  // namespace hydrion
