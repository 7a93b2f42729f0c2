#pragma once

#include <compare>
#include <numbers>
#include <string_view>
#include <vector>

namespace hydrion {

inline constexpr double pi = std::numbers::pi;
inline constexpr double half_pi = std::numbers::pi / 2;
inline constexpr double two_pi = 2 * std::numbers::pi;

/// Distance from z = +-pi/2 below which the potential term is replaced by its limit 0.
inline constexpr double boundary_epsilon = 1e-12;

/// Physical knobs of the screened one-electron problem in units m = c = hbar = 1.
///
/// The potential is e*phi(s) = (gamma/2) exp(-|s|). Mass and screening length are
/// carried for completeness but the dimensionless equations only hold when both are 1.
class ModelParams {
public:
    ModelParams(double gamma, double energy, double mass = 1.0, double screening_length = 1.0);

    double gamma() const noexcept { return gamma_; }
    double energy() const noexcept { return energy_; }
    double mass() const noexcept { return mass_; }
    double screening_length() const noexcept { return screening_length_; }

    /// Same coupling, different trial energy.
    ModelParams with_energy(double energy) const { return ModelParams(gamma_, energy); }

private:
    double gamma_;
    double energy_;
    double mass_;
    double screening_length_;
};

/// Point of the compactified flow: z = arctan(s), theta is the doubled Pruefer angle,
/// kept unwrapped.
struct PruferState {
    double z = 0.0;
    double theta = 0.0;
};

void validate(const PruferState& state);

enum class EquilibriumKind { S_minus, S_plus, N_minus, N_plus, C_minus, C_plus, D_minus, D_plus };

std::string_view to_string(EquilibriumKind kind);

struct EquilibriumPoint {
    EquilibriumKind kind;
    PruferState location;
    /// Nonzero Jacobian eigenvalue (d/dtheta of the theta equation); 0 when degenerate.
    double tangential_eigenvalue = 0.0;
};

struct WindingNumber {
    int value = 0;
    auto operator<=>(const WindingNumber&) const = default;
};

/// e*phi(s) = (gamma/2) exp(-|s|).
double screened_coupling(double s, const ModelParams& params);

/// G_E(z, theta) = 2 cos(theta) - gamma exp(-|tan z|) - 2E, with the potential term
/// taken as 0 on the cylinder boundary.
double theta_rhs(const PruferState& state, const ModelParams& params);

/// F(z) = cos^2 z, exactly 0 on the boundary.
double z_rhs(const PruferState& state);

/// Equilibria of the flow in the fundamental domain.
/// Throws NoEquilibria for |E| > 1.
std::vector<EquilibriumPoint> equilibria(double energy);

/// floor((theta(-inf) - theta(+inf)) / 2pi).
WindingNumber winding_number(double theta_at_minus_inf, double theta_at_plus_inf);

/// theta(+inf) of the saddle S+ copy reached by a connector of winding n:
/// 2pi - acos(E) - 2pi n.
double saddle_target(double energy, int winding);

/// theta(0) of a connector of winding n, by reflection symmetry: pi (2 - n).
double symmetric_start(int winding);

}  // namespace hydrion
