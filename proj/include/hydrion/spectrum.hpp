#pragma once

#include "hydrion/ode.hpp"
#include "hydrion/roots.hpp"

#include <optional>
#include <vector>

namespace hydrion {

/// Half-width of the excluded strips next to E = -1 and E = +1.
inline constexpr double continuum_gap = 1e-6;
/// Spacing of the reconstruction grid in s.
inline constexpr double density_grid_step = 1e-3;
/// The reconstruction grid extends until the density falls below this fraction of its peak.
inline constexpr double density_cutoff = 1e-12;

struct Shot {
    Orbit orbit;
    Terminal classification = Terminal::Truncated;
    double target = 0.0;
};

/// Integrates forward from (0, pi (2 - N)) and classifies the end of the orbit against
/// the saddle target 2pi - acos(E) - 2pi N. The classification margin is half the gap
/// between the two neighbouring nodes, capped at pi/4.
/// Throws EnergyTooCloseToContinuum if 1 - |E| < 1e-6.
Shot shoot(const ModelParams& params, int winding, const IntegratorConfig& config = {});

struct Eigenvalue {
    double energy = 0.0;
    /// The eigenvalue lies inside the excluded strip next to E = +-1; `energy` is the
    /// strip edge and was not refined.
    bool low_confidence = false;
};

/// Binary search on (-1 + 1e-6, 1 - 1e-6) keeping an (Undershoot, Overshoot) bracket
/// until its width is below 2 tol. Returns nullopt when the tables exclude the winding
/// at this gamma. Throws BracketFailure when the end classifications are reversed or
/// cannot be established.
std::optional<Eigenvalue> find_eigenvalue(double gamma, int winding, double tol,
                                          const RootTables& tables,
                                          const IntegratorConfig& config = {});

struct BoundState {
    WindingNumber winding;
    double energy = 0.0;
    bool low_confidence = false;
    /// Two-sided orbit, synthesized by reflection from the forward half.
    Orbit orbit;
    std::vector<double> s_grid;
    std::vector<double> theta;
    std::vector<double> density;
    std::vector<double> u_samples;
    std::vector<double> v_samples;
    /// |trapezoidal integral of the density - 1|.
    double normalization_residual = 0.0;
    /// Where the forward orbit came closest to its target; theta is held beyond it.
    double truncation_s = 0.0;

    bool reconstructed() const noexcept { return !s_grid.empty(); }
};

/// Two-sided orbit from a forward orbit starting at tau = 0, using
/// theta(-s) = 2 theta(0) - theta(s) and z(-s) = -z(s).
Orbit reflect_orbit(const Orbit& forward);

/// Smallest forward tau where |theta - target| is minimal.
double truncation_point(const Orbit& forward, double target);

/// Symmetric grid with spacing density_grid_step on [-S, S], with S from the decay
/// of the density beyond the truncation point.
std::vector<double> default_s_grid(const Orbit& forward, const ModelParams& params, int winding);

/// R from the cumulative trapezoidal integral of sin(theta), normalised so that the
/// integral of R^2 over s_grid is 1; u = R cos(theta/2), v = R sin(theta/2).
/// `forward` is the converged forward orbit for (params, winding).
/// Throws NonNormalizable if the density does not decay towards the grid ends.
BoundState reconstruct_wavefunction(const Orbit& forward, const ModelParams& params, int winding,
                                    const std::vector<double>& s_grid);

/// Re-shoots at the eigenvalue with a fine step and reconstructs on the default grid.
BoundState bound_state(double gamma, int winding, const Eigenvalue& eigenvalue,
                       const IntegratorConfig& config = {});

/// Strict local maxima, with runs of values equal within 1e-12 of the peak treated as one.
int count_crests(const std::vector<double>& density);

struct SpectrumSummary {
    double gamma = 0.0;
    int j_index = 0;
    int n_index = 0;
    int ground_winding = 0;
    int count = 0;
    std::vector<BoundState> states;
};

enum class Reconstruction { Full, EnergiesOnly };

/// All bound states at gamma: windings n_index .. j_index - 1.
/// Throws ThresholdDegenerate within 1e-9 of a table entry and OrderingViolation if
/// the energies are not strictly increasing.
SpectrumSummary enumerate_bound_states(double gamma, double tol, const RootTables& tables,
                                       const IntegratorConfig& config = {},
                                       Reconstruction reconstruction = Reconstruction::Full);

struct StaircasePoint {
    double gamma = 0.0;
    int j_index = 0;
    int n_index = 0;
    int ground_winding = 0;
    int count = 0;
};

/// Table-only (n, j, j - n) on a uniform grid of `steps` points over [gamma_min, gamma_max].
/// Points within 1e-9 of a table entry are moved up by 1e-9.
std::vector<StaircasePoint> staircase(double gamma_min, double gamma_max, int steps,
                                      const RootTables& tables);

/// (n, j, j - n) at a single gamma.
StaircasePoint staircase_point(double gamma, const RootTables& tables);

}  // namespace hydrion
