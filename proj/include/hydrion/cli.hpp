#pragma once

#include "hydrion/roots.hpp"

#include <filesystem>
#include <optional>
#include <ostream>

namespace hydrion::cli {

inline constexpr int exit_success = 0;
inline constexpr int exit_invalid_arguments = 2;
inline constexpr int exit_solver_failure = 3;

/// Largest coupling accepted by spectrum, orbit and density (covered by the default tables).
inline constexpr double max_gamma = 50.0;
/// Largest root-table length (its last Gamma stays inside the series domain).
inline constexpr int max_root_count = 50;
/// Table length used for spectra and staircases.
inline constexpr int default_table_count = 20;

enum class Command { Spectrum, Staircase, Roots, Orbit, Density };
enum class OutputFormat { Csv, Json };

struct GammaRange {
    double min = 0.0;
    double max = 0.0;
    int steps = 0;
};

struct RunConfig {
    Command command = Command::Spectrum;
    std::optional<double> gamma;
    std::optional<int> winding;
    double tol = 1e-8;
    std::optional<GammaRange> gamma_range;
    int count = default_table_count;
    int order = default_ikebe_order;
    /// Empty: results go to standard output only.
    std::filesystem::path output_dir;
    /// Defaults per command: json for spectrum, csv otherwise.
    std::optional<OutputFormat> format;
    int threads = 1;
    /// staircase only: also scan E(gamma) for every winding met on the grid.
    bool energies = false;
    /// Root-table cache directory; nullopt disables caching.
    std::optional<std::filesystem::path> cache_dir;
};

/// Throws InvalidParameter naming the first violated requirement.
void validate(const RunConfig& config);

/// ${XDG_CACHE_HOME:-$HOME/.cache}/hydrion, or nullopt when neither variable is set.
std::optional<std::filesystem::path> default_cache_dir();

/// Cached tables when available, otherwise built (Ikebe with bisection cross-check) and
/// stored in the cache.
RootTables load_or_build_tables(int count, int order,
                                const std::optional<std::filesystem::path>& cache_dir);

/// Executes a validated configuration. Diagnostics go to `err`, one line each.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses the command line (CLI11) and runs it.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hydrion::cli
