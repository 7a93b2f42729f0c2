#pragma once

#include "hydrion/roots.hpp"
#include "hydrion/spectrum.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hydrion {

/// printf("%.12g"): the formatting of every number written to data files.
std::string format_number(double x);

/// x rounded to 12 significant digits (the value format_number prints).
double round12(double x);

/// Writes (truncating) a file; throws IoError naming the path.
void write_file(const std::filesystem::path& path, std::string_view content);
/// Throws IoError naming the path.
std::string read_file(const std::filesystem::path& path);

/// Minimal CSV builder: comma separated, header row, LF line endings, %.12g numbers.
class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> header);

    CsvWriter& row(const std::vector<double>& values);
    /// Row of pre-formatted cells (for mixed text/number rows).
    CsvWriter& cells(const std::vector<std::string>& values);
    const std::string& str() const noexcept { return text_; }

private:
    std::size_t columns_;
    std::string text_;
};

// ---------------------------------------------------------------------------
// Root tables
// ---------------------------------------------------------------------------

/// Columns index, kind (critical|zero), gamma_value, big_gamma_value.
std::string root_tables_csv(const RootTables& tables);
/// {count, method, order, entries: [{index, kind, gamma_value, big_gamma_value}]}, 12 digits.
nlohmann::json root_tables_json(const RootTables& tables);

/// Version tag of the on-disk root-table cache.
inline constexpr int root_cache_version = 1;

/// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view bytes);

/// Full-precision cache document with an FNV-1a checksum over its payload.
nlohmann::json root_cache_json(const RootTables& tables);
void save_root_cache(const std::filesystem::path& path, const RootTables& tables);
/// The cached tables if the file exists, parses, has the current version, the requested
/// truncation order, at least `count` entries and a valid checksum; nullopt otherwise.
std::optional<RootTables> load_root_cache(const std::filesystem::path& path, int count, int order);

// ---------------------------------------------------------------------------
// Spectra and bound states
// ---------------------------------------------------------------------------

/// {gamma, ground_winding, count, states: [{winding, energy, low_confidence,
/// density_csv_path}]}, numbers at 12 digits. `density_paths` is empty or has one entry
/// per state.
nlohmann::json spectrum_json(const SpectrumSummary& summary,
                             const std::vector<std::string>& density_paths = {});
/// Inverse of spectrum_json for the fields it carries (no orbits or samples).
SpectrumSummary spectrum_from_json(const nlohmann::json& doc);

/// Columns s, theta, rho, u, v.
std::string density_csv(const BoundState& state);
/// Columns s, z, theta of the two-sided orbit over |s| <= truncation_s.
std::string orbit_csv(const BoundState& state);
/// Columns s, theta.
std::string theta_vs_s_csv(const BoundState& state);
/// Columns s, rho.
std::string rho_vs_s_csv(const BoundState& state);
/// Columns s, u, v (parametric u-v curve).
std::string u_v_csv(const BoundState& state);
/// Columns gamma, ground_winding, count.
std::string staircase_csv(const std::vector<StaircasePoint>& points);
nlohmann::json staircase_json(const std::vector<StaircasePoint>& points);

/// One E(gamma) sample of a fixed winding.
struct EnergySample {
    double gamma = 0.0;
    double energy = 0.0;
    bool low_confidence = false;
};
/// Columns gamma, energy, low_confidence.
std::string energy_curve_csv(const std::vector<EnergySample>& samples);

}  // namespace hydrion
