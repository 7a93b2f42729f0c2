#include "hydrion/cli.hpp"

#include "hydrion/error.hpp"
#include "hydrion/io.hpp"
#include "hydrion/spectrum.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <functional>
#include <map>
#include <string>
#include <thread>
#include <vector>

namespace hydrion::cli {

namespace {

OutputFormat format_of(const RunConfig& config) {
    if (config.format) return *config.format;
    return config.command == Command::Spectrum ? OutputFormat::Json : OutputFormat::Csv;
}

// Runs task(i) for i in [0, n) on at most `threads` workers; rethrows the first failure
// in index order so the reported error does not depend on scheduling.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& task) {
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                task(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const auto workers = static_cast<std::size_t>(std::max(1, threads));
    if (workers == 1 || n < 2) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < std::min(workers, n); ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

void ensure_dir(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory: " + dir.string());
}

std::string suffix(int winding) { return "_w" + std::to_string(winding); }

nlohmann::json columns_json(const std::vector<std::string>& names,
                            const std::vector<const std::vector<double>*>& columns) {
    nlohmann::json doc = nlohmann::json::object();
    for (std::size_t c = 0; c < names.size(); ++c) {
        nlohmann::json col = nlohmann::json::array();
        for (double x : *columns[c]) col.push_back(round12(x));
        doc[names[c]] = std::move(col);
    }
    return doc;
}

std::string density_json_text(const BoundState& state) {
    return columns_json({"s", "theta", "rho", "u", "v"},
                        {&state.s_grid, &state.theta, &state.density, &state.u_samples,
                         &state.v_samples})
               .dump(1) +
           "\n";
}

std::string orbit_json_text(const BoundState& state) {
    std::vector<double> s, z, theta;
    for (const auto& sample : state.orbit.samples) {
        if (std::abs(sample.tau) > state.truncation_s) continue;
        s.push_back(sample.tau);
        z.push_back(sample.state.z);
        theta.push_back(sample.state.theta);
    }
    return columns_json({"s", "z", "theta"}, {&s, &z, &theta}).dump(1) + "\n";
}

BoundState single_state(const RunConfig& config, const RootTables& tables) {
    const double gamma = *config.gamma;
    const int winding = *config.winding;
    if (tables.distance_to_threshold(gamma) < 1e-9) {
        throw ThresholdDegenerate("gamma is within 1e-9 of a threshold");
    }
    const auto ev = find_eigenvalue(gamma, winding, config.tol, tables);
    if (!ev) {
        throw BracketFailure("no bound state with winding " + std::to_string(winding) +
                             " at gamma " + format_number(gamma));
    }
    if (ev->low_confidence) {
        throw NonNormalizable("eigenvalue lies within 1e-6 of the continuum; not reconstructed");
    }
    return bound_state(gamma, winding, *ev);
}

int run_spectrum(const RunConfig& config, const RootTables& tables, std::ostream& out) {
    const auto summary = enumerate_bound_states(*config.gamma, config.tol, tables);
    std::vector<std::string> density_paths;
    if (!config.output_dir.empty()) {
        ensure_dir(config.output_dir);
        for (const auto& state : summary.states) {
            const std::string tag = suffix(state.winding.value);
            if (!state.reconstructed()) {
                density_paths.emplace_back();
                continue;
            }
            density_paths.push_back("density" + tag + ".csv");
            write_file(config.output_dir / density_paths.back(), density_csv(state));
            write_file(config.output_dir / ("theta_vs_s" + tag + ".csv"), theta_vs_s_csv(state));
            write_file(config.output_dir / ("rho_vs_s" + tag + ".csv"), rho_vs_s_csv(state));
            write_file(config.output_dir / ("u_v" + tag + ".csv"), u_v_csv(state));
        }
    }
    std::string text;
    if (format_of(config) == OutputFormat::Json) {
        text = spectrum_json(summary, density_paths).dump(2) + "\n";
    } else {
        CsvWriter csv({"winding", "energy", "low_confidence"});
        for (const auto& s : summary.states) {
            csv.cells({std::to_string(s.winding.value), format_number(s.energy),
                       s.low_confidence ? "1" : "0"});
        }
        text = csv.str();
    }
    if (!config.output_dir.empty()) {
        write_file(config.output_dir /
                       (format_of(config) == OutputFormat::Json ? "spectrum.json" : "spectrum.csv"),
                   text);
    }
    out << text;
    return exit_success;
}

GammaRange range_of(const RunConfig& config) { return *config.gamma_range; }

int run_staircase(const RunConfig& config, const RootTables& tables, std::ostream& out) {
    const GammaRange r = range_of(config);
    const auto points = staircase(r.min, r.max, r.steps, tables);
    const std::string text = format_of(config) == OutputFormat::Json
                                 ? staircase_json(points).dump(2) + "\n"
                                 : staircase_csv(points);
    if (!config.output_dir.empty()) {
        ensure_dir(config.output_dir);
        write_file(config.output_dir /
                       (format_of(config) == OutputFormat::Json ? "staircase.json" : "staircase.csv"),
                   text);
    }
    if (config.energies) {
        std::vector<SpectrumSummary> spectra(points.size());
        parallel_for(points.size(), config.threads, [&](std::size_t i) {
            spectra[i] = enumerate_bound_states(points[i].gamma, config.tol, tables, {},
                                                Reconstruction::EnergiesOnly);
        });
        std::map<int, std::vector<EnergySample>> curves;
        for (const auto& s : spectra) {
            for (const auto& b : s.states) {
                curves[b.winding.value].push_back({s.gamma, b.energy, b.low_confidence});
            }
        }
        if (!config.output_dir.empty()) {
            for (const auto& [w, samples] : curves) {
                write_file(config.output_dir / ("energy_vs_gamma" + suffix(w) + ".csv"),
                           energy_curve_csv(samples));
            }
        }
    }
    out << text;
    return exit_success;
}

int run_roots(const RunConfig& config, std::ostream& out) {
    const auto tables = load_or_build_tables(config.count, config.order, config.cache_dir);
    const bool json = format_of(config) == OutputFormat::Json;
    const std::string text = json ? root_tables_json(tables).dump(2) + "\n" : root_tables_csv(tables);
    if (!config.output_dir.empty()) {
        ensure_dir(config.output_dir);
        write_file(config.output_dir / (json ? "roots.json" : "roots.csv"), text);
    }
    out << text;
    return exit_success;
}

int run_single(const RunConfig& config, const RootTables& tables, std::ostream& out) {
    const auto state = single_state(config, tables);
    const bool json = format_of(config) == OutputFormat::Json;
    const bool orbit = config.command == Command::Orbit;
    const std::string text = orbit ? (json ? orbit_json_text(state) : orbit_csv(state))
                                   : (json ? density_json_text(state) : density_csv(state));
    if (!config.output_dir.empty()) {
        ensure_dir(config.output_dir);
        const std::string stem = (orbit ? "orbit" : "density") + suffix(*config.winding);
        write_file(config.output_dir / (stem + (json ? ".json" : ".csv")), text);
    }
    out << text;
    return exit_success;
}

}  // namespace

void validate(const RunConfig& config) {
    if (!(config.tol >= 1e-12 && config.tol <= 1e-2)) {
        throw InvalidParameter("--tol must lie in [1e-12, 1e-2]");
    }
    if (config.threads < 1) throw InvalidParameter("--threads must be at least 1");
    if (config.order < 20) throw InvalidParameter("--order must be at least 20");
    switch (config.command) {
        case Command::Spectrum:
        case Command::Orbit:
        case Command::Density:
            if (!config.gamma) throw InvalidParameter("--gamma is required");
            if (!(*config.gamma > 0.0) || !(*config.gamma <= max_gamma)) {
                throw InvalidParameter("--gamma must lie in (0, " + format_number(max_gamma) + "]");
            }
            if (config.command != Command::Spectrum) {
                if (!config.winding) throw InvalidParameter("--winding is required");
                if (*config.winding < 0) throw InvalidParameter("--winding must be non-negative");
            }
            break;
        case Command::Staircase: {
            if (!config.gamma_range) throw InvalidParameter("a gamma range is required");
            const GammaRange& r = *config.gamma_range;
            if (!(r.min > 0.0) || !(r.max > r.min) || !(r.max <= max_gamma)) {
                throw InvalidParameter("gamma range must satisfy 0 < min < max <= " +
                                       format_number(max_gamma));
            }
            if (r.steps < 2) throw InvalidParameter("gamma range needs at least 2 steps");
            break;
        }
        case Command::Roots:
            if (config.count < 1 || config.count > max_root_count) {
                throw InvalidParameter("--count must lie in [1, " + std::to_string(max_root_count) +
                                       "]");
            }
            break;
    }
}

std::optional<std::filesystem::path> default_cache_dir() {
    if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) {
        return std::filesystem::path(xdg) / "hydrion";
    }
    if (const char* home = std::getenv("HOME"); home && *home) {
        return std::filesystem::path(home) / ".cache" / "hydrion";
    }
    return std::nullopt;
}

RootTables load_or_build_tables(int count, int order,
                                const std::optional<std::filesystem::path>& cache_dir) {
    std::filesystem::path file;
    if (cache_dir) {
        file = *cache_dir / ("roots_order" + std::to_string(order) + ".json");
        if (auto cached = load_root_cache(file, count, order)) return *cached;
    }
    auto tables = build_root_tables(count, RootMethod::Ikebe, order);
    if (cache_dir) {
        try {
            save_root_cache(file, tables);
        } catch (const IoError&) {
            // an unwritable cache only costs time on the next run
        }
    }
    return tables;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        validate(config);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_invalid_arguments;
    }
    try {
        if (config.command == Command::Roots) return run_roots(config, out);
        const auto tables = load_or_build_tables(default_table_count, config.order, config.cache_dir);
        switch (config.command) {
            case Command::Spectrum: return run_spectrum(config, tables, out);
            case Command::Staircase: return run_staircase(config, tables, out);
            default: return run_single(config, tables, out);
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_solver_failure;
    }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Bound states of the 1D Dirac equation with a screened Coulomb potential"};
    app.require_subcommand(1);

    RunConfig config;
    std::string format;
    std::vector<double> range;
    std::optional<double> gamma_min, gamma_max;
    std::optional<int> steps;
    bool no_cache = false;
    std::string cache_dir;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--tol", config.tol, "Eigenvalue tolerance, in [1e-12, 1e-2]");
        sub->add_option("--output-dir", config.output_dir, "Directory for data files");
        sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--order", config.order, "Ikebe truncation order");
        sub->add_option("--cache-dir", cache_dir, "Root-table cache directory");
        sub->add_flag("--no-cache", no_cache, "Do not read or write the root-table cache");
        sub->add_option("--threads", config.threads, "Worker threads for gamma scans");
    };

    auto* spectrum = app.add_subcommand("spectrum", "All bound states at one gamma");
    auto* stairs = app.add_subcommand("staircase", "Bound-state count versus gamma");
    auto* roots = app.add_subcommand("roots", "Threshold tables gamma_j and Gamma_j");
    auto* orbit = app.add_subcommand("orbit", "Pruefer orbit of one bound state");
    auto* density = app.add_subcommand("density", "Density and spinor of one bound state");
    for (auto* sub : {spectrum, stairs, roots, orbit, density}) common(sub);
    for (auto* sub : {spectrum, orbit, density}) sub->add_option("--gamma", config.gamma, "Coupling");
    for (auto* sub : {orbit, density}) sub->add_option("--winding", config.winding, "Winding number");
    stairs->add_option("--gamma-range", range, "min max steps")->expected(3);
    stairs->add_option("--gamma-min", gamma_min, "Smallest gamma");
    stairs->add_option("--gamma-max", gamma_max, "Largest gamma");
    stairs->add_option("--steps", steps, "Number of grid points");
    stairs->add_flag("--energies", config.energies, "Also write E(gamma) per winding");
    roots->add_option("--count", config.count, "Entries per table");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return exit_success;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return exit_invalid_arguments;
    }

    if (spectrum->parsed()) config.command = Command::Spectrum;
    if (stairs->parsed()) config.command = Command::Staircase;
    if (roots->parsed()) config.command = Command::Roots;
    if (orbit->parsed()) config.command = Command::Orbit;
    if (density->parsed()) config.command = Command::Density;

    if (!format.empty()) config.format = format == "json" ? OutputFormat::Json : OutputFormat::Csv;
    if (!no_cache) {
        config.cache_dir = cache_dir.empty() ? default_cache_dir()
                                             : std::optional<std::filesystem::path>(cache_dir);
    }
    if (config.command == Command::Staircase) {
        if (!range.empty()) {
            const double s = range[2];
            if (s != std::floor(s)) {
                err << "error: gamma range steps must be an integer\n";
                return exit_invalid_arguments;
            }
            config.gamma_range = GammaRange{range[0], range[1], static_cast<int>(s)};
        } else if (gamma_min && gamma_max && steps) {
            config.gamma_range = GammaRange{*gamma_min, *gamma_max, *steps};
        }
    }
    return run(config, out, err);
}

}  // namespace hydrion::cli
