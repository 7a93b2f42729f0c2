#include "hydrion/io.hpp"

#include "hydrion/error.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace hydrion {

namespace {

const char* kind_name(std::size_t zero_based_index) {
    return zero_based_index % 2 == 0 ? "critical" : "zero";
}

nlohmann::json cache_payload(const RootTables& tables) {
    return {{"version", root_cache_version},
            {"order", tables.order},
            {"count", tables.count},
            {"method", std::string(to_string(tables.method))},
            {"gamma_seq", tables.gamma_seq},
            {"big_gamma_seq", tables.big_gamma_seq}};
}

std::string hex64(std::uint64_t x) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
    return buf;
}

}  // namespace

std::string format_number(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

double round12(double x) { return std::strtod(format_number(x).c_str(), nullptr); }

void write_file(const std::filesystem::path& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw IoError("write failed: " + path.string());
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open for reading: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

CsvWriter::CsvWriter(std::vector<std::string> header) : columns_(header.size()) {
    cells(header);
}

CsvWriter& CsvWriter::row(const std::vector<double>& values) {
    std::vector<std::string> c;
    c.reserve(values.size());
    for (double v : values) c.push_back(format_number(v));
    return cells(c);
}

CsvWriter& CsvWriter::cells(const std::vector<std::string>& values) {
    if (values.size() != columns_) throw InvalidParameter("CSV row width differs from header");
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) text_ += ',';
        text_ += values[i];
    }
    text_ += '\n';
    return *this;
}

std::string root_tables_csv(const RootTables& tables) {
    CsvWriter csv({"index", "kind", "gamma_value", "big_gamma_value"});
    for (std::size_t i = 0; i < tables.gamma_seq.size(); ++i) {
        csv.cells({std::to_string(i + 1), kind_name(i), format_number(tables.gamma_seq[i]),
                   format_number(tables.big_gamma_seq[i])});
    }
    return csv.str();
}

nlohmann::json root_tables_json(const RootTables& tables) {
    nlohmann::json entries = nlohmann::json::array();
    for (std::size_t i = 0; i < tables.gamma_seq.size(); ++i) {
        entries.push_back({{"index", i + 1},
                           {"kind", kind_name(i)},
                           {"gamma_value", round12(tables.gamma_seq[i])},
                           {"big_gamma_value", round12(tables.big_gamma_seq[i])}});
    }
    return {{"count", tables.count},
            {"method", std::string(to_string(tables.method))},
            {"order", tables.order},
            {"entries", entries}};
}

std::uint64_t fnv1a(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

nlohmann::json root_cache_json(const RootTables& tables) {
    const nlohmann::json payload = cache_payload(tables);
    return {{"payload", payload}, {"checksum", hex64(fnv1a(payload.dump()))}};
}

void save_root_cache(const std::filesystem::path& path, const RootTables& tables) {
    std::error_code ec;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create cache directory: " + path.parent_path().string());
    write_file(path, root_cache_json(tables).dump(1) + "\n");
}

std::optional<RootTables> load_root_cache(const std::filesystem::path& path, int count, int order) {
    if (!std::filesystem::exists(path)) return std::nullopt;
    try {
        const auto doc = nlohmann::json::parse(read_file(path));
        const auto& payload = doc.at("payload");
        if (doc.at("checksum").get<std::string>() != hex64(fnv1a(payload.dump()))) {
            return std::nullopt;
        }
        if (payload.at("version").get<int>() != root_cache_version) return std::nullopt;
        if (payload.at("order").get<int>() != order) return std::nullopt;
        RootTables t;
        t.order = order;
        t.method = payload.at("method").get<std::string>() == "ikebe" ? RootMethod::Ikebe
                                                                      : RootMethod::Bisection;
        t.gamma_seq = payload.at("gamma_seq").get<std::vector<double>>();
        t.big_gamma_seq = payload.at("big_gamma_seq").get<std::vector<double>>();
        t.count = payload.at("count").get<int>();
        if (t.count < count || t.gamma_seq.size() != static_cast<std::size_t>(t.count) ||
            t.big_gamma_seq.size() != static_cast<std::size_t>(t.count)) {
            return std::nullopt;
        }
        t.gamma_seq.resize(static_cast<std::size_t>(count));
        t.big_gamma_seq.resize(static_cast<std::size_t>(count));
        t.count = count;
        return t;
    } catch (const nlohmann::json::exception&) {
        return std::nullopt;
    } catch (const IoError&) {
        return std::nullopt;
    }
}

nlohmann::json spectrum_json(const SpectrumSummary& summary,
                             const std::vector<std::string>& density_paths) {
    if (!density_paths.empty() && density_paths.size() != summary.states.size()) {
        throw InvalidParameter("one density path per state expected");
    }
    nlohmann::json states = nlohmann::json::array();
    for (std::size_t i = 0; i < summary.states.size(); ++i) {
        const auto& s = summary.states[i];
        states.push_back({{"winding", s.winding.value},
                          {"energy", round12(s.energy)},
                          {"low_confidence", s.low_confidence},
                          {"density_csv_path", density_paths.empty() ? "" : density_paths[i]}});
    }
    return {{"gamma", round12(summary.gamma)},
            {"ground_winding", summary.ground_winding},
            {"count", summary.count},
            {"states", states}};
}

SpectrumSummary spectrum_from_json(const nlohmann::json& doc) {
    try {
        SpectrumSummary s;
        s.gamma = doc.at("gamma").get<double>();
        s.ground_winding = doc.at("ground_winding").get<int>();
        s.n_index = s.ground_winding;
        s.count = doc.at("count").get<int>();
        s.j_index = s.n_index + s.count;
        for (const auto& st : doc.at("states")) {
            BoundState b;
            b.winding = WindingNumber{st.at("winding").get<int>()};
            b.energy = st.at("energy").get<double>();
            b.low_confidence = st.value("low_confidence", false);
            s.states.push_back(std::move(b));
        }
        return s;
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("malformed spectrum document: ") + e.what());
    }
}

std::string density_csv(const BoundState& state) {
    CsvWriter csv({"s", "theta", "rho", "u", "v"});
    for (std::size_t i = 0; i < state.s_grid.size(); ++i) {
        csv.row({state.s_grid[i], state.theta[i], state.density[i], state.u_samples[i],
                 state.v_samples[i]});
    }
    return csv.str();
}

std::string orbit_csv(const BoundState& state) {
    CsvWriter csv({"s", "z", "theta"});
    for (const auto& sample : state.orbit.samples) {
        if (std::abs(sample.tau) > state.truncation_s) continue;
        csv.row({sample.tau, sample.state.z, sample.state.theta});
    }
    return csv.str();
}

std::string theta_vs_s_csv(const BoundState& state) {
    CsvWriter csv({"s", "theta"});
    for (std::size_t i = 0; i < state.s_grid.size(); ++i) csv.row({state.s_grid[i], state.theta[i]});
    return csv.str();
}

std::string rho_vs_s_csv(const BoundState& state) {
    CsvWriter csv({"s", "rho"});
    for (std::size_t i = 0; i < state.s_grid.size(); ++i) {
        csv.row({state.s_grid[i], state.density[i]});
    }
    return csv.str();
}

std::string u_v_csv(const BoundState& state) {
    CsvWriter csv({"s", "u", "v"});
    for (std::size_t i = 0; i < state.s_grid.size(); ++i) {
        csv.row({state.s_grid[i], state.u_samples[i], state.v_samples[i]});
    }
    return csv.str();
}

std::string staircase_csv(const std::vector<StaircasePoint>& points) {
    CsvWriter csv({"gamma", "ground_winding", "count"});
    for (const auto& p : points) {
        csv.cells({format_number(p.gamma), std::to_string(p.ground_winding), std::to_string(p.count)});
    }
    return csv.str();
}

nlohmann::json staircase_json(const std::vector<StaircasePoint>& points) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& p : points) {
        out.push_back({{"gamma", round12(p.gamma)},
                       {"ground_winding", p.ground_winding},
                       {"count", p.count}});
    }
    return {{"points", out}};
}

std::string energy_curve_csv(const std::vector<EnergySample>& samples) {
    CsvWriter csv({"gamma", "energy", "low_confidence"});
    for (const auto& s : samples) {
        csv.cells({format_number(s.gamma), format_number(s.energy), s.low_confidence ? "1" : "0"});
    }
    return csv.str();
}

}  // namespace hydrion
