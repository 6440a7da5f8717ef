#include "fiberphase/config.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "fiberphase/fock.hpp"

namespace fiberphase {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return {};
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

struct RawConfig {
    std::map<std::string, std::string> values;
    std::string origin;

    bool has(const std::string& key) const { return values.count(key) != 0; }

    double number(const std::string& key, double fallback) const {
        auto it = values.find(key);
        if (it == values.end()) return fallback;
        try {
            std::size_t pos = 0;
            const double v = std::stod(it->second, &pos);
            if (trim(it->second.substr(pos)) != "") throw std::invalid_argument("");
            return v;
        } catch (const std::exception&) {
            throw config_error(origin + ": key '" + key + "': not a number: '" +
                               it->second + "'");
        }
    }

    int integer(const std::string& key, int fallback) const {
        auto it = values.find(key);
        if (it == values.end()) return fallback;
        try {
            std::size_t pos = 0;
            const long v = std::stol(it->second, &pos, 10);
            if (trim(it->second.substr(pos)) != "") throw std::invalid_argument("");
            return static_cast<int>(v);
        } catch (const std::exception&) {
            throw config_error(origin + ": key '" + key + "': not an integer: '" +
                               it->second + "'");
        }
    }

    bool boolean(const std::string& key, bool fallback) const {
        auto it = values.find(key);
        if (it == values.end()) return fallback;
        if (it->second == "true") return true;
        if (it->second == "false") return false;
        throw config_error(origin + ": key '" + key + "': expected true or false, got '" +
                           it->second + "'");
    }

    std::string text(const std::string& key, const std::string& fallback) const {
        auto it = values.find(key);
        return it == values.end() ? fallback : it->second;
    }
};

// Every key the scenario schema knows. Anything else is rejected in strict
// mode; this list is mirrored in the README.
const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys = {
        "schema_version",
        "geometry.kind",
        "geometry.helix.radius_m",
        "geometry.helix.pitch_m",
        "geometry.helix.turns",
        "geometry.helix.samples_per_turn",
        "geometry.file.path",
        "occupation.n_right",
        "occupation.n_left",
        "fock.enabled",
        "fock.n_max",
        "oracle.enabled",
        "oracle.max_rotation_per_step_rad",
        "media.enabled",
        "media.eps1",
        "media.eps2",
        "media.eps3",
        "media.mu1",
        "media.mu2",
        "media.mu3",
        "media.omega_rad_s",
        "sweep.enabled",
        "sweep.eps1_min",
        "sweep.eps1_max",
        "sweep.eps1_count",
        "sweep.eps2_min",
        "sweep.eps2_max",
        "sweep.eps2_count",
        "sweep.mu1",
        "sweep.mu2",
        "tolerance.closure_rad",
        "tolerance.pole_rad",
        "tolerance.cutoff_eps",
        "tolerance.cross_check_rad",
        "plot.enabled",
        "plot.theta_points",
        "plot.theta_max_rad",
        "plot.turns_max",
        "plot.turns_points",
        "output.dir",
        "output.write_csv",
        "output.write_trace",
    };
    return keys;
}

RawConfig read_raw(std::istream& in, bool strict, const std::string& origin) {
    RawConfig raw;
    raw.origin = origin;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        const std::string where = origin + ":" + std::to_string(lineno);
        if (eq == std::string::npos)
            throw config_error(where + ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw config_error(where + ": empty key");
        if (value.empty()) throw config_error(where + ": empty value for key '" + key + "'");
        if (raw.values.count(key))
            throw config_error(where + ": duplicate key '" + key + "'");
        if (!known_keys().count(key)) {
            if (strict)
                throw config_error(where + ": unknown key '" + key +
                                   "' (strict mode; see README for the schema)");
            continue; // lax mode: ignore
        }
        raw.values[key] = value;
    }
    return raw;
}

} // namespace

int ScenarioConfig::resolved_n_max() const {
    if (fock_n_max) return *fock_n_max;
    return std::max({n_right, n_left, 0}) + 1;
}

void ScenarioConfig::validate() const {
    if (schema_version != 1)
        throw config_error("config: unsupported schema_version " +
                           std::to_string(schema_version));
    if (geometry_kind == GeometryKind::Helix) {
        helix.validate();
    } else {
        if (path_file.empty()) throw config_error("config: geometry.file.path is required");
    }
    if (n_right < 0 || n_left < 0)
        throw config_error("config: occupation.n_right/n_left must be nonnegative");
    if (fock_enabled) {
        const int nm = resolved_n_max();
        if (nm < 1) throw config_error("config: fock.n_max must be >= 1");
        if (n_right > nm || n_left > nm)
            throw config_error("config: occupation exceeds fock.n_max (" +
                               std::to_string(nm) + ")");
    }
    if (!(oracle_max_rotation_per_step > 0.0))
        throw config_error("config: oracle.max_rotation_per_step_rad must be positive");
    if (media_enabled && !(media_omega_rad_s > 0.0))
        throw config_error("config: media.omega_rad_s must be positive when media.enabled");
    if (sweep_enabled && (sweep.eps1_count < 1 || sweep.eps2_count < 1))
        throw config_error("config: sweep counts must be >= 1");
    if (!(trajectory.closure_tol_rad > 0.0) || !(trajectory.pole_tol_rad > 0.0))
        throw config_error("config: tolerance.closure_rad/pole_rad must be positive");
    if (!(cutoff_eps >= 0.0)) throw config_error("config: tolerance.cutoff_eps must be >= 0");
    if (!(cross_check_tol_rad > 0.0))
        throw config_error("config: tolerance.cross_check_rad must be positive");
    if (plot_enabled) {
        if (plot_theta_points < 2 || plot_turns_points < 2)
            throw config_error("config: plot point counts must be >= 2");
        if (!(plot_theta_max_rad > 0.0) || plot_theta_max_rad > M_PI)
            throw config_error("config: plot.theta_max_rad must be in (0, pi]");
        if (plot_turns_max < 1) throw config_error("config: plot.turns_max must be >= 1");
    }
}

ScenarioConfig parse_config(std::istream& in, bool strict, const std::string& origin) {
    const RawConfig raw = read_raw(in, strict, origin);
    ScenarioConfig cfg;

    cfg.schema_version = raw.integer("schema_version", 1);

    const std::string kind = raw.text("geometry.kind", "helix");
    if (kind == "helix") {
        cfg.geometry_kind = ScenarioConfig::GeometryKind::Helix;
        if (raw.has("geometry.file.path"))
            throw config_error(origin +
                               ": geometry.file.path set but geometry.kind = helix "
                               "(exactly one geometry source)");
    } else if (kind == "file") {
        cfg.geometry_kind = ScenarioConfig::GeometryKind::File;
        for (const char* k :
             {"geometry.helix.radius_m", "geometry.helix.pitch_m", "geometry.helix.turns",
              "geometry.helix.samples_per_turn"}) {
            if (raw.has(k))
                throw config_error(origin + ": " + k +
                                   " set but geometry.kind = file (exactly one geometry "
                                   "source)");
        }
    } else {
        throw config_error(origin + ": geometry.kind must be 'helix' or 'file', got '" +
                           kind + "'");
    }

    cfg.helix.radius_m = raw.number("geometry.helix.radius_m", 1.0);
    cfg.helix.pitch_per_turn_m = raw.number("geometry.helix.pitch_m", 0.0);
    cfg.helix.turns = raw.number("geometry.helix.turns", 1.0);
    cfg.helix.samples_per_turn = raw.integer("geometry.helix.samples_per_turn", 512);
    cfg.path_file = raw.text("geometry.file.path", "");

    cfg.n_right = raw.integer("occupation.n_right", 0);
    cfg.n_left = raw.integer("occupation.n_left", 0);
    cfg.fock_enabled = raw.boolean("fock.enabled", true);
    if (raw.has("fock.n_max")) cfg.fock_n_max = raw.integer("fock.n_max", 0);

    cfg.oracle_enabled = raw.boolean("oracle.enabled", false);
    cfg.oracle_max_rotation_per_step =
        raw.number("oracle.max_rotation_per_step_rad", 0.02);

    cfg.media_enabled = raw.boolean("media.enabled", false);
    cfg.media.eps1 = raw.number("media.eps1", 1.0);
    cfg.media.eps2 = raw.number("media.eps2", 0.0);
    cfg.media.eps3 = raw.number("media.eps3", 1.0);
    cfg.media.mu1 = raw.number("media.mu1", 1.0);
    cfg.media.mu2 = raw.number("media.mu2", 0.0);
    cfg.media.mu3 = raw.number("media.mu3", 1.0);
    cfg.media_omega_rad_s = raw.number("media.omega_rad_s", 0.0);

    cfg.sweep_enabled = raw.boolean("sweep.enabled", false);
    cfg.sweep.eps1_min = raw.number("sweep.eps1_min", -2.0);
    cfg.sweep.eps1_max = raw.number("sweep.eps1_max", 0.0);
    cfg.sweep.eps1_count = raw.integer("sweep.eps1_count", 32);
    cfg.sweep.eps2_min = raw.number("sweep.eps2_min", -3.0);
    cfg.sweep.eps2_max = raw.number("sweep.eps2_max", 3.0);
    cfg.sweep.eps2_count = raw.integer("sweep.eps2_count", 32);
    cfg.sweep.mu1 = raw.number("sweep.mu1", 1.0);
    cfg.sweep.mu2 = raw.number("sweep.mu2", 0.0);

    cfg.trajectory.closure_tol_rad = raw.number("tolerance.closure_rad", 1e-9);
    cfg.trajectory.pole_tol_rad = raw.number("tolerance.pole_rad", 1e-6);
    cfg.cutoff_eps = raw.number("tolerance.cutoff_eps", 1e-12);
    cfg.cross_check_tol_rad = raw.number("tolerance.cross_check_rad", 1e-6);

    cfg.plot_enabled = raw.boolean("plot.enabled", false);
    cfg.plot_theta_points = raw.integer("plot.theta_points", 32);
    cfg.plot_theta_max_rad = raw.number("plot.theta_max_rad", M_PI / 2.0);
    cfg.plot_turns_max = raw.integer("plot.turns_max", 3);
    cfg.plot_turns_points = raw.integer("plot.turns_points", 25);

    cfg.write_csv = raw.boolean("output.write_csv", true);
    cfg.write_trace = raw.boolean("output.write_trace", false);
    cfg.output_dir = raw.text("output.dir", "out");

    cfg.validate();

    if (cfg.fock_enabled && cfg.resolved_n_max() > FockSystem::kMaxTruncation)
        throw resource_error("config: fock.n_max " + std::to_string(cfg.resolved_n_max()) +
                             " exceeds the truncation limit " +
                             std::to_string(FockSystem::kMaxTruncation));
    return cfg;
}

ScenarioConfig parse_config_file(const std::filesystem::path& file, bool strict) {
    std::ifstream in(file);
    if (!in) throw config_error("cannot open config file: " + file.string());
    return parse_config(in, strict, file.string());
}

} // namespace fiberphase
