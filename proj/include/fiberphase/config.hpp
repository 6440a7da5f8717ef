#pragma once

#include <filesystem>
#include <istream>
#include <optional>
#include <string>

#include "fiberphase/geometry.hpp"
#include "fiberphase/gyrotropic.hpp"

namespace fiberphase {

// Scenario configuration. File format: `key = value` lines, '#' comments;
// the full key schema lives in config.cpp and the README. Unknown keys are
// rejected unless strict parsing is disabled.
struct ScenarioConfig {
    int schema_version = 1;

    enum class GeometryKind { Helix, File };
    GeometryKind geometry_kind = GeometryKind::Helix;
    HelixSpec helix;
    std::filesystem::path path_file;

    int n_right = 0;
    int n_left = 0;
    bool fock_enabled = true;
    std::optional<int> fock_n_max; // default: max occupation + 1

    bool oracle_enabled = false;
    double oracle_max_rotation_per_step = 0.02;

    bool media_enabled = false;
    GyrotropicTensors media;
    double media_omega_rad_s = 0.0;

    bool sweep_enabled = false;
    SweepGrid sweep;

    TrajectoryOptions trajectory; // closure + pole tolerances
    double cutoff_eps = 1e-12;
    double cross_check_tol_rad = 1e-6;

    bool plot_enabled = false;
    int plot_theta_points = 32;
    double plot_theta_max_rad = M_PI / 2.0;
    int plot_turns_max = 3;
    int plot_turns_points = 25;

    bool write_csv = true;
    bool write_trace = false;
    std::filesystem::path output_dir = "out";

    int resolved_n_max() const;
    void validate() const; // throws config_error with the offending key
};

ScenarioConfig parse_config(std::istream& in, bool strict = true,
                            const std::string& origin = "<stream>");
ScenarioConfig parse_config_file(const std::filesystem::path& file, bool strict = true);

} // namespace fiberphase
