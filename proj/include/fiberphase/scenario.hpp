#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "fiberphase/config.hpp"

namespace fiberphase {

// Exit codes shared by run_scenario and the CLI.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;   // unreadable or invalid configuration
inline constexpr int kExitPhysics = 3;  // a physics cross-check failed
inline constexpr int kExitResource = 4; // resource limit hit

struct ScenarioOutcome {
    int exit_code = kExitOk;
    std::vector<std::string> failures;      // which invariant failed, one line each
    std::vector<std::string> written_files; // relative to the output directory
};

// End-to-end pipeline: geometry -> phase kernel -> closed-form and Fock-route
// phase reports (cross-checked) -> optional evolution oracle -> optional
// gyrotropic media filter -> report files under out_dir. Data files carry no
// timestamps or machine state, so identical configs give identical bytes.
ScenarioOutcome run_scenario(const ScenarioConfig& cfg,
                             const std::filesystem::path& out_dir);

// Plot-ready CSV curves: kernel vs theta, kernel accumulation vs turns,
// and the regime-sweep map when configured.
ScenarioOutcome emit_plot_data(const ScenarioConfig& cfg,
                               const std::filesystem::path& out_dir);

} // namespace fiberphase
