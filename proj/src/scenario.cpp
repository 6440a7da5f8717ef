#include "fiberphase/scenario.hpp"

#include <cmath>
#include <iostream>
#include <string>
#include <vector>

#include "fiberphase/evolution.hpp"
#include "fiberphase/fock.hpp"
#include "fiberphase/io.hpp"
#include "fiberphase/parallel.hpp"

namespace fiberphase {

namespace {

AngularTrajectory build_trajectory(const ScenarioConfig& cfg) {
    if (cfg.geometry_kind == ScenarioConfig::GeometryKind::Helix)
        return helix_to_trajectory(cfg.helix, cfg.helix.turns, cfg.trajectory);
    return sampled_path_to_trajectory(read_sampled_path_file(cfg.path_file), cfg.trajectory);
}

bool close_rel(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

void check(std::vector<std::string>& failures, std::string& log, const std::string& name,
           bool ok, const std::string& detail) {
    log += name + " = " + (ok ? "pass" : "FAIL") + " (" + detail + ")\n";
    if (!ok) failures.push_back(name + ": " + detail);
}

// constant-theta single-cycle trajectory, the analytic helix in angle space
AngularTrajectory constant_theta_cycle(double theta, double cycles, int samples_per_turn) {
    AngularTrajectory traj;
    const auto n = static_cast<std::size_t>(std::ceil(samples_per_turn * cycles)) + 1;
    traj.samples.resize(n);
    const double dt = cycles / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) * dt;
        traj.samples[i] = {t, theta, 2.0 * M_PI * t};
    }
    traj.closed = std::abs(cycles - std::round(cycles)) < 1e-12;
    return traj;
}

} // namespace

ScenarioOutcome run_scenario(const ScenarioConfig& cfg,
                             const std::filesystem::path& out_dir) {
    cfg.validate();
    ScenarioOutcome outcome;
    std::string check_log;
    auto emit = [&](const std::string& name, const std::string& content) {
        atomic_write(out_dir / name, content);
        outcome.written_files.push_back(name);
    };

    const AngularTrajectory traj = build_trajectory(cfg);
    const PhaseKernel kernel = phase_kernel(traj);
    const PhaseReport report = mode_resolved_phases(kernel, cfg.n_right, cfg.n_left);

    emit("phase_report.txt", phase_report_text(report));
    if (cfg.write_csv) emit("phase_report.csv", phase_report_csv(report));

    check(outcome.failures, check_log, "vacuum_sum_zero", report.vacuum_sum_rad == 0.0,
          "vacuum_sum_rad = " + format_double(report.vacuum_sum_rad));

    if (cfg.fock_enabled) {
        const FockSystem sys = FockSystem::build(cfg.resolved_n_max());
        const PhaseReport fock_report =
            phases_from_fock(sys, {cfg.n_right, cfg.n_left}, kernel);

        // the Fock route and the closed-form route must agree field by field
        const double tol = 1e-12;
        bool routes_agree = true;
        for (auto [a, b] : {std::pair{fock_report.right.total_rad, report.right.total_rad},
                            {fock_report.right.quantal_rad, report.right.quantal_rad},
                            {fock_report.right.vacuum_rad, report.right.vacuum_rad},
                            {fock_report.left.total_rad, report.left.total_rad},
                            {fock_report.left.quantal_rad, report.left.quantal_rad},
                            {fock_report.left.vacuum_rad, report.left.vacuum_rad},
                            {fock_report.multiphoton_rad, report.multiphoton_rad}})
            routes_agree = routes_agree && close_rel(a, b, tol);
        check(outcome.failures, check_log, "fock_route_equivalence", routes_agree,
              "multiphoton fock = " + format_double(fock_report.multiphoton_rad) +
                  ", closed-form = " + format_double(report.multiphoton_rad));
        check(outcome.failures, check_log, "fock_vacuum_sum_zero",
              fock_report.vacuum_sum_rad == 0.0,
              "vacuum_sum_rad = " + format_double(fock_report.vacuum_sum_rad));
    }

    if (cfg.oracle_enabled) {
        EvolveOptions opt;
        opt.max_rotation_per_step = cfg.oracle_max_rotation_per_step;
        opt.keep_trace = cfg.write_trace;
        const EvolutionResult plus = evolve(traj, +1, opt);
        const EvolutionResult minus = evolve(traj, -1, opt);

        emit("evolution_plus.txt", evolution_text(plus, +1));
        emit("evolution_minus.txt", evolution_text(minus, -1));
        if (cfg.write_trace) {
            emit("evolution_plus_trace.csv", evolution_trace_csv(plus));
            emit("evolution_minus_trace.csv", evolution_trace_csv(minus));
        }

        check(outcome.failures, check_log, "oracle_norm_preserved",
              plus.norm_drift < 1e-9 && minus.norm_drift < 1e-9,
              "norm drift = " + format_double(std::max(plus.norm_drift, minus.norm_drift)));
        if (traj.closed) {
            check(outcome.failures, check_log, "oracle_kernel_agreement",
                  std::abs(std::abs(plus.geometric_phase_rad) - std::abs(kernel.value_rad)) <=
                      cfg.cross_check_tol_rad,
                  "numeric |phase| = " + format_double(std::abs(plus.geometric_phase_rad)) +
                      ", kernel = " + format_double(kernel.value_rad));
            check(outcome.failures, check_log, "oracle_sign_antisymmetry",
                  std::abs(plus.geometric_phase_rad + minus.geometric_phase_rad) <= 1e-9,
                  "sum of +/- phases = " +
                      format_double(plus.geometric_phase_rad + minus.geometric_phase_rad));
        }
    }

    if (cfg.media_enabled) {
        const FilteredVacuumPhase filtered = surviving_vacuum_phase(
            cfg.media, cfg.media_omega_rad_s, kernel, cfg.cutoff_eps);
        emit("media_classification.txt", classification_text(filtered.modes));
        emit("vacuum_filtered.txt", filtered_vacuum_text(filtered));

        if (filtered.modes.right.verdict == Verdict::Propagating &&
            filtered.modes.left.verdict == Verdict::Propagating) {
            check(outcome.failures, check_log, "media_filter_linearity",
                  filtered.net_rad == report.vacuum_sum_rad,
                  "both modes propagate, net = " + format_double(filtered.net_rad));
        }
    }

    if (cfg.plot_enabled) {
        const ScenarioOutcome plots = emit_plot_data(cfg, out_dir);
        outcome.written_files.insert(outcome.written_files.end(),
                                     plots.written_files.begin(),
                                     plots.written_files.end());
    }

    emit("cross_checks.txt", check_log);
    outcome.exit_code = outcome.failures.empty() ? kExitOk : kExitPhysics;
    return outcome;
}

ScenarioOutcome emit_plot_data(const ScenarioConfig& cfg,
                               const std::filesystem::path& out_dir) {
    cfg.validate();
    ScenarioOutcome outcome;
    if (!cfg.plot_enabled) {
        std::cerr << "emit_plot_data: plot.enabled = false, nothing to write\n";
        return outcome;
    }

    auto emit = [&](const std::string& name, const std::string& content) {
        atomic_write(out_dir / name, content);
        outcome.written_files.push_back(name);
    };

    // kernel and vacuum phases against the helix opening angle, one cycle
    {
        const int npts = cfg.plot_theta_points;
        std::vector<std::string> rows(static_cast<std::size_t>(npts));
        parallel_for_index(rows.size(), [&](std::size_t i) {
            const double theta =
                cfg.plot_theta_max_rad * static_cast<double>(i) / (npts - 1);
            const PhaseKernel k =
                phase_kernel(constant_theta_cycle(theta, 1.0, cfg.helix.samples_per_turn));
            rows[i] = format_double(theta) + "," + format_double(k.value_rad) + "," +
                      format_double(0.5 * k.value_rad) + "," +
                      format_double(-(0.5 * k.value_rad)) + "\n";
        });
        std::string csv = "theta_rad,kernel_rad,vacuum_plus_rad,vacuum_minus_rad\n";
        for (const std::string& r : rows) csv += r;
        emit("phase_vs_theta.csv", csv);
    }

    // kernel accumulation along a multi-turn helix of the configured theta
    {
        const double theta = cfg.geometry_kind == ScenarioConfig::GeometryKind::Helix
                                 ? cfg.helix.tangent_theta()
                                 : M_PI / 3.0;
        const AngularTrajectory traj = constant_theta_cycle(
            theta, static_cast<double>(cfg.plot_turns_max), cfg.helix.samples_per_turn);
        const std::vector<double> cum = phase_kernel_cumulative(traj);
        std::string csv = "turns,kernel_rad\n";
        const std::size_t n = traj.samples.size();
        const int npts = cfg.plot_turns_points;
        for (int j = 0; j < npts; ++j) {
            const std::size_t idx =
                static_cast<std::size_t>(std::llround(static_cast<double>(j) *
                                                      static_cast<double>(n - 1) /
                                                      (npts - 1)));
            csv += format_double(traj.samples[idx].t) + "," + format_double(cum[idx]) + "\n";
        }
        emit("phase_vs_turns.csv", csv);
    }

    if (cfg.sweep_enabled) {
        const std::vector<SweepCell> cells = regime_sweep(cfg.sweep, cfg.cutoff_eps);
        emit("regime_sweep.csv", sweep_csv(cells, cfg.sweep));
    }
    return outcome;
}

} // namespace fiberphase
