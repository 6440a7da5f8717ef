// fiberphase command-line runner: geometry -> phase reports, evolution
// oracle, Fock operator tables, gyrotropic media classification, and the
// full scenario pipeline. See README for config schema and examples.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "fiberphase/evolution.hpp"
#include "fiberphase/io.hpp"
#include "fiberphase/scenario.hpp"

namespace fp = fiberphase;
namespace fs = std::filesystem;

namespace {

struct CommonArgs {
    std::string config_file;
    std::string out_dir;
    bool strict = false;
    bool lax = false;
    int seed = 0; // reserved for randomized property tests
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_file, "scenario config file")->required();
    cmd->add_option("--out", args.out_dir, "output directory (default: output.dir)");
    cmd->add_flag("--strict", args.strict, "reject unknown config keys (default)");
    cmd->add_flag("--lax", args.lax, "ignore unknown config keys");
    cmd->add_option("--seed", args.seed, "reserved for randomized property tests");
}

fp::ScenarioConfig load_config(const CommonArgs& args) {
    const bool strict = !args.lax; // strict is the default; --lax opts out
    return fp::parse_config_file(args.config_file, strict);
}

fs::path resolve_out(const CommonArgs& args, const fp::ScenarioConfig& cfg) {
    return args.out_dir.empty() ? cfg.output_dir : fs::path(args.out_dir);
}

fp::AngularTrajectory trajectory_from(const fp::ScenarioConfig& cfg) {
    if (cfg.geometry_kind == fp::ScenarioConfig::GeometryKind::Helix)
        return fp::helix_to_trajectory(cfg.helix, cfg.helix.turns, cfg.trajectory);
    return fp::sampled_path_to_trajectory(fp::read_sampled_path_file(cfg.path_file),
                                          cfg.trajectory);
}

int run_phase(const CommonArgs& args) {
    const fp::ScenarioConfig cfg = load_config(args);
    const fs::path out = resolve_out(args, cfg);
    const fp::PhaseKernel kernel = fp::phase_kernel(trajectory_from(cfg));
    const fp::PhaseReport report =
        fp::mode_resolved_phases(kernel, cfg.n_right, cfg.n_left);
    fp::atomic_write(out / "phase_report.txt", fp::phase_report_text(report));
    if (cfg.write_csv)
        fp::atomic_write(out / "phase_report.csv", fp::phase_report_csv(report));
    if (cfg.plot_enabled) fp::emit_plot_data(cfg, out);
    std::cerr << "phase: kernel " << fp::format_double(kernel.value_rad) << " rad -> "
              << out.string() << "\n";
    return fp::kExitOk;
}

int run_evolve(const CommonArgs& args) {
    const fp::ScenarioConfig cfg = load_config(args);
    const fs::path out = resolve_out(args, cfg);
    const fp::AngularTrajectory traj = trajectory_from(cfg);
    fp::EvolveOptions opt;
    opt.max_rotation_per_step = cfg.oracle_max_rotation_per_step;
    opt.keep_trace = cfg.write_trace;
    for (int sigma : {+1, -1}) {
        const fp::EvolutionResult res = fp::evolve(traj, sigma, opt);
        const std::string stem = sigma > 0 ? "evolution_plus" : "evolution_minus";
        fp::atomic_write(out / (stem + ".txt"), fp::evolution_text(res, sigma));
        if (cfg.write_trace)
            fp::atomic_write(out / (stem + "_trace.csv"), fp::evolution_trace_csv(res));
        std::cerr << "evolve sigma=" << sigma << ": geometric phase "
                  << fp::format_double(res.geometric_phase_rad) << " rad\n";
    }
    return fp::kExitOk;
}

int run_fock(const CommonArgs& args) {
    const fp::ScenarioConfig cfg = load_config(args);
    const fs::path out = resolve_out(args, cfg);
    const fp::FockSystem sys = fp::FockSystem::build(cfg.resolved_n_max());

    // identity summary: the build already verified these, report the residues
    const fp::Mat s3_lin = sys.s3_linear_product();
    const fp::Mat s3_circ = sys.s3_circular_product();
    const auto [r_nn, l_nn] = sys.s3_parts(fp::Ordering::NonNormal);
    const auto [r_n, l_n] = sys.s3_parts(fp::Ordering::Normal);
    const fp::Mat& s3 = sys.s3_total(fp::Ordering::NonNormal);
    std::string id_text;
    id_text += "schema_version = 1\nrecord = fock_identities\n";
    id_text += "n_max = " + std::to_string(sys.n_max()) + "\n";
    id_text += "dim = " + std::to_string(sys.dim()) + "\n";
    id_text += "max_abs_linear_minus_circular = " +
               fp::format_double((s3_lin - s3_circ).cwiseAbs().maxCoeff()) + "\n";
    id_text += "max_abs_s3_antihermitian = " +
               fp::format_double((s3 - s3.adjoint()).cwiseAbs().maxCoeff()) + "\n";
    id_text += "max_abs_commutator_number_r = " +
               fp::format_double(
                   (s3 * sys.number_right() - sys.number_right() * s3).cwiseAbs().maxCoeff()) +
               "\n";
    id_text += "max_abs_ordering_gap_minus_half = " +
               fp::format_double(
                   (fp::Mat(r_nn - r_n) - 0.5 * fp::Mat::Identity(sys.dim(), sys.dim()))
                       .cwiseAbs()
                       .maxCoeff()) +
               "\n";
    fp::atomic_write(out / "fock_identities.txt", id_text);

    fp::atomic_write(out / "s3_total.csv", fp::operator_csv(s3));
    fp::atomic_write(out / "s3_right_nonnormal.csv", fp::operator_csv(r_nn));
    fp::atomic_write(out / "s3_left_nonnormal.csv", fp::operator_csv(l_nn));
    fp::atomic_write(out / "a_right.csv", fp::operator_csv(sys.a_right()));
    fp::atomic_write(out / "a_left.csv", fp::operator_csv(sys.a_left()));

    std::string table = "n_r,n_l,s3_total,s3_r_nonnormal,s3_l_nonnormal,s3_r_normal,"
                        "s3_l_normal\n";
    for (int nr = 0; nr <= sys.n_max(); ++nr) {
        for (int nl = 0; nl <= sys.n_max(); ++nl) {
            const fp::CVec v = sys.basis_vector({nr, nl});
            table += std::to_string(nr) + "," + std::to_string(nl) + "," +
                     fp::format_double(fp::expectation_real(s3, v)) + "," +
                     fp::format_double(fp::expectation_real(r_nn, v)) + "," +
                     fp::format_double(fp::expectation_real(l_nn, v)) + "," +
                     fp::format_double(fp::expectation_real(r_n, v)) + "," +
                     fp::format_double(fp::expectation_real(l_n, v)) + "\n";
        }
    }
    fp::atomic_write(out / "expectations.csv", table);
    std::cerr << "fock: n_max " << sys.n_max() << ", dim " << sys.dim() << " -> "
              << out.string() << "\n";
    return fp::kExitOk;
}

int run_media(const CommonArgs& args) {
    const fp::ScenarioConfig cfg = load_config(args);
    const fs::path out = resolve_out(args, cfg);
    if (!cfg.media_enabled && !cfg.sweep_enabled)
        throw fp::config_error("media: enable media.enabled and/or sweep.enabled");
    if (cfg.media_enabled) {
        const fp::PhaseKernel kernel = fp::phase_kernel(trajectory_from(cfg));
        const fp::FilteredVacuumPhase filtered = fp::surviving_vacuum_phase(
            cfg.media, cfg.media_omega_rad_s, kernel, cfg.cutoff_eps);
        fp::atomic_write(out / "media_classification.txt",
                         fp::classification_text(filtered.modes));
        fp::atomic_write(out / "vacuum_filtered.txt", fp::filtered_vacuum_text(filtered));
        std::cerr << "media: net observable vacuum phase "
                  << fp::format_double(filtered.net_rad) << " rad\n";
    }
    if (cfg.sweep_enabled) {
        const auto cells = fp::regime_sweep(cfg.sweep, cfg.cutoff_eps);
        fp::atomic_write(out / "regime_sweep.csv", fp::sweep_csv(cells, cfg.sweep));
        std::cerr << "media: sweep of " << cells.size() << " cells written\n";
    }
    return fp::kExitOk;
}

int run_scenario_cmd(const CommonArgs& args) {
    const fp::ScenarioConfig cfg = load_config(args);
    const fs::path out = resolve_out(args, cfg);
    const fp::ScenarioOutcome outcome = fp::run_scenario(cfg, out);
    for (const std::string& f : outcome.failures)
        std::cerr << "cross-check failed: " << f << "\n";
    std::cerr << "scenario: " << outcome.written_files.size() << " files -> "
              << out.string() << (outcome.exit_code == 0 ? "" : " (FAILED)") << "\n";
    return outcome.exit_code;
}

template <typename Fn>
int guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const fp::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return fp::kExitConfig;
    } catch (const fp::resource_error& e) {
        std::cerr << "resource error: " << e.what() << "\n";
        return fp::kExitResource;
    } catch (const fp::numerics_error& e) {
        std::cerr << "numerics error: " << e.what() << "\n";
        return fp::kExitPhysics;
    } catch (const fp::domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return fp::kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"geometric phases of polarized photons in curved fibers"};
    app.require_subcommand(1);

    CommonArgs phase_args, evolve_args, fock_args, media_args, scenario_args;
    CLI::App* phase = app.add_subcommand("phase", "geometry -> phase kernel and report");
    add_common(phase, phase_args);
    CLI::App* evolve = app.add_subcommand("evolve", "first-quantized evolution oracle");
    add_common(evolve, evolve_args);
    CLI::App* fock = app.add_subcommand("fock", "operator tables and identity residues");
    add_common(fock, fock_args);
    CLI::App* media = app.add_subcommand("media", "gyrotropic classification and sweep");
    add_common(media, media_args);
    CLI::App* scenario = app.add_subcommand("scenario", "full pipeline with cross-checks");
    add_common(scenario, scenario_args);

    CLI11_PARSE(app, argc, argv);

    if (phase->parsed()) return guarded([&] { return run_phase(phase_args); });
    if (evolve->parsed()) return guarded([&] { return run_evolve(evolve_args); });
    if (fock->parsed()) return guarded([&] { return run_fock(fock_args); });
    if (media->parsed()) return guarded([&] { return run_media(media_args); });
    if (scenario->parsed()) return guarded([&] { return run_scenario_cmd(scenario_args); });
    return 1;
}
