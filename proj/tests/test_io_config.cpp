#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <sstream>

#include "fiberphase/config.hpp"
#include "fiberphase/io.hpp"
#include "helpers.hpp"

using namespace fiberphase;

TEST_CASE("sampled-path reader: comments, blanks, and records") {
    std::istringstream in("# fiber center line\n"
                          "0.0, 0.0, -1.0, 0.0\n"
                          "\n"
                          "0.5, 1.0, 0.0, 0.1   # inline comment\n"
                          "1.0, 0.0, 1.0, 0.2\n");
    const SampledPath path = read_sampled_path(in);
    REQUIRE(path.points.size() == 3);
    CHECK(path.points[1].t == 0.5);
    CHECK(path.points[1].position.x == 1.0);
    CHECK(path.points[2].position.z == 0.2);
}

TEST_CASE("sampled-path reader rejects malformed input") {
    std::istringstream missing("0,0,0\n1,1,1,1\n2,2,2,2\n");
    CHECK_THROWS_AS(read_sampled_path(missing), config_error);

    std::istringstream extra("0,0,0,0,9\n1,1,1,1\n2,2,2,2\n");
    CHECK_THROWS_AS(read_sampled_path(extra), config_error);

    std::istringstream not_a_number("0,0,0,zero\n1,1,1,1\n2,2,2,2\n");
    CHECK_THROWS_AS(read_sampled_path(not_a_number), config_error);

    std::istringstream nonmono("0,0,0,0\n2,1,1,1\n1,2,2,2\n");
    try {
        read_sampled_path(nonmono, "fiber.csv");
        FAIL("expected config_error");
    } catch (const config_error& e) {
        CHECK(std::string(e.what()).find("fiber.csv:3") != std::string::npos);
        CHECK(std::string(e.what()).find("strictly increasing") != std::string::npos);
    }

    std::istringstream too_short("0,0,0,0\n1,1,1,1\n");
    CHECK_THROWS_AS(read_sampled_path(too_short), config_error);
}

TEST_CASE("path writing and reading round-trips") {
    auto gen = testutil::rng(31);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    SampledPath path;
    double t = 0.0;
    for (int i = 0; i < 40; ++i) {
        t += 0.01 + std::abs(u(gen));
        path.points.push_back({t, {u(gen), u(gen), u(gen)}});
    }
    std::string text;
    for (const PathPoint& p : path.points)
        text += format_double(p.t) + "," + format_double(p.position.x) + "," +
                format_double(p.position.y) + "," + format_double(p.position.z) + "\n";
    std::istringstream in(text);
    const SampledPath back = read_sampled_path(in);
    REQUIRE(back.points.size() == path.points.size());
    for (std::size_t i = 0; i < path.points.size(); ++i) {
        CHECK(back.points[i].t == path.points[i].t);
        CHECK(back.points[i].position.x == path.points[i].position.x);
        CHECK(back.points[i].position.y == path.points[i].position.y);
        CHECK(back.points[i].position.z == path.points[i].position.z);
    }
}

TEST_CASE("atomic_write leaves no temporary behind") {
    testutil::TempDir dir("io");
    const auto file = dir.path() / "sub" / "data.txt";
    atomic_write(file, "payload\n");
    std::ifstream in(file);
    std::string line;
    std::getline(in, line);
    CHECK(line == "payload");
    CHECK_FALSE(std::filesystem::exists(file.string() + ".tmp"));
}

TEST_CASE("report serializations carry the schema header and all fields") {
    PhaseKernel k;
    k.value_rad = M_PI;
    k.cyclic_solid_angle_sr = M_PI;
    const PhaseReport rep = mode_resolved_phases(k, 2, 1);
    const std::string text = phase_report_text(rep);
    CHECK(text.rfind("schema_version = 1\n", 0) == 0);
    for (const char* key :
         {"kernel.value_rad", "kernel.cyclic_solid_angle_sr", "mode.R.phase_total_rad",
          "mode.L.phase_vacuum_rad", "multiphoton_phase_rad", "vacuum_sum_rad"})
        CHECK(text.find(key) != std::string::npos);

    const std::string csv = phase_report_csv(rep);
    CHECK(csv.rfind("sigma,n,quantal,vacuum,total\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3); // header + two modes

    const auto cells = regime_sweep_serial({.eps1_min = -1,
                                            .eps1_max = -1,
                                            .eps1_count = 1,
                                            .eps2_min = 2,
                                            .eps2_max = 2,
                                            .eps2_count = 1,
                                            .mu1 = 1,
                                            .mu2 = 0});
    SweepGrid grid;
    grid.mu1 = 1;
    grid.mu2 = 0;
    const std::string sweep = sweep_csv(cells, grid);
    CHECK(sweep.find("verdict_R") != std::string::npos);
    CHECK(sweep.find("propagating,evanescent") != std::string::npos);
}

TEST_CASE("config parsing: defaults and a full document") {
    std::istringstream minimal("schema_version = 1\n");
    const ScenarioConfig cfg = parse_config(minimal);
    CHECK(cfg.geometry_kind == ScenarioConfig::GeometryKind::Helix);
    CHECK(cfg.helix.samples_per_turn == 512);
    CHECK(cfg.n_right == 0);
    CHECK(cfg.resolved_n_max() == 1);
    CHECK(cfg.trajectory.closure_tol_rad == 1e-9);
    CHECK_FALSE(cfg.oracle_enabled);

    std::istringstream full("schema_version = 1\n"
                            "geometry.kind = helix\n"
                            "geometry.helix.radius_m = 2.5\n"
                            "geometry.helix.pitch_m = 1.0\n"
                            "geometry.helix.turns = 2\n"
                            "geometry.helix.samples_per_turn = 128\n"
                            "occupation.n_right = 2\n"
                            "occupation.n_left = 1\n"
                            "fock.n_max = 5\n"
                            "oracle.enabled = true\n"
                            "media.enabled = true\n"
                            "media.eps1 = -1\n"
                            "media.eps2 = 2\n"
                            "media.omega_rad_s = 1e15\n"
                            "tolerance.closure_rad = 1e-7\n"
                            "plot.enabled = true\n"
                            "output.dir = results\n");
    const ScenarioConfig c2 = parse_config(full);
    CHECK(c2.helix.radius_m == 2.5);
    CHECK(c2.helix.turns == 2.0);
    CHECK(c2.n_right == 2);
    CHECK(c2.resolved_n_max() == 5);
    CHECK(c2.oracle_enabled);
    CHECK(c2.media.eps1 == -1.0);
    CHECK(c2.media_omega_rad_s == 1e15);
    CHECK(c2.trajectory.closure_tol_rad == 1e-7);
    CHECK(c2.plot_enabled);
    CHECK(c2.output_dir == std::filesystem::path("results"));
}

TEST_CASE("config parsing: every field has a rejection path") {
    const std::vector<std::string> bad_docs = {
        "schema_version = 2\n",
        "geometry.kind = sphere\n",
        "geometry.helix.radius_m = 0\n",
        "geometry.helix.radius_m = nonsense\n",
        "geometry.helix.pitch_m = -1\n",
        "geometry.helix.turns = 0\n",
        "geometry.helix.samples_per_turn = 4\n",
        "geometry.kind = file\n", // missing path
        "geometry.kind = file\ngeometry.helix.turns = 2\ngeometry.file.path = p.csv\n",
        "geometry.file.path = p.csv\n", // helix kind with file source
        "occupation.n_right = -1\n",
        "occupation.n_left = -2\n",
        "fock.n_max = 0\n",
        "fock.n_max = 99\n", // beyond the truncation limit
        "occupation.n_right = 6\nfock.n_max = 5\n",
        "fock.enabled = maybe\n",
        "oracle.enabled = 1\n",
        "oracle.max_rotation_per_step_rad = 0\n",
        "media.enabled = true\n", // omega missing
        "media.enabled = true\nmedia.omega_rad_s = -5\n",
        "media.eps1 = 1e\n",
        "sweep.enabled = true\nsweep.eps1_count = 0\n",
        "sweep.eps2_count = 1.5\n",
        "tolerance.closure_rad = 0\n",
        "tolerance.pole_rad = -1e-6\n",
        "tolerance.cutoff_eps = -1\n",
        "tolerance.cross_check_rad = 0\n",
        "plot.enabled = true\nplot.theta_points = 1\n",
        "plot.enabled = true\nplot.theta_max_rad = 4.0\n",
        "plot.enabled = true\nplot.turns_max = 0\n",
        "plot.enabled = true\nplot.turns_points = 1\n",
        "output.write_csv = yes\n",
        "output.write_trace = no\n",
        "schema_version = 1\nschema_version = 1\n", // duplicate key
        "mystery.key = 1\n",                        // unknown key, strict
        "geometry.kind =\n",                        // empty value
        "= 3\n",                                    // empty key
        "geometry.kind helix\n",                    // no equals sign
    };
    for (const std::string& doc : bad_docs) {
        CAPTURE(doc);
        std::istringstream in(doc);
        CHECK_THROWS(parse_config(in));
    }
}

TEST_CASE("unknown keys pass in lax mode only") {
    std::istringstream strict_in("mystery = 1\n");
    CHECK_THROWS_AS(parse_config(strict_in, true), config_error);
    std::istringstream lax_in("mystery = 1\ngeometry.helix.turns = 2\n");
    const ScenarioConfig cfg = parse_config(lax_in, false);
    CHECK(cfg.helix.turns == 2.0);
}

TEST_CASE("config file loading") {
    testutil::TempDir dir("cfg");
    const auto file = dir.path() / "s.cfg";
    atomic_write(file, "schema_version = 1\ngeometry.helix.turns = 3\n");
    CHECK(parse_config_file(file).helix.turns == 3.0);
    CHECK_THROWS_AS(parse_config_file(dir.path() / "absent.cfg"), config_error);
}
