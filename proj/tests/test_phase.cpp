#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fiberphase/phase.hpp"
#include "helpers.hpp"

using namespace fiberphase;
using testutil::theta_helix_traj;
using testutil::wobble_traj;

namespace {

// independent fine-grid oracle for the kernel integral of an analytic path:
// midpoint rule on exact theta(t), phi_dot(t), compensated summation
template <typename ThetaFn, typename PhiDotFn>
double kernel_oracle(ThetaFn theta, PhiDotFn phi_dot, double t0, double t1, int n = 1 << 21) {
    double acc = 0.0, carry = 0.0;
    const double h = (t1 - t0) / n;
    for (int i = 0; i < n; ++i) {
        const double t = t0 + (i + 0.5) * h;
        const double term = phi_dot(t) * (1.0 - std::cos(theta(t))) * h - carry;
        const double next = acc + term;
        carry = (next - acc) - term;
        acc = next;
    }
    return acc;
}

} // namespace

TEST_CASE("cyclic kernels: solid-angle values for constant-theta helices") {
    CHECK(phase_kernel(theta_helix_traj(M_PI / 2, 512, 1.0)).value_rad ==
          doctest::Approx(2.0 * M_PI).epsilon(1e-10));
    CHECK(phase_kernel(theta_helix_traj(M_PI / 3, 512, 1.0)).value_rad ==
          doctest::Approx(M_PI).epsilon(1e-10));

    // straight fiber
    AngularTrajectory straight;
    for (int i = 0; i <= 64; ++i)
        straight.samples.push_back({static_cast<double>(i) / 64, 0.0, 0.0});
    straight.closed = true;
    CHECK(phase_kernel(straight).value_rad == doctest::Approx(0.0));
}

TEST_CASE("noncyclic kernel: half cycle at theta = pi/4") {
    const double expected = M_PI * (1.0 - std::sqrt(0.5));
    // oracle: fine midpoint quadrature of the exact integrand
    const double oracle = kernel_oracle([](double) { return M_PI / 4; },
                                        [](double) { return 2.0 * M_PI; }, 0.0, 0.5);
    CHECK(oracle == doctest::Approx(expected).epsilon(1e-12));

    const PhaseKernel k = phase_kernel(theta_helix_traj(M_PI / 4, 1024, 0.5));
    CHECK(k.value_rad == doctest::Approx(expected).epsilon(1e-10));
    CHECK_FALSE(k.cyclic_solid_angle_sr.has_value());
}

TEST_CASE("cyclic solid angle populated only for closed trajectories") {
    const PhaseKernel closed = phase_kernel(theta_helix_traj(M_PI / 3, 256, 2.0));
    REQUIRE(closed.cyclic_solid_angle_sr.has_value());
    CHECK(*closed.cyclic_solid_angle_sr == doctest::Approx(2.0 * M_PI).epsilon(1e-10));
    CHECK_FALSE(phase_kernel(theta_helix_traj(M_PI / 3, 256, 1.25))
                    .cyclic_solid_angle_sr.has_value());
}

TEST_CASE("kernel needs at least two samples") {
    AngularTrajectory traj;
    traj.samples = {{0.0, 1.0, 0.0}};
    CHECK_THROWS_AS(phase_kernel(traj), config_error);
}

TEST_CASE("parallel and serial quadratures agree") {
    const AngularTrajectory traj = wobble_traj(20000);
    const double a = phase_kernel(traj).value_rad;
    const double b = phase_kernel_serial(traj).value_rad;
    CHECK(a == doctest::Approx(b).epsilon(1e-13));
}

TEST_CASE("cumulative kernel ends at the total") {
    const AngularTrajectory traj = wobble_traj(4096);
    const std::vector<double> cum = phase_kernel_cumulative(traj);
    CHECK(cum.front() == 0.0);
    CHECK(cum.back() == doctest::Approx(phase_kernel(traj).value_rad).epsilon(1e-13));
}

TEST_CASE("mode-resolved phases: paper substitutions") {
    PhaseKernel k;
    k.value_rad = 2.0 * M_PI;
    const PhaseReport rep = mode_resolved_phases(k, 1, 0);
    CHECK(rep.right.total_rad == doctest::Approx(3.0 * M_PI).epsilon(1e-15));
    CHECK(rep.left.total_rad == doctest::Approx(-M_PI).epsilon(1e-15));
    CHECK(rep.multiphoton_rad == doctest::Approx(2.0 * M_PI).epsilon(1e-15));
    CHECK(rep.vacuum_sum_rad == 0.0);

    PhaseKernel pi_kernel;
    pi_kernel.value_rad = M_PI;
    const PhaseReport vac = mode_resolved_phases(pi_kernel, 0, 0);
    CHECK(vac.right.vacuum_rad == doctest::Approx(M_PI / 2).epsilon(1e-15));
    CHECK(vac.left.vacuum_rad == doctest::Approx(-M_PI / 2).epsilon(1e-15));
}

TEST_CASE("equal occupations cancel the multiphoton phase, not the vacuum pieces") {
    auto gen = testutil::rng(7);
    std::uniform_real_distribution<double> kernel_value(-20.0, 20.0);
    std::uniform_int_distribution<int> occ(0, 9);
    for (int trial = 0; trial < 50; ++trial) {
        PhaseKernel k;
        k.value_rad = kernel_value(gen);
        const int n = occ(gen);
        const PhaseReport rep = mode_resolved_phases(k, n, n);
        CHECK(rep.multiphoton_rad == 0.0);
        CHECK(rep.right.vacuum_rad == 0.5 * k.value_rad);
        CHECK(rep.left.vacuum_rad == -(0.5 * k.value_rad));
        CHECK(rep.vacuum_sum_rad == 0.0); // bit-level cancellation
        // total = quantal + vacuum holds exactly
        CHECK(rep.right.total_rad == rep.right.quantal_rad + rep.right.vacuum_rad);
        CHECK(rep.left.total_rad == rep.left.quantal_rad + rep.left.vacuum_rad);
        // sign antisymmetry at equal occupations
        CHECK(rep.right.total_rad == -rep.left.total_rad);
    }
}

TEST_CASE("negative occupations are rejected") {
    PhaseKernel k;
    k.value_rad = 1.0;
    CHECK_THROWS_AS(mode_resolved_phases(k, -1, 0), config_error);
    CHECK_THROWS_AS(mode_resolved_phases(k, 0, -1), config_error);
}

TEST_CASE("kernel additivity over a time split") {
    const AngularTrajectory whole = theta_helix_traj(M_PI / 3, 1024, 1.0);
    const std::size_t cut = 300;
    AngularTrajectory first, second;
    first.samples.assign(whole.samples.begin(), whole.samples.begin() + cut + 1);
    second.samples.assign(whole.samples.begin() + cut, whole.samples.end());
    const double sum = phase_kernel(first).value_rad + phase_kernel(second).value_rad;
    CHECK(sum == doctest::Approx(phase_kernel(whole).value_rad).epsilon(1e-10));

    // same on a varying-theta path, at quadrature tolerance
    const AngularTrajectory wob = wobble_traj(8192);
    AngularTrajectory w1, w2;
    w1.samples.assign(wob.samples.begin(), wob.samples.begin() + 3000);
    w2.samples.assign(wob.samples.begin() + 2999, wob.samples.end());
    const double wsum = phase_kernel(w1).value_rad + phase_kernel(w2).value_rad;
    CHECK(wsum == doctest::Approx(phase_kernel(wob).value_rad).epsilon(1e-7));
}

TEST_CASE("reparameterization leaves the kernel unchanged") {
    const AngularTrajectory traj = theta_helix_traj(M_PI / 3, 65536, 1.0);
    const AngularTrajectory warped =
        reparameterize(traj, testutil::exp_map(traj.samples.size()));
    CHECK(std::abs(phase_kernel(warped).value_rad - phase_kernel(traj).value_rad) < 1e-9);
}

TEST_CASE("kernel ignores the fiber scale") {
    const HelixSpec spec = testutil::theta_helix(M_PI / 4, 512);
    const double base =
        phase_kernel(sampled_path_to_trajectory(testutil::helix_path(spec, 1.0))).value_rad;
    const double scaled =
        phase_kernel(sampled_path_to_trajectory(testutil::helix_path(spec, 1.0, 137.0)))
            .value_rad;
    CHECK(std::abs(scaled - base) < 1e-9);

    // scaling radius and pitch jointly in the analytic route
    HelixSpec big = spec;
    big.radius_m *= 1e3;
    big.pitch_per_turn_m *= 1e3;
    CHECK(std::abs(phase_kernel(helix_to_trajectory(big, 1.0)).value_rad -
                   phase_kernel(helix_to_trajectory(spec, 1.0)).value_rad) < 1e-9);
}

TEST_CASE("quadrature refinement converges at second order on a generic path") {
    // non-periodic integrand so the trapezoid error term is visible
    auto sampler = [](int density) { return wobble_traj(density, false); };
    const auto levels = quadrature_refine(sampler, 64, 6);
    REQUIRE(levels.size() == 6);
    CHECK(std::isnan(levels[0].error_estimate));
    for (std::size_t l = 2; l < levels.size(); ++l) {
        const double ratio = levels[l - 1].error_estimate / levels[l].error_estimate;
        CHECK(ratio > 3.5);
        CHECK(ratio < 4.5);
    }
    // the fine-grid oracle agrees with the extrapolated value
    const double oracle = kernel_oracle(
        [](double t) { return M_PI / 3.0 + 0.3 * std::sin(0.6 * M_PI * t); },
        [](double t) { return 2.0 * M_PI + 0.8 * t * (2.0 - 1.2 * t); }, 0.0, 1.0);
    CHECK(levels.back().kernel.value_rad == doctest::Approx(oracle).epsilon(1e-7));
}

TEST_CASE("quadrature refinement is exact on helices and constants") {
    auto helix_sampler = [](int density) {
        return theta_helix_traj(M_PI / 3, density, 1.0);
    };
    const auto levels = quadrature_refine(helix_sampler, 64, 3);
    for (std::size_t l = 1; l < levels.size(); ++l) CHECK(levels[l].error_estimate < 1e-12);

    AngularTrajectory constant;
    for (int i = 0; i <= 32; ++i)
        constant.samples.push_back({static_cast<double>(i) / 32, 0.7, 0.3});
    const auto const_levels = quadrature_refine(constant, 3);
    for (const RefineLevel& lv : const_levels)
        CHECK(lv.kernel.value_rad == doctest::Approx(0.0));

    const auto single = quadrature_refine(constant, 1);
    REQUIRE(single.size() == 1);
    CHECK(std::isnan(single[0].error_estimate));

    CHECK_THROWS_AS(quadrature_refine(constant, 0), config_error);
}
