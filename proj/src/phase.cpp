#include "fiberphase/phase.hpp"

#include <cmath>
#include <limits>

#include "fiberphase/parallel.hpp"

namespace fiberphase {

namespace {

// integrand g(t) = phi_dot * (1 - cos theta) at every sample
std::vector<double> kernel_integrand(const AngularTrajectory& traj, bool parallel) {
    const std::size_t n = traj.samples.size();
    std::vector<double> t(n), phi(n);
    for (std::size_t i = 0; i < n; ++i) {
        t[i] = traj.samples[i].t;
        phi[i] = traj.samples[i].phi;
    }
    std::vector<double> g = stencil_derivative(t, phi);
    if (parallel) {
        parallel_for_index(n,
                           [&](std::size_t i) { g[i] *= 1.0 - std::cos(traj.samples[i].theta); });
    } else {
        for (std::size_t i = 0; i < n; ++i) g[i] *= 1.0 - std::cos(traj.samples[i].theta);
    }
    return g;
}

} // namespace

PhaseKernel phase_kernel(const AngularTrajectory& traj) {
    traj.validate();
    const std::size_t n = traj.samples.size();
    const std::vector<double> g = kernel_integrand(traj, true);
    const double value = chunked_sum(n - 1, [&](std::size_t i) {
        return 0.5 * (traj.samples[i + 1].t - traj.samples[i].t) * (g[i] + g[i + 1]);
    });
    PhaseKernel k;
    k.value_rad = value;
    if (traj.closed) k.cyclic_solid_angle_sr = value;
    return k;
}

PhaseKernel phase_kernel_serial(const AngularTrajectory& traj) {
    traj.validate();
    const std::size_t n = traj.samples.size();
    const std::vector<double> g = kernel_integrand(traj, false);
    double value = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i)
        value += 0.5 * (traj.samples[i + 1].t - traj.samples[i].t) * (g[i] + g[i + 1]);
    PhaseKernel k;
    k.value_rad = value;
    if (traj.closed) k.cyclic_solid_angle_sr = value;
    return k;
}

std::vector<double> phase_kernel_cumulative(const AngularTrajectory& traj) {
    traj.validate();
    const std::size_t n = traj.samples.size();
    const std::vector<double> g = kernel_integrand(traj, true);
    std::vector<double> cum(n, 0.0);
    for (std::size_t i = 1; i < n; ++i)
        cum[i] = cum[i - 1] +
                 0.5 * (traj.samples[i].t - traj.samples[i - 1].t) * (g[i - 1] + g[i]);
    return cum;
}

PhaseReport mode_resolved_phases(const PhaseKernel& kernel, int n_right, int n_left) {
    if (n_right < 0 || n_left < 0)
        throw config_error("mode occupations must be nonnegative");
    const double k = kernel.value_rad;

    PhaseReport rep;
    rep.kernel = kernel;
    rep.right.sigma = +1;
    rep.right.occupation = n_right;
    rep.right.quantal_rad = static_cast<double>(n_right) * k;
    rep.right.vacuum_rad = 0.5 * k;
    rep.right.total_rad = rep.right.quantal_rad + rep.right.vacuum_rad;
    rep.left.sigma = -1;
    rep.left.occupation = n_left;
    rep.left.quantal_rad = -(static_cast<double>(n_left) * k);
    rep.left.vacuum_rad = -(0.5 * k);
    rep.left.total_rad = rep.left.quantal_rad + rep.left.vacuum_rad;
    rep.multiphoton_rad = static_cast<double>(n_right - n_left) * k;
    // identical magnitudes with opposite signs: the sum is exactly zero
    rep.vacuum_sum_rad = rep.right.vacuum_rad + rep.left.vacuum_rad;
    return rep;
}

std::vector<RefineLevel> quadrature_refine(
    const std::function<AngularTrajectory(int samples_per_unit)>& sampler,
    int base_samples_per_unit, int levels) {
    if (levels < 1) throw config_error("quadrature_refine: levels must be >= 1");
    if (base_samples_per_unit < 2)
        throw config_error("quadrature_refine: base sample density must be >= 2");

    std::vector<RefineLevel> out;
    out.reserve(static_cast<std::size_t>(levels));
    int density = base_samples_per_unit;
    for (int l = 0; l < levels; ++l, density *= 2) {
        RefineLevel lv;
        lv.kernel = phase_kernel(sampler(density));
        lv.error_estimate =
            l == 0 ? std::numeric_limits<double>::quiet_NaN()
                   : std::abs(lv.kernel.value_rad - out.back().kernel.value_rad) / 3.0;
        out.push_back(lv);
    }
    return out;
}

namespace {

// midpoint insertion: the piecewise-linear (theta, phi) path is preserved
AngularTrajectory refine_midpoints(const AngularTrajectory& traj) {
    AngularTrajectory out;
    out.closed = traj.closed;
    out.pole_touched = traj.pole_touched;
    out.samples.reserve(traj.samples.size() * 2 - 1);
    for (std::size_t i = 0; i + 1 < traj.samples.size(); ++i) {
        const AngularSample& a = traj.samples[i];
        const AngularSample& b = traj.samples[i + 1];
        out.samples.push_back(a);
        out.samples.push_back({0.5 * (a.t + b.t), 0.5 * (a.theta + b.theta),
                               0.5 * (a.phi + b.phi)});
    }
    out.samples.push_back(traj.samples.back());
    return out;
}

} // namespace

std::vector<RefineLevel> quadrature_refine(const AngularTrajectory& traj, int levels) {
    if (levels < 1) throw config_error("quadrature_refine: levels must be >= 1");
    traj.validate();

    std::vector<RefineLevel> out;
    out.reserve(static_cast<std::size_t>(levels));
    AngularTrajectory current = traj;
    for (int l = 0; l < levels; ++l) {
        RefineLevel lv;
        lv.kernel = phase_kernel(current);
        lv.error_estimate =
            l == 0 ? std::numeric_limits<double>::quiet_NaN()
                   : std::abs(lv.kernel.value_rad - out.back().kernel.value_rad) / 3.0;
        out.push_back(lv);
        if (l + 1 < levels) current = refine_midpoints(current);
    }
    return out;
}

} // namespace fiberphase
