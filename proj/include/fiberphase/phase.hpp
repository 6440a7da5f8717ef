#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "fiberphase/geometry.hpp"

namespace fiberphase {

// Evaluated geometric-phase integral over a wave-vector trajectory:
//   value = integral of phi_dot * (1 - cos theta) dt
// For a closed path this is the solid angle swept by the wave vector
// (2*pi*(1-cos theta) per cycle of a constant-theta helix).
struct PhaseKernel {
    double value_rad = 0.0;
    std::optional<double> cyclic_solid_angle_sr; // set iff trajectory closed
};

struct ModePhase {
    int sigma = 0;      // +1 right-handed, -1 left-handed
    int occupation = 0; // photon number in the mode
    double quantal_rad = 0.0;
    double vacuum_rad = 0.0;
    double total_rad = 0.0;
};

struct PhaseReport {
    PhaseKernel kernel;
    ModePhase right;
    ModePhase left;
    double multiphoton_rad = 0.0; // (n_R - n_L) * kernel
    double vacuum_sum_rad = 0.0;  // vacuum_R + vacuum_L, identically zero
};

// Composite-trapezoid quadrature of phi_dot*(1-cos theta) with phi_dot from
// local stencils on the unwrapped phi. Default entry point runs the
// chunk-deterministic parallel reduction; the _serial variant is the plain
// reference loop kept for testing and benchmarks.
PhaseKernel phase_kernel(const AngularTrajectory& traj);
PhaseKernel phase_kernel_serial(const AngularTrajectory& traj);

// Cumulative kernel value at every sample time (same quadrature, running
// sums). cumulative.back() equals phase_kernel().value_rad.
std::vector<double> phase_kernel_cumulative(const AngularTrajectory& traj);

// Per-mode phase split for occupations (n_R, n_L):
//   total_R = +(n_R + 1/2) K    total_L = -(n_L + 1/2) K
//   quantal_R = +n_R K          quantal_L = -n_L K
//   vacuum_(+/-1) = +/- K/2     multiphoton = (n_R - n_L) K
PhaseReport mode_resolved_phases(const PhaseKernel& kernel, int n_right, int n_left);

struct RefineLevel {
    PhaseKernel kernel;
    double error_estimate = 0.0; // Richardson |K_l - K_{l-1}|/3; NaN at level 0
};

// Convergence diagnostics: kernels at successively doubled sample density.
// The sampler form re-samples an analytic source; the trajectory form
// inserts midpoint samples (the piecewise-linear path is what converges).
std::vector<RefineLevel> quadrature_refine(
    const std::function<AngularTrajectory(int samples_per_unit)>& sampler,
    int base_samples_per_unit, int levels);
std::vector<RefineLevel> quadrature_refine(const AngularTrajectory& traj, int levels);

} // namespace fiberphase
