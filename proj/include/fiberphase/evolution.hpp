#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "fiberphase/geometry.hpp"

namespace fiberphase {

using Mat3 = Eigen::Matrix3cd;
using Vec3c = Eigen::Vector3cd;

// Spin-1 matrices in the circular (helicity) basis, component ordering
// (+1, 0, -1). s3 = diag(1, 0, -1); s_plus/s_minus are the ladder pair.
struct SpinMatrices {
    Mat3 s1, s2, s3, s_plus, s_minus;
    static const SpinMatrices& spin1();
};

// Effective Hamiltonian of the coiled-light problem at time t:
// (khat x d/dt khat) . S, built from the trajectory's angle samples.
Mat3 h_eff(const AngularTrajectory& traj, double t,
           const SpinMatrices& spin = SpinMatrices::spin1());

// Unitary frame rotation taking the z axis onto the (theta, phi) direction:
// exp(beta S+ - beta* S-) with beta = -(theta/2) e^{-i phi}. Fixes the gauge
// of the helicity eigenvectors used throughout.
Mat3 frame_rotation(double theta, double phi,
                    const SpinMatrices& spin = SpinMatrices::spin1());

// Helicity eigenstate: unit eigenvector of khat.S with eigenvalue sigma,
// in the frame_rotation gauge.
Vec3c helicity_eigenstate(double theta, double phi, int sigma,
                          const SpinMatrices& spin = SpinMatrices::spin1());

// Sign convention of the analytic solution's phase factor. The solution
// carries exp(-i phase_integral); MinusExpArg is the convention that makes
// the residual vanish (see analytic_residual), fixed as this repo's default.
enum class PhaseSign { MinusExpArg, PlusExpArg };

struct EvolveOptions {
    // Substep cap: a sample interval is subdivided until the rotation angle
    // per exponential step is below this bound.
    double max_rotation_per_step = 0.02;
    bool keep_trace = false;
};

struct TraceSample {
    double t = 0.0;
    Vec3c amplitudes;
    double h_expect = 0.0;
};

struct EvolutionResult {
    Vec3c final_state;
    double total_phase_rad = 0.0;     // accumulated arg<psi(0)|psi(t)>, unreduced
    double dynamical_phase_rad = 0.0; // integral of <psi|H|psi> dt
    double geometric_phase_rad = 0.0; // total - dynamical
    double max_residual = 0.0;        // max ||i d/dt psi - H psi|| on the numeric run
    double norm_drift = 0.0;
    double helicity_drift = 0.0;     // max |<khat.S> - sigma|
    double max_longitudinal = 0.0;   // max zero-helicity admixture
    bool noncyclic = false;          // open path: total phase is the principal-value
                                     // Pancharatnam phase against the initial state
    std::vector<TraceSample> trace;  // filled when keep_trace
};

// Integrate i d/dt psi = H_eff psi from the helicity eigenstate at t0 with
// midpoint-exponential steps (exactly unitary per step). For closed
// trajectories the total phase is tracked continuously, so multi-turn
// windings are kept; the numeric geometric phase of the evolved state is
// the negative of the phase-kernel value times sigma (the state carries
// exp(-i phi)).
EvolutionResult evolve(const AngularTrajectory& traj, int sigma,
                       const EvolveOptions& opt = {});

// Max over the sample grid of ||i d/dt psi_a - H psi_a|| for the analytic
// solution psi_a(t) = exp(sign * i integral) V(t)|sigma>, time derivative by
// centered differences. Decays at second order in the spacing for the
// correct sign; stays O(rate) for the wrong one.
double analytic_residual(const AngularTrajectory& traj, int sigma,
                         PhaseSign sign = PhaseSign::MinusExpArg);
double analytic_residual_serial(const AngularTrajectory& traj, int sigma,
                                PhaseSign sign = PhaseSign::MinusExpArg);

} // namespace fiberphase
