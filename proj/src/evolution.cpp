#include "fiberphase/evolution.hpp"

#include <algorithm>
#include <cmath>

#include "fiberphase/parallel.hpp"
#include "fiberphase/phase.hpp"

namespace fiberphase {

namespace {

using Complex = std::complex<double>;
const Complex kI(0.0, 1.0);

SpinMatrices make_spin1() {
    SpinMatrices m;
    m.s3 = Mat3::Zero();
    m.s3(0, 0) = 1.0;
    m.s3(2, 2) = -1.0;
    const double r2 = std::sqrt(2.0);
    m.s_plus = Mat3::Zero();
    m.s_plus(0, 1) = r2; // |0> -> |+1>
    m.s_plus(1, 2) = r2; // |-1> -> |0>
    m.s_minus = m.s_plus.adjoint();
    m.s1 = 0.5 * (m.s_plus + m.s_minus);
    m.s2 = -0.5 * kI * (m.s_plus - m.s_minus);
    return m;
}

Mat3 axis_dot_spin(const Vec3& v, const SpinMatrices& spin) {
    return v.x * spin.s1 + v.y * spin.s2 + v.z * spin.s3;
}

// exp(-i alpha n.S) for spin 1: (n.S)^3 = n.S, so the exponential closes as
// I - i sin(alpha) (n.S) + (cos(alpha) - 1) (n.S)^2. Unitary up to rounding.
Mat3 rotation_exp(const Vec3& axis_unit, double alpha, const SpinMatrices& spin) {
    const Mat3 ns = axis_dot_spin(axis_unit, spin);
    return Mat3::Identity() - kI * std::sin(alpha) * ns +
           (std::cos(alpha) - 1.0) * (ns * ns);
}

Mat3 h_from_state(const AngularState& st, const SpinMatrices& spin) {
    const Vec3 khat = direction_from_angles(st.theta, st.phi);
    const double sth = std::sin(st.theta), cth = std::cos(st.theta);
    const double sph = std::sin(st.phi), cph = std::cos(st.phi);
    const Vec3 theta_hat{cth * cph, cth * sph, -sth};
    const Vec3 phi_hat{-sph, cph, 0.0};
    const Vec3 khat_dot = st.theta_dot * theta_hat + (st.phi_dot * sth) * phi_hat;
    return axis_dot_spin(khat.cross(khat_dot), spin);
}

int sigma_row(int sigma) {
    if (sigma == +1) return 0;
    if (sigma == -1) return 2;
    throw config_error("sigma must be +1 or -1");
}

} // namespace

const SpinMatrices& SpinMatrices::spin1() {
    static const SpinMatrices m = make_spin1();
    return m;
}

Mat3 h_eff(const AngularTrajectory& traj, double t, const SpinMatrices& spin) {
    return h_from_state(sample_angular_state(traj, t), spin);
}

Mat3 frame_rotation(double theta, double phi, const SpinMatrices& spin) {
    // exp(beta S+ - beta* S-) with beta = -(theta/2) e^{-i phi} is the
    // rotation by theta about the azimuthal axis (-sin phi, cos phi, 0)
    const Vec3 axis{-std::sin(phi), std::cos(phi), 0.0};
    return rotation_exp(axis, theta, spin);
}

Vec3c helicity_eigenstate(double theta, double phi, int sigma, const SpinMatrices& spin) {
    Vec3c basis = Vec3c::Zero();
    basis(sigma_row(sigma)) = 1.0;
    return frame_rotation(theta, phi, spin) * basis;
}

EvolutionResult evolve(const AngularTrajectory& traj, int sigma, const EvolveOptions& opt) {
    traj.validate();
    const int row = sigma_row(sigma);
    if (!(opt.max_rotation_per_step > 0.0))
        throw config_error("evolve: max_rotation_per_step must be positive");
    const SpinMatrices& spin = SpinMatrices::spin1();
    const std::size_t n = traj.samples.size();

    Vec3c psi = helicity_eigenstate(traj.samples.front().theta,
                                    traj.samples.front().phi, sigma, spin);

    // phase is tracked against the co-moving frame V(t)|sigma>, which keeps
    // multi-turn windings instead of a principal value
    Vec3c basis = Vec3c::Zero();
    basis(row) = 1.0;

    std::vector<Vec3c> states(n);
    std::vector<double> h_expect(n), times(n);
    states[0] = psi;
    times[0] = traj.samples[0].t;

    double tracked_phase = 0.0; // unwrapped arg <V(t)sigma|psi(t)>
    Complex overlap_prev = 1.0; // <V(0)sigma|psi(0)> = 1
    double norm_drift = 0.0;

    for (std::size_t i = 0; i + 1 < n; ++i) {
        const AngularSample& a = traj.samples[i];
        const AngularSample& b = traj.samples[i + 1];
        const double dt = b.t - a.t;
        AngularState seg;
        seg.theta_dot = (b.theta - a.theta) / dt;
        seg.phi_dot = (b.phi - a.phi) / dt;

        // rotation magnitude |k x kdot| = sqrt(theta_dot^2 + (phi_dot sin theta)^2)
        const double mid_sin = std::sin(0.5 * (a.theta + b.theta));
        const double rate = std::hypot(seg.theta_dot, seg.phi_dot * mid_sin);
        const double want_steps = std::ceil(rate * dt / opt.max_rotation_per_step);
        if (!(want_steps < 1e8))
            throw numerics_error("evolve: step underflow, interval at t = " +
                                 std::to_string(a.t) + " needs " +
                                 std::to_string(want_steps) + " substeps");
        const int substeps = std::max(1, static_cast<int>(want_steps));
        const double h = dt / substeps;
        for (int ss = 0; ss < substeps; ++ss) {
            // midpoint-exponential step: H = omega.S frozen at the substep midpoint
            const double w = (static_cast<double>(ss) + 0.5) / substeps;
            seg.theta = a.theta + w * (b.theta - a.theta);
            seg.phi = a.phi + w * (b.phi - a.phi);
            const Vec3 khat = direction_from_angles(seg.theta, seg.phi);
            const double sth = std::sin(seg.theta), cth = std::cos(seg.theta);
            const Vec3 theta_hat{cth * std::cos(seg.phi), cth * std::sin(seg.phi), -sth};
            const Vec3 phi_hat{-std::sin(seg.phi), std::cos(seg.phi), 0.0};
            const Vec3 omega = khat.cross(seg.theta_dot * theta_hat +
                                          (seg.phi_dot * sth) * phi_hat);
            const double mag = omega.norm();
            if (mag * h > 0.0) {
                psi = rotation_exp(omega / mag, mag * h, spin) * psi;
            }
        }

        norm_drift = std::max(norm_drift, std::abs(psi.norm() - 1.0));
        states[i + 1] = psi;
        times[i + 1] = b.t;

        const Vec3c ref = frame_rotation(b.theta, b.phi, spin) * basis;
        const Complex overlap = ref.dot(psi); // <ref|psi>
        tracked_phase += std::arg(overlap / overlap_prev);
        overlap_prev = overlap;
    }

    EvolutionResult res;
    res.final_state = psi;
    res.norm_drift = norm_drift;
    res.noncyclic = !traj.closed;

    // dynamical phase: trapezoid of <psi|H|psi> on the sample grid
    for (std::size_t i = 0; i < n; ++i) {
        const Mat3 hm = h_from_state(sample_angular_state(traj, times[i]), spin);
        h_expect[i] = std::real(states[i].dot(hm * states[i]));
    }
    double dyn = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i)
        dyn += 0.5 * (times[i + 1] - times[i]) * (h_expect[i] + h_expect[i + 1]);
    res.dynamical_phase_rad = dyn;

    if (traj.closed) {
        res.total_phase_rad = tracked_phase;
    } else {
        // open path: principal-value Pancharatnam phase against psi(0)
        res.total_phase_rad = std::arg(states.front().dot(psi));
    }
    res.geometric_phase_rad = res.total_phase_rad - res.dynamical_phase_rad;

    // diagnostics on the stored run
    Vec3c long_basis = Vec3c::Zero();
    long_basis(1) = 1.0;
    double helicity_drift = 0.0, max_long = 0.0, max_res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const AngularSample& s = traj.samples[i];
        const Vec3 khat = direction_from_angles(s.theta, s.phi);
        const Mat3 hel = axis_dot_spin(khat, spin);
        helicity_drift = std::max(
            helicity_drift, std::abs(std::real(states[i].dot(hel * states[i])) - sigma));
        const Vec3c zero_mode = frame_rotation(s.theta, s.phi, spin) * long_basis;
        max_long = std::max(max_long, std::abs(zero_mode.dot(states[i])));
        if (i > 0 && i + 1 < n) {
            const Vec3c dpsi =
                (states[i + 1] - states[i - 1]) / (times[i + 1] - times[i - 1]);
            const Mat3 hm = h_from_state(sample_angular_state(traj, times[i]), spin);
            max_res = std::max(max_res, (kI * dpsi - hm * states[i]).norm());
        }
    }
    res.helicity_drift = helicity_drift;
    res.max_longitudinal = max_long;
    res.max_residual = max_res;

    if (opt.keep_trace) {
        res.trace.resize(n);
        for (std::size_t i = 0; i < n; ++i)
            res.trace[i] = {times[i], states[i], h_expect[i]};
    }
    return res;
}

namespace {

// analytic solution on the sample grid: exp(sign_factor * i phase) V(t)|sigma>
std::vector<Vec3c> analytic_states(const AngularTrajectory& traj, int sigma,
                                   PhaseSign sign, const SpinMatrices& spin) {
    const int row = sigma_row(sigma);
    const std::vector<double> cumulative = phase_kernel_cumulative(traj);
    const double sign_factor = sign == PhaseSign::MinusExpArg ? -1.0 : +1.0;

    Vec3c basis = Vec3c::Zero();
    basis(row) = 1.0;

    std::vector<Vec3c> psi(traj.samples.size());
    parallel_for_index(traj.samples.size(), [&](std::size_t i) {
        const AngularSample& s = traj.samples[i];
        const double phase = static_cast<double>(sigma) * cumulative[i];
        psi[i] = std::exp(sign_factor * kI * phase) *
                 (frame_rotation(s.theta, s.phi, spin) * basis);
    });
    return psi;
}

double residual_impl(const AngularTrajectory& traj, int sigma, PhaseSign sign,
                     bool parallel) {
    traj.validate();
    if (traj.samples.size() < 3)
        throw config_error("analytic_residual: need at least 3 samples");
    const SpinMatrices& spin = SpinMatrices::spin1();
    const std::vector<Vec3c> psi = analytic_states(traj, sigma, sign, spin);

    auto term = [&](std::size_t j) {
        const std::size_t i = j + 1; // interior samples only
        const double dt = traj.samples[i + 1].t - traj.samples[i - 1].t;
        const Vec3c dpsi = (psi[i + 1] - psi[i - 1]) / dt;
        const Mat3 hm = h_from_state(sample_angular_state(traj, traj.samples[i].t), spin);
        return (kI * dpsi - hm * psi[i]).norm();
    };
    const std::size_t count = traj.samples.size() - 2;
    if (parallel) return chunked_max(count, term);
    double best = 0.0;
    for (std::size_t j = 0; j < count; ++j) best = std::max(best, term(j));
    return best;
}

} // namespace

double analytic_residual(const AngularTrajectory& traj, int sigma, PhaseSign sign) {
    return residual_impl(traj, sigma, sign, true);
}

double analytic_residual_serial(const AngularTrajectory& traj, int sigma, PhaseSign sign) {
    return residual_impl(traj, sigma, sign, false);
}

} // namespace fiberphase
