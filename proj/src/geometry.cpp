#include "fiberphase/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

namespace fiberphase {

double angle_between(const Vec3& a, const Vec3& b) {
    // atan2 of (|a x b|, a.b) keeps full precision for tiny and near-pi angles
    const Vec3 an = a.normalized();
    const Vec3 bn = b.normalized();
    return std::atan2(an.cross(bn).norm(), an.dot(bn));
}

void HelixSpec::validate() const {
    if (!(radius_m > 0.0) || !std::isfinite(radius_m))
        throw config_error("helix: radius must be positive and finite");
    if (!(pitch_per_turn_m >= 0.0) || !std::isfinite(pitch_per_turn_m))
        throw config_error("helix: pitch per turn must be nonnegative and finite");
    if (!(turns > 0.0) || !std::isfinite(turns))
        throw config_error("helix: turns must be positive");
    if (samples_per_turn < 16)
        throw config_error("helix: samples_per_turn must be at least 16");
}

void SampledPath::validate() const {
    if (points.size() < 3)
        throw config_error("sampled path: at least 3 points required");
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!std::isfinite(points[i].t) || !points[i].position.finite())
            throw config_error("sampled path: non-finite record at index " + std::to_string(i));
        if (i > 0 && !(points[i].t > points[i - 1].t))
            throw config_error("sampled path: t must be strictly increasing (index " +
                               std::to_string(i) + ")");
    }
    for (std::size_t i = 1; i < points.size(); ++i) {
        if ((points[i].position - points[i - 1].position).norm() == 0.0)
            throw config_error("sampled path: degenerate tangent, consecutive duplicate "
                               "positions at index " + std::to_string(i));
    }
}

void AngularTrajectory::validate() const {
    if (samples.size() < 2)
        throw config_error("trajectory: at least 2 samples required");
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const AngularSample& s = samples[i];
        if (!std::isfinite(s.t) || !std::isfinite(s.theta) || !std::isfinite(s.phi))
            throw config_error("trajectory: non-finite sample at index " + std::to_string(i));
        if (s.theta < -1e-12 || s.theta > M_PI + 1e-12)
            throw config_error("trajectory: theta outside [0, pi] at index " + std::to_string(i));
        if (i > 0) {
            if (!(s.t > samples[i - 1].t))
                throw config_error("trajectory: t must be strictly increasing");
            if (std::abs(s.phi - samples[i - 1].phi) > M_PI + 1e-12)
                throw config_error("trajectory: phi jump >= pi between samples " +
                                   std::to_string(i - 1) + " and " + std::to_string(i) +
                                   " (not unwrapped?)");
        }
    }
}

AngularTrajectory helix_to_trajectory(const HelixSpec& spec, double cycles,
                                      const TrajectoryOptions& opt) {
    spec.validate();
    if (!(cycles > 0.0) || !std::isfinite(cycles))
        throw config_error("helix: cycles must be positive");

    const double theta = spec.tangent_theta();
    const auto n_samples =
        static_cast<std::size_t>(std::ceil(spec.samples_per_turn * cycles)) + 1;

    AngularTrajectory traj;
    traj.samples.resize(n_samples);
    const double dt = cycles / static_cast<double>(n_samples - 1);
    for (std::size_t i = 0; i < n_samples; ++i) {
        const double t = static_cast<double>(i) * dt; // t in turns
        traj.samples[i] = {t, theta, 2.0 * M_PI * t};
    }
    traj.pole_touched = theta < opt.pole_tol_rad || theta > M_PI - opt.pole_tol_rad;

    const Vec3 k0 = direction_from_angles(traj.samples.front().theta, traj.samples.front().phi);
    const Vec3 k1 = direction_from_angles(traj.samples.back().theta, traj.samples.back().phi);
    traj.closed = angle_between(k0, k1) <= opt.closure_tol_rad;
    return traj;
}

std::vector<double> stencil_derivative(std::span<const double> t, std::span<const double> y) {
    const std::size_t n = t.size();
    std::vector<double> d(n, 0.0);
    if (n < 2) return d;
    if (n == 2) {
        d[0] = d[1] = (y[1] - y[0]) / (t[1] - t[0]);
        return d;
    }
    // derivative of the quadratic through three nodes, nonuniform spacing
    auto three_point = [&](std::size_t a, std::size_t b, std::size_t c, double at) {
        const double ta = t[a], tb = t[b], tc = t[c];
        const double wa = (2.0 * at - tb - tc) / ((ta - tb) * (ta - tc));
        const double wb = (2.0 * at - ta - tc) / ((tb - ta) * (tb - tc));
        const double wc = (2.0 * at - ta - tb) / ((tc - ta) * (tc - tb));
        return wa * y[a] + wb * y[b] + wc * y[c];
    };
    d[0] = three_point(0, 1, 2, t[0]);
    for (std::size_t i = 1; i + 1 < n; ++i) d[i] = three_point(i - 1, i, i + 1, t[i]);
    d[n - 1] = three_point(n - 3, n - 2, n - 1, t[n - 1]);
    return d;
}

namespace {

double wrap_to_pi(double a) {
    a = std::remainder(a, 2.0 * M_PI); // (-pi, pi]
    return a;
}

// angles from a sequence of unit tangents, with unwrapping and pole handling
AngularTrajectory angles_from_tangents(const std::vector<double>& times,
                                       const std::vector<Vec3>& tangents,
                                       const TrajectoryOptions& opt) {
    AngularTrajectory traj;
    traj.samples.resize(times.size());
    double prev_phi = 0.0;
    bool have_prev = false;
    for (std::size_t i = 0; i < times.size(); ++i) {
        const Vec3& k = tangents[i];
        const double theta = std::acos(std::clamp(k.z, -1.0, 1.0));
        double phi;
        const bool at_pole = theta < opt.pole_tol_rad || theta > M_PI - opt.pole_tol_rad;
        if (at_pole) {
            // phi is a gauge choice at the pole and the phase integrand
            // vanishes there; carry the previous value for continuity
            traj.pole_touched = true;
            phi = have_prev ? prev_phi : 0.0;
        } else {
            const double raw = std::atan2(k.y, k.x);
            phi = have_prev ? prev_phi + wrap_to_pi(raw - prev_phi) : raw;
        }
        traj.samples[i] = {times[i], theta, phi};
        prev_phi = phi;
        have_prev = true;
    }
    traj.closed = angle_between(tangents.front(), tangents.back()) <= opt.closure_tol_rad;
    return traj;
}

} // namespace

AngularTrajectory sampled_path_to_trajectory(const SampledPath& path,
                                             const TrajectoryOptions& opt) {
    path.validate();
    const std::size_t n = path.points.size();

    std::vector<double> t(n), x(n), y(n), z(n);
    for (std::size_t i = 0; i < n; ++i) {
        t[i] = path.points[i].t;
        x[i] = path.points[i].position.x;
        y[i] = path.points[i].position.y;
        z[i] = path.points[i].position.z;
    }
    const std::vector<double> dx = stencil_derivative(t, x);
    const std::vector<double> dy = stencil_derivative(t, y);
    const std::vector<double> dz = stencil_derivative(t, z);

    std::vector<Vec3> tangents(n);
    for (std::size_t i = 0; i < n; ++i) {
        Vec3 v{dx[i], dy[i], dz[i]};
        const double norm = v.norm();
        if (norm <= 0.0 || !std::isfinite(norm))
            throw config_error("sampled path: degenerate tangent at index " + std::to_string(i));
        tangents[i] = v / norm;
    }
    return angles_from_tangents(t, tangents, opt);
}

AngularTrajectory reparameterize(const AngularTrajectory& traj,
                                 std::span<const TimeMapPoint> map) {
    traj.validate();
    if (map.size() < 2) throw config_error("reparameterize: map needs at least 2 points");
    for (std::size_t i = 1; i < map.size(); ++i) {
        if (!(map[i].t_new > map[i - 1].t_new) || !(map[i].t_old > map[i - 1].t_old))
            throw config_error("reparameterize: map must be strictly increasing in both "
                               "columns (violated at index " + std::to_string(i) + ")");
    }
    const double span_tol =
        1e-9 * std::max(1.0, std::abs(traj.t_end() - traj.t_begin()));
    if (std::abs(map.front().t_old - traj.t_begin()) > span_tol ||
        std::abs(map.back().t_old - traj.t_end()) > span_tol)
        throw config_error("reparameterize: map old-time column must span the trajectory range");

    AngularTrajectory out;
    out.closed = traj.closed;
    out.pole_touched = traj.pole_touched;
    out.samples.resize(map.size());

    std::size_t seg = 0;
    for (std::size_t i = 0; i < map.size(); ++i) {
        const double to = std::clamp(map[i].t_old, traj.t_begin(), traj.t_end());
        while (seg + 2 < traj.samples.size() && traj.samples[seg + 1].t < to) ++seg;
        const AngularSample& a = traj.samples[seg];
        const AngularSample& b = traj.samples[seg + 1];
        const double w = (to - a.t) / (b.t - a.t);
        out.samples[i] = {map[i].t_new, a.theta + w * (b.theta - a.theta),
                          a.phi + w * (b.phi - a.phi)};
    }
    return out;
}

AngularState sample_angular_state(const AngularTrajectory& traj, double t) {
    if (traj.samples.size() < 2)
        throw config_error("trajectory: at least 2 samples required");
    const double lo = traj.t_begin(), hi = traj.t_end();
    const double slack = 1e-9 * std::max(1.0, hi - lo);
    if (t < lo - slack || t > hi + slack)
        throw domain_error("trajectory query at t outside the sampled range");
    t = std::clamp(t, lo, hi);

    // three nearest samples around t
    const auto& s = traj.samples;
    std::size_t j = static_cast<std::size_t>(
        std::lower_bound(s.begin(), s.end(), t,
                         [](const AngularSample& a, double v) { return a.t < v; }) -
        s.begin());
    std::size_t c = std::clamp<std::size_t>(j, 1, s.size() - 2);

    const double t0 = s[c - 1].t, t1 = s[c].t, t2 = s[c + 1].t;
    auto quad = [&](double y0, double y1, double y2, double* deriv) {
        const double w0 = (t - t1) * (t - t2) / ((t0 - t1) * (t0 - t2));
        const double w1 = (t - t0) * (t - t2) / ((t1 - t0) * (t1 - t2));
        const double w2 = (t - t0) * (t - t1) / ((t2 - t0) * (t2 - t1));
        const double d0 = (2.0 * t - t1 - t2) / ((t0 - t1) * (t0 - t2));
        const double d1 = (2.0 * t - t0 - t2) / ((t1 - t0) * (t1 - t2));
        const double d2 = (2.0 * t - t0 - t1) / ((t2 - t0) * (t2 - t1));
        *deriv = d0 * y0 + d1 * y1 + d2 * y2;
        return w0 * y0 + w1 * y1 + w2 * y2;
    };
    AngularState st;
    st.theta = quad(s[c - 1].theta, s[c].theta, s[c + 1].theta, &st.theta_dot);
    st.phi = quad(s[c - 1].phi, s[c].phi, s[c + 1].phi, &st.phi_dot);
    return st;
}

} // namespace fiberphase
