#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "fiberphase/errors.hpp"

namespace fiberphase {

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }

    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    Vec3 cross(const Vec3& o) const {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }
    double norm() const { return std::sqrt(dot(*this)); }
    Vec3 normalized() const { return *this / norm(); }
    bool finite() const {
        return std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
    }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

// Angle between two directions, robust near 0 and pi.
double angle_between(const Vec3& a, const Vec3& b);

// Circular-helix fiber: center line of radius `radius_m`, advancing
// `pitch_per_turn_m` along z per turn. The wave vector rides the tangent,
// so the polar angle is constant along the path.
struct HelixSpec {
    double radius_m = 1.0;
    double pitch_per_turn_m = 0.0;
    double turns = 1.0;
    int samples_per_turn = 512;

    void validate() const;

    // polar angle of the tangent: tan(theta) = 2*pi*r / pitch
    double tangent_theta() const { return std::atan2(2.0 * M_PI * radius_m, pitch_per_turn_m); }

    // center-line position at parameter t (in turns)
    Vec3 position(double t) const {
        const double ang = 2.0 * M_PI * t;
        return {radius_m * std::sin(ang), -radius_m * std::cos(ang), pitch_per_turn_m * t};
    }
};

struct PathPoint {
    double t = 0.0;
    Vec3 position;
};

struct SampledPath {
    std::vector<PathPoint> points;

    void validate() const; // >= 3 points, strictly increasing t, no duplicate neighbors
};

struct AngularSample {
    double t = 0.0;
    double theta = 0.0; // [0, pi]
    double phi = 0.0;   // unwrapped, continuous
};

struct TrajectoryOptions {
    double closure_tol_rad = 1e-9; // first/last tangent angle for the closed flag
    double pole_tol_rad = 1e-6;    // below this theta, phi is carried forward
};

// Wave-vector direction along the fiber, as spherical angles over time.
// phi is unwrapped: adjacent samples differ by less than pi.
struct AngularTrajectory {
    std::vector<AngularSample> samples;
    bool closed = false;       // k(T) == k(0) within closure tolerance
    bool pole_touched = false; // some sample had theta within pole tolerance of 0 or pi

    void validate() const;
    double t_begin() const { return samples.front().t; }
    double t_end() const { return samples.back().t; }
    std::size_t size() const { return samples.size(); }
};

// Unit wave-vector direction for spherical angles.
inline Vec3 direction_from_angles(double theta, double phi) {
    const double st = std::sin(theta);
    return {st * std::cos(phi), st * std::sin(phi), std::cos(theta)};
}

// Analytic helix trajectory over `cycles` turns: constant theta, phi linear
// in t (2*pi per turn, t measured in turns).
AngularTrajectory helix_to_trajectory(const HelixSpec& spec, double cycles,
                                      const TrajectoryOptions& opt = {});

// Tangent extraction from a sampled 3D center line. Second-order finite
// differences (centered inside, one-sided at the ends), then angles with
// phi unwrapping and pole handling.
AngularTrajectory sampled_path_to_trajectory(const SampledPath& path,
                                             const TrajectoryOptions& opt = {});

// One node of a monotone time map: the output sample at new time `t_new`
// takes its angles from the input trajectory at old time `t_old`.
struct TimeMapPoint {
    double t_new = 0.0;
    double t_old = 0.0;
};

// Relabel/resample the trajectory along a strictly monotone time map whose
// old-time column spans the trajectory's range. Angles are interpolated
// linearly in (theta, phi); the geometric path is unchanged.
AngularTrajectory reparameterize(const AngularTrajectory& traj,
                                 std::span<const TimeMapPoint> map);

// Local angle values and rates at arbitrary t inside the trajectory range,
// from the quadratic through the three nearest samples.
struct AngularState {
    double theta = 0.0;
    double phi = 0.0;
    double theta_dot = 0.0;
    double phi_dot = 0.0;
};

AngularState sample_angular_state(const AngularTrajectory& traj, double t);

// Derivative estimates at every sample of a scalar series y(t): centered
// three-point stencils inside, one-sided at the ends, nonuniform-aware.
// Shared by the quadrature and the tangent code; exposed for tests.
std::vector<double> stencil_derivative(std::span<const double> t, std::span<const double> y);

} // namespace fiberphase
