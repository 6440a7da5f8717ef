#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include <unistd.h>

#include "fiberphase/geometry.hpp"

namespace testutil {

// helix whose tangent polar angle is exactly `theta` (pitch fixed at 2*pi)
inline fiberphase::HelixSpec theta_helix(double theta, int samples_per_turn = 512) {
    fiberphase::HelixSpec s;
    s.pitch_per_turn_m = 2.0 * M_PI;
    s.radius_m = std::tan(theta);
    s.samples_per_turn = samples_per_turn;
    return s;
}

inline fiberphase::AngularTrajectory theta_helix_traj(double theta, int samples_per_turn,
                                                      double cycles) {
    return fiberphase::helix_to_trajectory(theta_helix(theta, samples_per_turn), cycles);
}

// center-line samples of a helix spec, for the sampled-path route
inline fiberphase::SampledPath helix_path(const fiberphase::HelixSpec& spec, double cycles,
                                          double scale = 1.0) {
    fiberphase::SampledPath path;
    const auto n = static_cast<std::size_t>(std::ceil(spec.samples_per_turn * cycles)) + 1;
    const double dt = cycles / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) * dt;
        path.points.push_back({t, spec.position(t) * scale});
    }
    return path;
}

// closed path with varying theta and phi rate; analytic, resamplable
inline fiberphase::AngularTrajectory wobble_traj(int samples, bool periodic = true) {
    fiberphase::AngularTrajectory traj;
    traj.samples.resize(static_cast<std::size_t>(samples) + 1);
    for (int i = 0; i <= samples; ++i) {
        const double t = static_cast<double>(i) / samples;
        if (periodic) {
            traj.samples[i] = {t, M_PI / 3.0 + 0.2 * std::sin(2.0 * M_PI * t),
                               2.0 * M_PI * t + 0.1 * std::sin(4.0 * M_PI * t)};
        } else {
            traj.samples[i] = {t, M_PI / 3.0 + 0.3 * std::sin(0.6 * M_PI * t),
                               2.0 * M_PI * t + 0.8 * t * t * (1.0 - 0.4 * t)};
        }
    }
    traj.closed = periodic;
    return traj;
}

// strictly monotone smooth map on [0,1] with non-polynomial inverse
inline std::vector<fiberphase::TimeMapPoint> exp_map(std::size_t n_points) {
    std::vector<fiberphase::TimeMapPoint> map(n_points);
    const double denom = std::exp(1.0) - 1.0;
    for (std::size_t i = 0; i < n_points; ++i) {
        const double u = static_cast<double>(i) / static_cast<double>(n_points - 1);
        map[i] = {u, (std::exp(u) - 1.0) / denom};
    }
    map.back().t_old = 1.0; // exact endpoint
    return map;
}

// deterministic RNG for property-style tests
inline std::mt19937_64 rng(std::uint64_t seed = 20260808ull) { return std::mt19937_64(seed); }

class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        base_ = std::filesystem::temp_directory_path() /
                ("fiberphase_test_" + tag + "_" + std::to_string(::getpid()));
        std::filesystem::remove_all(base_);
        std::filesystem::create_directories(base_);
    }
    ~TempDir() { std::filesystem::remove_all(base_); }
    const std::filesystem::path& path() const { return base_; }

private:
    std::filesystem::path base_;
};

} // namespace testutil
