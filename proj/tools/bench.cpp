// Serial vs OpenMP timing for the data-parallel kernels: phase quadrature,
// analytic-solution residual scan, and the gyrotropic regime sweep.
//
//   fiberphase_bench [samples] [sweep_cells_per_axis]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "fiberphase/evolution.hpp"
#include "fiberphase/gyrotropic.hpp"
#include "fiberphase/parallel.hpp"
#include "fiberphase/phase.hpp"

namespace fp = fiberphase;

namespace {

double now_s() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

// wobbly closed path: theta and phi both vary, so nothing degenerates
fp::AngularTrajectory wobble_path(std::size_t n_samples) {
    fp::AngularTrajectory traj;
    traj.samples.resize(n_samples);
    const double dt = 1.0 / static_cast<double>(n_samples - 1);
    for (std::size_t i = 0; i < n_samples; ++i) {
        const double t = static_cast<double>(i) * dt;
        traj.samples[i] = {t, M_PI / 3.0 + 0.2 * std::sin(2.0 * M_PI * t),
                           2.0 * M_PI * t + 0.1 * std::sin(4.0 * M_PI * t)};
    }
    traj.closed = true;
    return traj;
}

struct Row {
    const char* name;
    double serial_s;
    double parallel_s;
    double check_serial;
    double check_parallel;
};

void print_row(const Row& r) {
    std::printf("%-22s %10.4f s %10.4f s %8.2fx   |serial-parallel| = %.3g\n", r.name,
                r.serial_s, r.parallel_s, r.serial_s / r.parallel_s,
                std::abs(r.check_serial - r.check_parallel));
}

} // namespace

int main(int argc, char** argv) {
    const std::size_t samples = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 4000000;
    const int sweep_n = argc > 2 ? std::atoi(argv[2]) : 1500;

    std::printf("threads: %d\n", fp::max_threads());
    std::printf("%-22s %12s %12s %9s\n", "kernel", "serial", "parallel", "speedup");

    {
        const fp::AngularTrajectory traj = wobble_path(samples);
        double t0 = now_s();
        const fp::PhaseKernel ks = fp::phase_kernel_serial(traj);
        double t1 = now_s();
        const fp::PhaseKernel kp = fp::phase_kernel(traj);
        double t2 = now_s();
        print_row({"phase_kernel", t1 - t0, t2 - t1, ks.value_rad, kp.value_rad});
    }

    {
        const std::size_t res_samples = std::min<std::size_t>(samples, 1u << 20);
        const fp::AngularTrajectory traj = wobble_path(res_samples);
        double t0 = now_s();
        const double rs = fp::analytic_residual_serial(traj, +1);
        double t1 = now_s();
        const double rp = fp::analytic_residual(traj, +1);
        double t2 = now_s();
        print_row({"analytic_residual", t1 - t0, t2 - t1, rs, rp});
    }

    {
        fp::SweepGrid grid;
        grid.eps1_min = -3.0;
        grid.eps1_max = 1.0;
        grid.eps1_count = sweep_n;
        grid.eps2_min = -3.0;
        grid.eps2_max = 3.0;
        grid.eps2_count = sweep_n;
        double t0 = now_s();
        const auto cs = fp::regime_sweep_serial(grid);
        double t1 = now_s();
        const auto cp = fp::regime_sweep(grid);
        double t2 = now_s();
        std::size_t diff = 0;
        for (std::size_t i = 0; i < cs.size(); ++i)
            if (cs[i].right != cp[i].right || cs[i].left != cp[i].left) ++diff;
        print_row({"regime_sweep", t1 - t0, t2 - t1, static_cast<double>(diff), 0.0});
    }
    return 0;
}
