#include "fiberphase/gyrotropic.hpp"

#include <cmath>
#include <limits>

#include "fiberphase/errors.hpp"
#include "fiberphase/format.hpp"
#include "fiberphase/parallel.hpp"

namespace fiberphase {

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Propagating: return "propagating";
        case Verdict::Evanescent: return "evanescent";
        case Verdict::Cutoff: return "cutoff";
    }
    return "?";
}

namespace {

void check_tensors(const GyrotropicTensors& t) {
    for (double v : {t.eps1, t.eps2, t.eps3, t.mu1, t.mu2, t.mu3})
        if (!std::isfinite(v)) throw config_error("gyrotropic: non-finite tensor component");
}

ModeDispersion dispersion_for(int sigma, double n_sq, double omega, double cutoff_eps) {
    ModeDispersion d;
    d.sigma = sigma;
    d.n_squared = n_sq;
    const double scale = omega / kSpeedOfLight;
    if (n_sq > cutoff_eps) {
        d.verdict = Verdict::Propagating;
        d.k_prop_rad_m = std::sqrt(n_sq) * scale;
        d.attenuation_length_m = std::numeric_limits<double>::infinity();
    } else if (n_sq < -cutoff_eps) {
        // principal branch: decaying, not growing
        d.verdict = Verdict::Evanescent;
        const double im_n = std::sqrt(-n_sq);
        d.k_prop_rad_m = std::complex<double>(0.0, im_n * scale);
        d.attenuation_length_m = kSpeedOfLight / (omega * im_n);
    } else {
        // wavelength exceeds any finite apparatus; treated as non-propagating
        d.verdict = Verdict::Cutoff;
        d.k_prop_rad_m = 0.0;
        d.attenuation_length_m = std::numeric_limits<double>::infinity();
    }
    return d;
}

} // namespace

std::pair<double, double> refractive_indices(const GyrotropicTensors& t) {
    check_tensors(t);
    return {(t.eps1 + t.eps2) * (t.mu1 + t.mu2), (t.eps1 - t.eps2) * (t.mu1 - t.mu2)};
}

ModeClassification classify(const GyrotropicTensors& t, double omega_rad_s,
                            double cutoff_eps) {
    if (!(omega_rad_s > 0.0) || !std::isfinite(omega_rad_s))
        throw config_error("gyrotropic: omega must be positive");
    const auto [n_plus_sq, n_minus_sq] = refractive_indices(t);
    ModeClassification cls;
    cls.omega_rad_s = omega_rad_s;
    cls.cutoff_eps = cutoff_eps;
    cls.right = dispersion_for(+1, n_plus_sq, omega_rad_s, cutoff_eps);
    cls.left = dispersion_for(-1, n_minus_sq, omega_rad_s, cutoff_eps);
    return cls;
}

FilteredVacuumPhase surviving_vacuum_phase(const GyrotropicTensors& t,
                                           double omega_rad_s,
                                           const PhaseKernel& kernel,
                                           double cutoff_eps) {
    FilteredVacuumPhase f;
    f.modes = classify(t, omega_rad_s, cutoff_eps);

    const bool r_prop = f.modes.right.verdict == Verdict::Propagating;
    const bool l_prop = f.modes.left.verdict == Verdict::Propagating;
    f.contribution_right_rad = r_prop ? 0.5 * kernel.value_rad : 0.0;
    f.contribution_left_rad = l_prop ? -(0.5 * kernel.value_rad) : 0.0;
    f.net_rad = f.contribution_right_rad + f.contribution_left_rad;
    f.observable = r_prop || l_prop;

    if (!f.observable) {
        f.note = "no observable signal: both polarizations inhibited";
    } else if (r_prop && l_prop) {
        f.note = "both modes propagate: vacuum phases cancel";
    } else {
        const ModeDispersion& blocked = r_prop ? f.modes.left : f.modes.right;
        if (blocked.verdict == Verdict::Evanescent) {
            f.note = std::string("filtered: ") + (r_prop ? "left" : "right") +
                     " mode evanescent, attenuation length " +
                     format_double_short(blocked.attenuation_length_m) + " m";
        } else {
            f.note = std::string("filtered: ") + (r_prop ? "left" : "right") +
                     " mode at cutoff (k -> 0)";
        }
    }
    return f;
}

namespace {

std::vector<SweepCell> sweep_impl(const SweepGrid& grid, double cutoff_eps, bool parallel) {
    if (grid.eps1_count < 1 || grid.eps2_count < 1)
        throw config_error("sweep: grid counts must be >= 1");
    const std::size_t total =
        static_cast<std::size_t>(grid.eps1_count) * static_cast<std::size_t>(grid.eps2_count);
    std::vector<SweepCell> cells(total);

    auto fill_cell = [&](std::size_t idx) {
        const int i = static_cast<int>(idx) / grid.eps2_count;
        const int j = static_cast<int>(idx) % grid.eps2_count;
        const double e1 =
            grid.eps1_count == 1
                ? grid.eps1_min
                : grid.eps1_min + (grid.eps1_max - grid.eps1_min) * i / (grid.eps1_count - 1);
        const double e2 =
            grid.eps2_count == 1
                ? grid.eps2_min
                : grid.eps2_min + (grid.eps2_max - grid.eps2_min) * j / (grid.eps2_count - 1);
        GyrotropicTensors t;
        t.eps1 = e1;
        t.eps2 = e2;
        t.mu1 = grid.mu1;
        t.mu2 = grid.mu2;
        const auto [np, nm] = refractive_indices(t);
        SweepCell& c = cells[idx];
        c.eps1 = e1;
        c.eps2 = e2;
        c.n_plus_sq = np;
        c.n_minus_sq = nm;
        auto verdict = [cutoff_eps](double n_sq) {
            if (n_sq > cutoff_eps) return Verdict::Propagating;
            if (n_sq < -cutoff_eps) return Verdict::Evanescent;
            return Verdict::Cutoff;
        };
        c.right = verdict(np);
        c.left = verdict(nm);
    };

    if (parallel) {
        parallel_for_index(total, fill_cell);
    } else {
        for (std::size_t idx = 0; idx < total; ++idx) fill_cell(idx);
    }
    return cells;
}

} // namespace

std::vector<SweepCell> regime_sweep(const SweepGrid& grid, double cutoff_eps) {
    return sweep_impl(grid, cutoff_eps, true);
}

std::vector<SweepCell> regime_sweep_serial(const SweepGrid& grid, double cutoff_eps) {
    return sweep_impl(grid, cutoff_eps, false);
}

} // namespace fiberphase
