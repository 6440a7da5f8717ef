#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "fiberphase/phase.hpp"

namespace fiberphase {

inline constexpr double kSpeedOfLight = 299792458.0; // m/s

// Relative permittivity/permeability parameters of a gyrotropic medium:
// eps/mu tensors have (eps1, +/-i eps2, eps3) structure. The on-axis
// circular modes see only the 1,2 components; eps3/mu3 are carried for
// completeness but inert here.
struct GyrotropicTensors {
    double eps1 = 1.0, eps2 = 0.0, eps3 = 1.0;
    double mu1 = 1.0, mu2 = 0.0, mu3 = 1.0;
};

enum class Verdict { Propagating, Evanescent, Cutoff };

const char* to_string(Verdict v);

// n^2 for the two circular polarizations propagating along the gyrotropy
// axis: n_+^2 = (eps1 + eps2)(mu1 + mu2), n_-^2 with minus signs.
// (+) is the right-handed mode, (-) the left-handed one.
std::pair<double, double> refractive_indices(const GyrotropicTensors& t);

struct ModeDispersion {
    int sigma = 0;
    double n_squared = 0.0;
    std::complex<double> k_prop_rad_m; // n * omega / c, principal square root
    Verdict verdict = Verdict::Cutoff;
    double attenuation_length_m = 0.0; // c/(omega |Im n|) for evanescent, inf otherwise
};

struct ModeClassification {
    ModeDispersion right;
    ModeDispersion left;
    double omega_rad_s = 0.0;
    double cutoff_eps = 1e-12;
};

// Verdict per polarization: Propagating (n^2 > cutoff_eps, real k),
// Evanescent (n^2 < -cutoff_eps, purely imaginary k with positive
// imaginary part), Cutoff otherwise.
ModeClassification classify(const GyrotropicTensors& t, double omega_rad_s,
                            double cutoff_eps = 1e-12);

// Vacuum geometric phase surviving the medium's mode filter: each circular
// mode contributes +/- kernel/2 only while it propagates; inhibited modes
// contribute zero (their fluctuation amplitude decays, see attenuation
// length in the classification).
struct FilteredVacuumPhase {
    ModeClassification modes;
    double contribution_right_rad = 0.0;
    double contribution_left_rad = 0.0;
    double net_rad = 0.0;
    bool observable = false; // false when no mode propagates (no signal)
    std::string note;
};

FilteredVacuumPhase surviving_vacuum_phase(const GyrotropicTensors& t,
                                           double omega_rad_s,
                                           const PhaseKernel& kernel,
                                           double cutoff_eps = 1e-12);

struct SweepGrid {
    double eps1_min = -2.0, eps1_max = 0.0;
    int eps1_count = 32;
    double eps2_min = -3.0, eps2_max = 3.0;
    int eps2_count = 32;
    double mu1 = 1.0, mu2 = 0.0;
};

struct SweepCell {
    double eps1 = 0.0, eps2 = 0.0;
    double n_plus_sq = 0.0, n_minus_sq = 0.0;
    Verdict right = Verdict::Cutoff;
    Verdict left = Verdict::Cutoff;
};

// Verdict map over an (eps1, eps2) grid with fixed mu. Cells are
// independent; the default entry point runs them in parallel.
std::vector<SweepCell> regime_sweep(const SweepGrid& grid, double cutoff_eps = 1e-12);
std::vector<SweepCell> regime_sweep_serial(const SweepGrid& grid, double cutoff_eps = 1e-12);

} // namespace fiberphase
