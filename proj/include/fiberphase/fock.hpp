#pragma once

#include <complex>
#include <utility>

#include <Eigen/Dense>

#include "fiberphase/errors.hpp"
#include "fiberphase/phase.hpp"

namespace fiberphase {

using Mat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

enum class Ordering { NonNormal, Normal };

struct ModeOccupation {
    int n_right = 0;
    int n_left = 0;
};

// Two-mode (right/left circular) Fock space truncated at n_max photons per
// mode, with the photon spin-z operator realized both from the linear
// polarization basis and from the circular one.
//
// Basis ordering: index = n_R * (n_max+1) + n_L  (n_R major).
//
// Truncation note: products of truncated ladder matrices deviate from the
// exact operator algebra on states holding n_max photons in a mode ([a,adag]
// picks up -n_max on the boundary instead of +1). The stored s3 operators
// are the exact diagonal forms restricted to the kept basis, which are free
// of that artifact; the product-form constructions of both bases are exposed
// separately so the equivalence can be checked where it must hold.
class FockSystem {
public:
    // Documented truncation limit: matrices are dense (n_max+1)^2 square.
    static constexpr int kMaxTruncation = 24;

    static FockSystem build(int n_max);

    int n_max() const { return n_max_; }
    int dim() const { return dim_; }

    int basis_index(ModeOccupation occ) const;
    CVec basis_vector(ModeOccupation occ) const;

    // circular-basis ladder operators
    const Mat& a_right() const { return a_r_; }
    const Mat& a_right_dag() const { return adag_r_; }
    const Mat& a_left() const { return a_l_; }
    const Mat& a_left_dag() const { return adag_l_; }

    // linear-basis ladder operators, a(k,1) and a(k,2)
    const Mat& a_lin1() const { return a1_; }
    const Mat& a_lin1_dag() const { return adag1_; }
    const Mat& a_lin2() const { return a2_; }
    const Mat& a_lin2_dag() const { return adag2_; }

    const Mat& number_right() const { return n_r_; }
    const Mat& number_left() const { return n_l_; }

    // Total S3. The non-normal-order zero-point halves cancel between the
    // two modes, so both orderings give the same total matrix.
    const Mat& s3_total(Ordering ordering) const;

    // Per-mode pieces whose sum is the total of the requested ordering:
    //   NonNormal: ( n_R + 1/2 ,  -(n_L + 1/2) )
    //   Normal:    ( n_R       ,  -n_L         )
    std::pair<Mat, Mat> s3_parts(Ordering ordering) const;

    // S3 assembled from operator products:
    //   linear basis   (i/2)[a1 a2+ - a1+ a2 - a2 a1+ + a2+ a1]
    //   circular basis (1/2)[aR aR+ + aR+ aR] - (1/2)[aL aL+ + aL+ aL]
    // These agree with each other elementwise; they differ from s3_total
    // only on the truncation boundary (see class note).
    Mat s3_linear_product() const;
    Mat s3_circular_product() const;

private:
    FockSystem() = default;
    void verify_build_invariants() const;

    int n_max_ = 0;
    int dim_ = 0;
    Mat a_r_, adag_r_, a_l_, adag_l_;
    Mat a1_, adag1_, a2_, adag2_;
    Mat n_r_, n_l_;
    Mat s3_; // exact diagonal form, shared by both orderings
};

// v+ op v. Non-unit states are normalized (strict=false) or rejected
// (strict=true).
std::complex<double> expectation(const Mat& op, const CVec& state, bool strict = false);

// Real part of the expectation for a Hermitian operator; throws if the
// imaginary residue exceeds 1e-12.
double expectation_real(const Mat& op, const CVec& state, bool strict = false);

// Phase report assembled through the Fock route: each phase is
// kernel.value * <occ| S3 piece |occ>. Must agree with
// mode_resolved_phases() on every occupation inside the truncation.
PhaseReport phases_from_fock(const FockSystem& sys, ModeOccupation occ,
                             const PhaseKernel& kernel);

} // namespace fiberphase
