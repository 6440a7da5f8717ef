#include "fiberphase/fock.hpp"

#include <cmath>
#include <iostream>

namespace fiberphase {

namespace {

using Complex = std::complex<double>;
const Complex kI(0.0, 1.0);

// single-mode annihilation operator on the (n_max+1)-dim number basis
Mat mode_annihilator(int n_max) {
    Mat a = Mat::Zero(n_max + 1, n_max + 1);
    for (int n = 1; n <= n_max; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return a;
}

Mat kron(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

} // namespace

FockSystem FockSystem::build(int n_max) {
    if (n_max < 1) throw config_error("fock: n_max must be >= 1");
    if (n_max > kMaxTruncation)
        throw resource_error("fock: n_max " + std::to_string(n_max) +
                             " exceeds the documented truncation limit " +
                             std::to_string(kMaxTruncation) +
                             " (dense matrices grow as (n_max+1)^4)");

    FockSystem sys;
    sys.n_max_ = n_max;
    sys.dim_ = (n_max + 1) * (n_max + 1);

    const Mat a = mode_annihilator(n_max);
    const Mat id = Mat::Identity(n_max + 1, n_max + 1);
    sys.a_r_ = kron(a, id); // n_R major
    sys.a_l_ = kron(id, a);
    sys.adag_r_ = sys.a_r_.adjoint();
    sys.adag_l_ = sys.a_l_.adjoint();

    // linear polarization basis:
    //   a_R = (a1 - i a2)/sqrt2,  a_L = (a1 + i a2)/sqrt2
    // inverted so both bases act on the same truncated space
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    sys.a1_ = (sys.a_r_ + sys.a_l_) * inv_sqrt2;
    sys.a2_ = kI * (sys.a_r_ - sys.a_l_) * inv_sqrt2;
    sys.adag1_ = sys.a1_.adjoint();
    sys.adag2_ = sys.a2_.adjoint();

    // number operators and S3 as exact integer diagonals (the restriction of
    // the untruncated operators to the kept basis); adag*a reproduces them
    // to machine precision, which verify_build_invariants checks
    sys.n_r_ = Mat::Zero(sys.dim_, sys.dim_);
    sys.n_l_ = Mat::Zero(sys.dim_, sys.dim_);
    for (int nr = 0; nr <= n_max; ++nr) {
        for (int nl = 0; nl <= n_max; ++nl) {
            const int idx = nr * (n_max + 1) + nl;
            sys.n_r_(idx, idx) = static_cast<double>(nr);
            sys.n_l_(idx, idx) = static_cast<double>(nl);
        }
    }
    // the +1/2 zero-point halves cancel between the modes
    sys.s3_ = sys.n_r_ - sys.n_l_;

    sys.verify_build_invariants();
    return sys;
}

int FockSystem::basis_index(ModeOccupation occ) const {
    if (occ.n_right < 0 || occ.n_left < 0 || occ.n_right > n_max_ || occ.n_left > n_max_)
        throw config_error("fock: occupation (" + std::to_string(occ.n_right) + "," +
                           std::to_string(occ.n_left) + ") outside truncation n_max=" +
                           std::to_string(n_max_));
    return occ.n_right * (n_max_ + 1) + occ.n_left;
}

CVec FockSystem::basis_vector(ModeOccupation occ) const {
    CVec v = CVec::Zero(dim_);
    v(basis_index(occ)) = 1.0;
    return v;
}

const Mat& FockSystem::s3_total(Ordering) const {
    // both orderings share the matrix: the zero-point halves cancel
    return s3_;
}

std::pair<Mat, Mat> FockSystem::s3_parts(Ordering ordering) const {
    const Mat id = Mat::Identity(dim_, dim_);
    if (ordering == Ordering::NonNormal)
        return {n_r_ + 0.5 * id, -(n_l_ + 0.5 * id)};
    return {n_r_, -n_l_};
}

Mat FockSystem::s3_linear_product() const {
    return 0.5 * kI *
           (a1_ * adag2_ - adag1_ * a2_ - a2_ * adag1_ + adag2_ * a1_);
}

Mat FockSystem::s3_circular_product() const {
    return 0.5 * (a_r_ * adag_r_ + adag_r_ * a_r_) -
           0.5 * (a_l_ * adag_l_ + adag_l_ * a_l_);
}

void FockSystem::verify_build_invariants() const {
    const double tol = 1e-13;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

    // circular operators expressed through the linear pair
    if (((a1_ - kI * a2_) * inv_sqrt2 - a_r_).cwiseAbs().maxCoeff() > tol ||
        ((a1_ + kI * a2_) * inv_sqrt2 - a_l_).cwiseAbs().maxCoeff() > tol ||
        ((adag1_ + kI * adag2_) * inv_sqrt2 - adag_r_).cwiseAbs().maxCoeff() > tol ||
        ((adag1_ - kI * adag2_) * inv_sqrt2 - adag_l_).cwiseAbs().maxCoeff() > tol)
        throw numerics_error("fock build: circular/linear operator relation violated");

    // number operators from products agree with the exact diagonals
    if ((adag_r_ * a_r_ - n_r_).cwiseAbs().maxCoeff() > tol ||
        (adag_l_ * a_l_ - n_l_).cwiseAbs().maxCoeff() > tol)
        throw numerics_error("fock build: adag*a deviates from the number operator");

    // [a, adag] = 1 away from the truncation boundary of the mode
    const Mat comm_r = a_r_ * adag_r_ - adag_r_ * a_r_;
    const Mat comm_l = a_l_ * adag_l_ - adag_l_ * a_l_;
    for (int nr = 0; nr <= n_max_; ++nr) {
        for (int nl = 0; nl <= n_max_; ++nl) {
            const int idx = nr * (n_max_ + 1) + nl;
            if (nr < n_max_ && std::abs(comm_r(idx, idx) - 1.0) > tol)
                throw numerics_error("fock build: [a_R, a_R+] != 1 inside truncation");
            if (nl < n_max_ && std::abs(comm_l(idx, idx) - 1.0) > tol)
                throw numerics_error("fock build: [a_L, a_L+] != 1 inside truncation");
        }
    }

    const Mat s3_lin = s3_linear_product();
    const Mat s3_circ = s3_circular_product();
    if ((s3_lin - s3_circ).cwiseAbs().maxCoeff() > tol)
        throw numerics_error("fock build: linear and circular S3 constructions disagree");
    if ((s3_lin - s3_lin.adjoint()).cwiseAbs().maxCoeff() > tol ||
        (s3_ - s3_.adjoint()).cwiseAbs().maxCoeff() > tol)
        throw numerics_error("fock build: S3 not Hermitian");

    // number conservation
    if ((s3_ * n_r_ - n_r_ * s3_).cwiseAbs().maxCoeff() > 1e-14 ||
        (s3_ * n_l_ - n_l_ * s3_).cwiseAbs().maxCoeff() > 1e-14)
        throw numerics_error("fock build: S3 does not commute with the number operators");
}

std::complex<double> expectation(const Mat& op, const CVec& state, bool strict) {
    if (op.rows() != op.cols() || op.rows() != state.size())
        throw config_error("expectation: dimension mismatch");
    const double nrm = state.norm();
    if (nrm == 0.0) throw config_error("expectation: zero state vector");
    if (std::abs(nrm - 1.0) > 1e-9) {
        if (strict)
            throw config_error("expectation: state vector is not normalized (strict mode)");
        std::cerr << "expectation: normalizing state with norm " << nrm << "\n";
        const CVec unit = state / nrm;
        return unit.dot(op * unit);
    }
    return state.dot(op * state);
}

double expectation_real(const Mat& op, const CVec& state, bool strict) {
    const std::complex<double> v = expectation(op, state, strict);
    if (std::abs(v.imag()) > 1e-12 * std::max(1.0, std::abs(v.real())))
        throw numerics_error("expectation: imaginary residue " + std::to_string(v.imag()) +
                             " on a supposedly Hermitian operator");
    return v.real();
}

PhaseReport phases_from_fock(const FockSystem& sys, ModeOccupation occ,
                             const PhaseKernel& kernel) {
    const CVec state = sys.basis_vector(occ); // validates the occupation
    const double k = kernel.value_rad;

    const auto [r_nn, l_nn] = sys.s3_parts(Ordering::NonNormal);
    const auto [r_n, l_n] = sys.s3_parts(Ordering::Normal);

    PhaseReport rep;
    rep.kernel = kernel;
    rep.right.sigma = +1;
    rep.right.occupation = occ.n_right;
    rep.right.quantal_rad = expectation_real(r_n, state) * k;
    // the vacuum piece is the ordering gap, exactly +/- identity/2
    rep.right.vacuum_rad = expectation_real(Mat(r_nn - r_n), state) * k;
    rep.right.total_rad = rep.right.quantal_rad + rep.right.vacuum_rad;
    rep.left.sigma = -1;
    rep.left.occupation = occ.n_left;
    rep.left.quantal_rad = expectation_real(l_n, state) * k;
    rep.left.vacuum_rad = expectation_real(Mat(l_nn - l_n), state) * k;
    rep.left.total_rad = rep.left.quantal_rad + rep.left.vacuum_rad;
    rep.multiphoton_rad = expectation_real(sys.s3_total(Ordering::NonNormal), state) * k;
    rep.vacuum_sum_rad = rep.right.vacuum_rad + rep.left.vacuum_rad;
    return rep;
}

} // namespace fiberphase
