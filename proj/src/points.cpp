#include "sjl/points.hpp"

#include <Eigen/Eigenvalues>

namespace sjl {

SiegelPoint::SiegelPoint(const CMat& omega) {
    ComplexSymMatrix s(omega);
    if (!posdef_check(Mat(s.mat().imag())).positive) throw InputError("Y not positive definite");
    omega_ = s.mat();
}

SiegelPoint::SiegelPoint(const Mat& x, const Mat& y) {
    RealSymMatrix xs(x);
    PosDefSymMatrix ys(y);
    if (xs.n() != ys.n()) throw InputError("X and Y differ in size");
    omega_ = xs.mat().cast<cplx>() + cplx(0, 1) * ys.mat().cast<cplx>();
}

JacobiPoint::JacobiPoint(const SiegelPoint& omega, const CMat& z) : omega_(omega), z_(z) {
    if (z.cols() != omega.n()) throw InputError("Z must have n columns");
    if (!z.allFinite()) throw InputError("Z has non-finite entries");
}

double disk_margin(const CMat& w) {
    const int n = static_cast<int>(w.rows());
    CMat h = CMat::Identity(n, n) - w.conjugate() * w;
    h = 0.5 * (h + h.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<CMat> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

DiskPoint::DiskPoint(const CMat& w) {
    ComplexSymMatrix s(w);
    if (disk_margin(s.mat()) < kDiskMargin) throw DomainError("I - conj(W) W not positive definite");
    w_ = s.mat();
}

double DiskPoint::margin() const { return disk_margin(w_); }

DiskJacobiPoint::DiskJacobiPoint(const DiskPoint& w, const CMat& eta) : w_(w), eta_(eta) {
    if (eta.cols() != w.n()) throw InputError("eta must have n columns");
    if (!eta.allFinite()) throw InputError("eta has non-finite entries");
}

}  // namespace sjl
