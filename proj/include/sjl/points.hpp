#pragma once

#include "sjl/matrix.hpp"

namespace sjl {

// Omega = X + iY in H_n.
class SiegelPoint {
public:
    SiegelPoint() = default;
    explicit SiegelPoint(const CMat& omega);
    SiegelPoint(const Mat& x, const Mat& y);

    int n() const { return static_cast<int>(omega_.rows()); }
    const CMat& omega() const { return omega_; }
    Mat X() const { return omega_.real(); }
    Mat Y() const { return omega_.imag(); }

private:
    CMat omega_;
};

// (Omega, Z) in H_n x C^{(m,n)}.
class JacobiPoint {
public:
    JacobiPoint() = default;
    JacobiPoint(const SiegelPoint& omega, const CMat& z);

    int n() const { return omega_.n(); }
    int m() const { return static_cast<int>(z_.rows()); }
    const SiegelPoint& siegel() const { return omega_; }
    const CMat& omega() const { return omega_.omega(); }
    const CMat& Z() const { return z_; }
    Mat U() const { return z_.real(); }
    Mat V() const { return z_.imag(); }

private:
    SiegelPoint omega_;
    CMat z_;
};

inline constexpr double kDiskMargin = 1e-12;

// W in the generalized unit disk D_n.
class DiskPoint {
public:
    DiskPoint() = default;
    explicit DiskPoint(const CMat& w);

    int n() const { return static_cast<int>(w_.rows()); }
    const CMat& W() const { return w_; }
    // Least eigenvalue of the Hermitian matrix I - conj(W) W.
    double margin() const;

private:
    CMat w_;
};

class DiskJacobiPoint {
public:
    DiskJacobiPoint() = default;
    DiskJacobiPoint(const DiskPoint& w, const CMat& eta);

    int n() const { return w_.n(); }
    int m() const { return static_cast<int>(eta_.rows()); }
    const DiskPoint& disk() const { return w_; }
    const CMat& W() const { return w_.W(); }
    const CMat& eta() const { return eta_; }

private:
    DiskPoint w_;
    CMat eta_;
};

double disk_margin(const CMat& w);

}  // namespace sjl
