#pragma once

#include <complex>

#include <Eigen/Dense>

#include "sjl/errors.hpp"

namespace sjl {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXd;
using CMat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXd;
using CVec = Eigen::VectorXcd;

inline constexpr double kSymTol = 1e-12;
inline constexpr double kPivotTol = 1e-14;
inline constexpr double kCondWarn = 1e12;

double max_norm(const Mat& a);
double max_norm(const CMat& a);
// |a - b| relative to the largest of |a|, |b| and magnitude; 0 when all three vanish.
double rel_diff(cplx a, cplx b, double magnitude = 0.0);

class RealSymMatrix {
public:
    RealSymMatrix() = default;
    // Symmetrizes when the asymmetry is within round-off, throws InputError otherwise.
    explicit RealSymMatrix(const Mat& m);

    int n() const { return static_cast<int>(m_.rows()); }
    const Mat& mat() const { return m_; }
    double operator()(int i, int j) const { return m_(i, j); }

private:
    Mat m_;
};

struct PosDefCheck {
    bool positive = false;
    double least_minor = 0.0;
};

PosDefCheck posdef_check(const Mat& y);
inline PosDefCheck posdef_check(const RealSymMatrix& y) { return posdef_check(y.mat()); }

class PosDefSymMatrix {
public:
    PosDefSymMatrix() = default;
    explicit PosDefSymMatrix(const RealSymMatrix& y);
    explicit PosDefSymMatrix(const Mat& y) : PosDefSymMatrix(RealSymMatrix(y)) {}

    int n() const { return sym_.n(); }
    const Mat& mat() const { return sym_.mat(); }
    const RealSymMatrix& sym() const { return sym_; }

private:
    RealSymMatrix sym_;
};

class ComplexSymMatrix {
public:
    ComplexSymMatrix() = default;
    // Complex symmetric, not Hermitian.
    explicit ComplexSymMatrix(const CMat& m);

    int n() const { return static_cast<int>(m_.rows()); }
    const CMat& mat() const { return m_; }

private:
    CMat m_;
};

struct SymInverse {
    RealSymMatrix inverse;
    double condition = 1.0;
    Warnings warnings;
};

SymInverse sym_inverse(const PosDefSymMatrix& y);

double det(const Mat& a);
cplx det(const CMat& a);
inline double det(const RealSymMatrix& a) { return det(a.mat()); }
inline double det(const PosDefSymMatrix& a) { return det(a.mat()); }
inline cplx det(const ComplexSymMatrix& a) { return det(a.mat()); }

// J_n = [[0, I], [-I, 0]].
Mat symplectic_form(int n);

}  // namespace sjl
