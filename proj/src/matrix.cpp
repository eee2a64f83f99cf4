#include "sjl/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sjl {

double max_norm(const Mat& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }
double max_norm(const CMat& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

double rel_diff(cplx a, cplx b, double magnitude) {
    const double scale = std::max({std::abs(a), std::abs(b), magnitude});
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

RealSymMatrix::RealSymMatrix(const Mat& m) {
    if (m.rows() != m.cols()) throw InputError("matrix is not square");
    if (!m.allFinite()) throw InputError("matrix has non-finite entries");
    const double asym = max_norm(Mat(m - m.transpose()));
    if (asym > kSymTol * std::max(1.0, max_norm(m)))
        throw InputError("matrix is not symmetric (asymmetry " + std::to_string(asym) + ")");
    m_ = 0.5 * (m + m.transpose());
}

PosDefCheck posdef_check(const Mat& y) {
    if (y.rows() != y.cols()) throw InputError("posdef_check: matrix is not square");
    const int n = static_cast<int>(y.rows());
    PosDefCheck out;
    if (n == 0) {
        out.positive = true;
        out.least_minor = 1.0;
        return out;
    }
    // Elimination without pivoting: the k-th pivot is the ratio of consecutive leading minors.
    const double thresh = kPivotTol * max_norm(y);
    Mat a = y;
    bool ok = true;
    for (int k = 0; k < n && ok; ++k) {
        const double piv = a(k, k);
        if (!(piv > thresh)) {
            ok = false;
            break;
        }
        for (int i = k + 1; i < n; ++i) {
            const double f = a(i, k) / piv;
            for (int j = k; j < n; ++j) a(i, j) -= f * a(k, j);
        }
    }
    double least = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= n; ++k) least = std::min(least, y.topLeftCorner(k, k).determinant());
    out.positive = ok;
    out.least_minor = least;
    return out;
}

PosDefSymMatrix::PosDefSymMatrix(const RealSymMatrix& y) : sym_(y) {
    if (!posdef_check(y).positive) throw InputError("Y not positive definite");
}

ComplexSymMatrix::ComplexSymMatrix(const CMat& m) {
    if (m.rows() != m.cols()) throw InputError("matrix is not square");
    if (!m.allFinite()) throw InputError("matrix has non-finite entries");
    const double asym = max_norm(CMat(m - m.transpose()));
    if (asym > kSymTol * std::max(1.0, max_norm(m)))
        throw InputError("complex matrix is not symmetric");
    m_ = 0.5 * (m + m.transpose());
}

SymInverse sym_inverse(const PosDefSymMatrix& y) {
    Eigen::LLT<Mat> llt(y.mat());
    if (llt.info() != Eigen::Success) throw NumericError("sym_inverse: Cholesky factorization failed");
    const int n = y.n();
    Mat inv = llt.solve(Mat::Identity(n, n));
    SymInverse out{RealSymMatrix(Mat(0.5 * (inv + inv.transpose()))), 1.0, {}};
    // 1-norm condition estimate, exact for the small sizes used here.
    out.condition = y.mat().cwiseAbs().colwise().sum().maxCoeff() * inv.cwiseAbs().colwise().sum().maxCoeff();
    if (out.condition > kCondWarn)
        out.warnings.push_back("sym_inverse: condition estimate " + std::to_string(out.condition) + " exceeds 1e12");
    return out;
}

double det(const Mat& a) {
    if (a.rows() != a.cols()) throw InputError("det: matrix is not square");
    return a.rows() == 0 ? 1.0 : a.partialPivLu().determinant();
}

cplx det(const CMat& a) {
    if (a.rows() != a.cols()) throw InputError("det: matrix is not square");
    return a.rows() == 0 ? cplx(1.0) : a.partialPivLu().determinant();
}

Mat symplectic_form(int n) {
    Mat j = Mat::Zero(2 * n, 2 * n);
    j.topRightCorner(n, n) = Mat::Identity(n, n);
    j.bottomLeftCorner(n, n) = -Mat::Identity(n, n);
    return j;
}

}  // namespace sjl
