#pragma once

#include <random>

#include "sjl/points.hpp"

namespace sjl {

using Rng = std::mt19937_64;

inline constexpr double kGroupTol = 1e-10;

class SymplecticMatrix {
public:
    SymplecticMatrix() = default;
    // Throws InputError unless tM J M = J to 1e-10.
    explicit SymplecticMatrix(const Mat& m);
    static SymplecticMatrix identity(int n);

    int n() const { return static_cast<int>(m_.rows() / 2); }
    const Mat& mat() const { return m_; }
    Mat A() const { return m_.topLeftCorner(n(), n()); }
    Mat B() const { return m_.topRightCorner(n(), n()); }
    Mat C() const { return m_.bottomLeftCorner(n(), n()); }
    Mat D() const { return m_.bottomRightCorner(n(), n()); }
    SymplecticMatrix inverse() const;

private:
    Mat m_;
};

double symplectic_residual(const Mat& m);
SymplecticMatrix operator*(const SymplecticMatrix& a, const SymplecticMatrix& b);

// (lambda, mu; kappa) with kappa + mu tlambda symmetric.
struct HeisenbergElement {
    Mat lambda, mu, kappa;

    HeisenbergElement() = default;
    HeisenbergElement(const Mat& l, const Mat& u, const Mat& k);
    static HeisenbergElement zero(int m, int n);
    int m() const { return static_cast<int>(lambda.rows()); }
    int n() const { return static_cast<int>(lambda.cols()); }
};

struct JacobiElement {
    SymplecticMatrix M;
    HeisenbergElement h;

    static JacobiElement identity(int n, int m);
    int n() const { return M.n(); }
    int m() const { return h.m(); }
};

// Element of the disk-model Jacobi group; kappa is the real Heisenberg kappa carried along.
struct DiskJacobiElement {
    CMat P, Q, xi;
    Mat kappa;

    DiskJacobiElement() = default;
    DiskJacobiElement(const CMat& p, const CMat& q, const CMat& x, const Mat& k);
    int n() const { return static_cast<int>(P.rows()); }
    int m() const { return static_cast<int>(xi.rows()); }
};

struct GLnmElement {
    Mat A;
    HeisenbergElement h;

    GLnmElement() = default;
    GLnmElement(const Mat& a, const HeisenbergElement& hh);
    static GLnmElement identity(int n, int m);
};

// Sp(n,R) on H_n.
SiegelPoint sp_action(const SymplecticMatrix& M, const SiegelPoint& omega);
// t(C conj(Omega) + D)^{-1} Y (C Omega + D)^{-1}, cross-checked against sp_action.
PosDefSymMatrix im_pullback(const SymplecticMatrix& M, const SiegelPoint& omega);

JacobiElement jacobi_mul(const JacobiElement& g, const JacobiElement& gp);
JacobiElement jacobi_inv(const JacobiElement& g);
JacobiPoint jacobi_action(const JacobiElement& g, const JacobiPoint& p);
SymplecticMatrix embed_sp(const JacobiElement& g);
// Pairing lambda t(mu') - mu t(lambda').
Mat heisenberg_pairing(const Mat& l, const Mat& u, const Mat& lp, const Mat& up);
// (lambda, mu) M as a pair.
std::pair<Mat, Mat> right_sp_action(const Mat& l, const Mat& u, const SymplecticMatrix& M);

DiskJacobiElement to_disk_group(const JacobiElement& g);
JacobiElement from_disk_group(const DiskJacobiElement& g);
DiskJacobiElement disk_mul(const DiskJacobiElement& g, const DiskJacobiElement& gp);
DiskJacobiElement disk_inv(const DiskJacobiElement& g);
DiskPoint disk_action(const DiskJacobiElement& g, const DiskPoint& w);
DiskJacobiPoint disk_jacobi_action(const DiskJacobiElement& g, const DiskJacobiPoint& p);

GLnmElement glnm_mul(const GLnmElement& a, const GLnmElement& b);
GLnmElement glnm_inv(const GLnmElement& a);
std::pair<Mat, Mat> glnm_action(const GLnmElement& a, const Mat& y, const Mat& v);

// Samplers: exponentials of Lie algebra elements with entries uniform in [-scale, scale].
SymplecticMatrix random_symplectic(int n, Rng& rng, double scale = 0.5);
HeisenbergElement random_heisenberg(int m, int n, Rng& rng, double scale = 0.5);
JacobiElement random_jacobi(int n, int m, Rng& rng, double scale = 0.5);
GLnmElement random_glnm(int n, int m, Rng& rng, double scale = 0.5);
Mat random_matrix(int r, int c, Rng& rng, double scale);
Mat random_symmetric(int n, Rng& rng, double scale);

}  // namespace sjl
