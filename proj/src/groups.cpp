#include "sjl/groups.hpp"

#include <cmath>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

namespace sjl {

namespace {

const cplx I(0.0, 1.0);

CMat to_c(const Mat& a) { return a.cast<cplx>(); }

CMat checked_inverse(const CMat& a, const char* what) {
    Eigen::PartialPivLU<CMat> lu(a);
    CMat inv = lu.inverse();
    const double cond = a.cwiseAbs().colwise().sum().maxCoeff() * inv.cwiseAbs().colwise().sum().maxCoeff();
    if (!inv.allFinite() || cond > kCondWarn)
        throw NumericError(std::string(what) + " is numerically singular");
    return inv;
}

void require_shape(const Mat& a, int r, int c, const char* what) {
    if (a.rows() != r || a.cols() != c)
        throw InputError(std::string(what) + " has shape " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + ", expected " + std::to_string(r) + "x" + std::to_string(c));
}

}  // namespace

double symplectic_residual(const Mat& m) {
    const int n = static_cast<int>(m.rows() / 2);
    const Mat j = symplectic_form(n);
    return max_norm(Mat(m.transpose() * j * m - j));
}

SymplecticMatrix::SymplecticMatrix(const Mat& m) {
    if (m.rows() != m.cols() || m.rows() % 2 != 0) throw InputError("symplectic matrix must be 2n x 2n");
    const double r = symplectic_residual(m);
    if (!(r <= kGroupTol)) throw InputError("matrix is not symplectic (residual " + std::to_string(r) + ")");
    m_ = m;
}

SymplecticMatrix SymplecticMatrix::identity(int n) { return SymplecticMatrix(Mat::Identity(2 * n, 2 * n)); }

SymplecticMatrix SymplecticMatrix::inverse() const {
    // M^{-1} = -J tM J.
    const Mat j = symplectic_form(n());
    SymplecticMatrix out;
    out.m_ = -j * m_.transpose() * j;
    return out;
}

SymplecticMatrix operator*(const SymplecticMatrix& a, const SymplecticMatrix& b) {
    return SymplecticMatrix(Mat(a.mat() * b.mat()));
}

HeisenbergElement::HeisenbergElement(const Mat& l, const Mat& u, const Mat& k) : lambda(l), mu(u) {
    const int m = static_cast<int>(l.rows());
    const int n = static_cast<int>(l.cols());
    require_shape(u, m, n, "mu");
    require_shape(k, m, m, "kappa");
    const Mat s = k + u * l.transpose();
    const double asym = max_norm(Mat(s - s.transpose()));
    if (asym > kGroupTol * std::max(1.0, max_norm(s)))
        throw InputError("kappa + mu t(lambda) is not symmetric");
    kappa = 0.5 * (s + s.transpose()) - u * l.transpose();
}

HeisenbergElement HeisenbergElement::zero(int m, int n) {
    return HeisenbergElement(Mat::Zero(m, n), Mat::Zero(m, n), Mat::Zero(m, m));
}

JacobiElement JacobiElement::identity(int n, int m) {
    return {SymplecticMatrix::identity(n), HeisenbergElement::zero(m, n)};
}

DiskJacobiElement::DiskJacobiElement(const CMat& p, const CMat& q, const CMat& x, const Mat& k)
    : P(p), Q(q), xi(x), kappa(k) {
    const int n = static_cast<int>(p.rows());
    const CMat r1 = p.transpose() * p.conjugate() - q.conjugate().transpose() * q - CMat::Identity(n, n);
    const CMat r2 = p.transpose() * q.conjugate() - q.conjugate().transpose() * p;
    if (max_norm(r1) > kGroupTol || max_norm(r2) > kGroupTol)
        throw InputError("(P, Q) does not satisfy the disk-group relations");
    if (x.cols() != n || k.rows() != x.rows() || k.cols() != x.rows())
        throw InputError("disk element components have inconsistent shapes");
}

GLnmElement::GLnmElement(const Mat& a, const HeisenbergElement& hh) : A(a), h(hh) {
    if (a.rows() != a.cols() || a.cols() != hh.n()) throw InputError("A must be n x n");
    if (!(std::abs(det(a)) > 0.0)) throw InputError("A is singular");
}

GLnmElement GLnmElement::identity(int n, int m) {
    return GLnmElement(Mat::Identity(n, n), HeisenbergElement::zero(m, n));
}

SiegelPoint sp_action(const SymplecticMatrix& M, const SiegelPoint& omega) {
    if (M.n() != omega.n()) throw InputError("sp_action: degree mismatch");
    const CMat& om = omega.omega();
    const CMat num = to_c(M.A()) * om + to_c(M.B());
    const CMat den = to_c(M.C()) * om + to_c(M.D());
    return SiegelPoint(CMat(num * checked_inverse(den, "C Omega + D")));
}

PosDefSymMatrix im_pullback(const SymplecticMatrix& M, const SiegelPoint& omega) {
    const CMat& om = omega.omega();
    const CMat den = to_c(M.C()) * om + to_c(M.D());
    const CMat deninv = checked_inverse(den, "C Omega + D");
    const CMat denbar_inv = deninv.conjugate();
    const CMat y = denbar_inv.transpose() * to_c(omega.Y()) * deninv;
    const Mat yr = y.real();
    const Mat direct = sp_action(M, omega).Y();
    if (max_norm(Mat(yr - direct)) > 1e-10 * std::max(1.0, max_norm(direct)) || max_norm(Mat(y.imag())) > 1e-10 * std::max(1.0, max_norm(direct)))
        throw NumericError("im_pullback disagrees with Im(sp_action)");
    return PosDefSymMatrix(yr);
}

std::pair<Mat, Mat> right_sp_action(const Mat& l, const Mat& u, const SymplecticMatrix& M) {
    const int n = M.n();
    Mat lm(l.rows(), 2 * n);
    lm << l, u;
    const Mat r = lm * M.mat();
    return {r.leftCols(n), r.rightCols(n)};
}

Mat heisenberg_pairing(const Mat& l, const Mat& u, const Mat& lp, const Mat& up) {
    return l * up.transpose() - u * lp.transpose();
}

JacobiElement jacobi_mul(const JacobiElement& g, const JacobiElement& gp) {
    if (g.n() != gp.n() || g.m() != gp.m()) throw InputError("jacobi_mul: dimension mismatch");
    auto [lt, ut] = right_sp_action(g.h.lambda, g.h.mu, gp.M);
    const Mat kappa = g.h.kappa + gp.h.kappa + lt * gp.h.mu.transpose() - ut * gp.h.lambda.transpose();
    return {g.M * gp.M, HeisenbergElement(lt + gp.h.lambda, ut + gp.h.mu, kappa)};
}

JacobiElement jacobi_inv(const JacobiElement& g) {
    const SymplecticMatrix minv = g.M.inverse();
    auto [lt, ut] = right_sp_action(g.h.lambda, g.h.mu, minv);
    const Mat kappa = -g.h.kappa + lt * ut.transpose() - ut * lt.transpose();
    return {minv, HeisenbergElement(-lt, -ut, kappa)};
}

JacobiPoint jacobi_action(const JacobiElement& g, const JacobiPoint& p) {
    if (g.n() != p.n() || g.m() != p.m()) throw InputError("jacobi_action: dimension mismatch");
    const CMat& om = p.omega();
    const CMat den = to_c(g.M.C()) * om + to_c(g.M.D());
    const CMat deninv = checked_inverse(den, "C Omega + D");
    const CMat z = (p.Z() + to_c(g.h.lambda) * om + to_c(g.h.mu)) * deninv;
    return JacobiPoint(sp_action(g.M, p.siegel()), z);
}

SymplecticMatrix embed_sp(const JacobiElement& g) {
    const int n = g.n(), m = g.m();
    const Mat A = g.M.A(), B = g.M.B(), C = g.M.C(), D = g.M.D();
    const Mat& l = g.h.lambda;
    const Mat& u = g.h.mu;
    const int N = n + m;
    Mat e = Mat::Zero(2 * N, 2 * N);
    e.block(0, 0, n, n) = A;
    e.block(0, N, n, n) = B;
    e.block(0, N + n, n, m) = A * u.transpose() - B * l.transpose();
    e.block(n, 0, m, n) = l;
    e.block(n, n, m, m) = Mat::Identity(m, m);
    e.block(n, N, m, n) = u;
    e.block(n, N + n, m, m) = g.h.kappa;
    e.block(N, 0, n, n) = C;
    e.block(N, N, n, n) = D;
    e.block(N, N + n, n, m) = C * u.transpose() - D * l.transpose();
    e.block(N + n, N + n, m, m) = Mat::Identity(m, m);
    return SymplecticMatrix(e);
}

DiskJacobiElement to_disk_group(const JacobiElement& g) {
    const CMat A = to_c(g.M.A()), B = to_c(g.M.B()), C = to_c(g.M.C()), D = to_c(g.M.D());
    const CMat P = 0.5 * ((A + D) + I * (B - C));
    const CMat Q = 0.5 * ((A - D) - I * (B + C));
    const CMat xi = 0.5 * (to_c(g.h.lambda) + I * to_c(g.h.mu));
    return DiskJacobiElement(P, Q, xi, g.h.kappa);
}

JacobiElement from_disk_group(const DiskJacobiElement& g) {
    // P + Q = A - iC and P - Q = D + iB.
    const CMat s = g.P + g.Q, d = g.P - g.Q;
    const int n = g.n();
    Mat m(2 * n, 2 * n);
    m << s.real(), d.imag(), -s.imag(), d.real();
    return {SymplecticMatrix(m), HeisenbergElement(2.0 * g.xi.real(), 2.0 * g.xi.imag(), g.kappa)};
}

DiskJacobiElement disk_mul(const DiskJacobiElement& g, const DiskJacobiElement& gp) {
    const CMat xt = g.xi * gp.P + g.xi.conjugate() * gp.Q.conjugate();
    const CMat cross = 2.0 * I * (xt * gp.xi.conjugate().transpose() - xt.conjugate() * gp.xi.transpose());
    const Mat kappa = g.kappa + gp.kappa + cross.real();
    return DiskJacobiElement(g.P * gp.P + g.Q * gp.Q.conjugate(), g.P * gp.Q + g.Q * gp.P.conjugate(),
                             xt + gp.xi, kappa);
}

DiskJacobiElement disk_inv(const DiskJacobiElement& g) { return to_disk_group(jacobi_inv(from_disk_group(g))); }

DiskPoint disk_action(const DiskJacobiElement& g, const DiskPoint& w) {
    const CMat den = g.Q.conjugate() * w.W() + g.P.conjugate();
    return DiskPoint(CMat((g.P * w.W() + g.Q) * checked_inverse(den, "conj(Q) W + conj(P)")));
}

DiskJacobiPoint disk_jacobi_action(const DiskJacobiElement& g, const DiskJacobiPoint& p) {
    if (g.n() != p.n() || g.m() != p.m()) throw InputError("disk_jacobi_action: dimension mismatch");
    const CMat den = g.Q.conjugate() * p.W() + g.P.conjugate();
    const CMat deninv = checked_inverse(den, "conj(Q) W + conj(P)");
    const CMat w = (g.P * p.W() + g.Q) * deninv;
    const CMat eta = (p.eta() + g.xi * p.W() + g.xi.conjugate()) * deninv;
    return DiskJacobiPoint(DiskPoint(w), eta);
}

GLnmElement glnm_mul(const GLnmElement& a, const GLnmElement& b) {
    const Mat binvt = b.A.inverse().transpose();
    const Mat lt = a.h.lambda * b.A;
    const Mat ut = a.h.mu * binvt;
    const Mat kappa = a.h.kappa + b.h.kappa + lt * b.h.mu.transpose() - ut * b.h.lambda.transpose();
    return GLnmElement(a.A * b.A, HeisenbergElement(lt + b.h.lambda, ut + b.h.mu, kappa));
}

GLnmElement glnm_inv(const GLnmElement& a) {
    // Solve a * x = identity componentwise.
    const Mat ainv = a.A.inverse();
    const Mat lt = a.h.lambda * ainv;      // lambda B with B = A^{-1}
    const Mat ut = a.h.mu * a.A.transpose();  // mu tB^{-1}
    const Mat kappa = -a.h.kappa + lt * ut.transpose() - ut * lt.transpose();
    return GLnmElement(ainv, HeisenbergElement(-lt, -ut, kappa));
}

std::pair<Mat, Mat> glnm_action(const GLnmElement& a, const Mat& y, const Mat& v) {
    PosDefSymMatrix yy(y);
    const Mat yp = a.A * yy.mat() * a.A.transpose();
    const Mat vp = (v + a.h.lambda * yy.mat() + a.h.mu) * a.A.transpose();
    return {PosDefSymMatrix(yp).mat(), vp};
}

Mat random_matrix(int r, int c, Rng& rng, double scale) {
    std::uniform_real_distribution<double> dist(-scale, scale);
    Mat a(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) a(i, j) = dist(rng);
    return a;
}

Mat random_symmetric(int n, Rng& rng, double scale) {
    std::uniform_real_distribution<double> dist(-scale, scale);
    Mat a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) a(i, j) = a(j, i) = dist(rng);
    return a;
}

SymplecticMatrix random_symplectic(int n, Rng& rng, double scale) {
    // sp(n,R) = {[[a, b], [c, -ta]] : b, c symmetric}.
    const Mat a = random_matrix(n, n, rng, scale);
    const Mat b = random_symmetric(n, rng, scale);
    const Mat c = random_symmetric(n, rng, scale);
    Mat x(2 * n, 2 * n);
    x << a, b, c, -a.transpose();
    Mat m = x.exp();
    return SymplecticMatrix(m);
}

HeisenbergElement random_heisenberg(int m, int n, Rng& rng, double scale) {
    const Mat l = random_matrix(m, n, rng, scale);
    const Mat u = random_matrix(m, n, rng, scale);
    const Mat s = random_symmetric(m, rng, scale);
    return HeisenbergElement(l, u, s - u * l.transpose());
}

JacobiElement random_jacobi(int n, int m, Rng& rng, double scale) {
    SymplecticMatrix M = random_symplectic(n, rng, scale);
    return {M, random_heisenberg(m, n, rng, scale)};
}

GLnmElement random_glnm(int n, int m, Rng& rng, double scale) {
    const Mat a = random_matrix(n, n, rng, scale).exp();
    return GLnmElement(a, random_heisenberg(m, n, rng, scale));
}

}  // namespace sjl
