#include "sjl/geometry.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

namespace sjl {

namespace {

const cplx I(0.0, 1.0);

CMat to_c(const Mat& a) { return a.cast<cplx>(); }

CMat inv(const CMat& a) { return a.partialPivLu().inverse(); }

// Real symmetric increment: a diagonal coordinate moves one entry, an off-diagonal one moves two.
Mat sym_increment(const Vec& t, int off, int n) { return vec_to_sym(t.segment(off, sym_dim(n)), n); }

Mat rect_increment(const Vec& t, int off, int m, int n) {
    Mat r(m, n);
    for (int k = 0; k < m; ++k)
        for (int l = 0; l < n; ++l) r(k, l) = t(off + k * n + l);
    return r;
}

// The Siegel-Jacobi quadratic form for complex increments dOmega, dZ.
cplx jacobi_q(const Mat& y, const Mat& v, const CMat& dO, const CMat& dZ) {
    const CMat yi = to_c(y.inverse());
    const CMat vc = to_c(v);
    const CMat dOb = dO.conjugate(), dZb = dZ.conjugate();
    cplx q = (yi * dO * yi * dOb).trace();
    if (dZ.size() > 0) {
        q += (yi * vc.transpose() * vc * yi * dO * yi * dOb).trace();
        q += (yi * dZ.transpose() * dZb).trace();
        q -= (vc * yi * dO * yi * dZb.transpose() + vc * yi * dOb * yi * dZ.transpose()).trace();
    }
    return q;
}

void require_spd(const GramResult& g, const std::string& what) {
    const double scale = std::max(1.0, max_norm(g.gram));
    if (g.imag_residue > 1e-10 * scale)
        throw MetricEvaluationError(what + ": polarization left an imaginary residue of " +
                                    std::to_string(g.imag_residue));
    if (!posdef_check(g.gram).positive) throw MetricEvaluationError(what + ": Gram matrix is not positive definite");
}

}  // namespace

std::string chart_name(Chart c) {
    switch (c) {
        case Chart::H: return "H";
        case Chart::HJ: return "HJ";
        case Chart::D: return "D";
        case Chart::DJ: return "DJ";
        case Chart::PV: return "PV";
        case Chart::A: return "A";
    }
    return "?";
}

int sym_dim(int n) { return n * (n + 1) / 2; }

int chart_dim(Chart c, int n, int m) {
    switch (c) {
        case Chart::H:
        case Chart::D: return 2 * sym_dim(n);
        case Chart::HJ:
        case Chart::DJ: return 2 * sym_dim(n) + 2 * m * n;
        case Chart::PV: return sym_dim(n) + m * n;
        case Chart::A: return 2 * m * n;
    }
    return 0;
}

Vec sym_to_vec(const Mat& s) {
    const int n = static_cast<int>(s.rows());
    Vec v(sym_dim(n));
    int a = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) v(a++) = s(i, j);
    return v;
}

Mat vec_to_sym(const Vec& v, int n) {
    Mat s(n, n);
    int a = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) s(i, j) = s(j, i) = v(a++);
    return s;
}

static Vec rect_to_vec(const Mat& r) {
    Vec v(r.size());
    for (int k = 0; k < r.rows(); ++k)
        for (int l = 0; l < r.cols(); ++l) v(k * r.cols() + l) = r(k, l);
    return v;
}

static void check_len(const Vec& x, Chart c, int n, int m) {
    if (x.size() != chart_dim(c, n, m))
        throw InputError("chart " + chart_name(c) + " expects " + std::to_string(chart_dim(c, n, m)) +
                         " coordinates, got " + std::to_string(x.size()));
}

Vec siegel_to_chart(const SiegelPoint& p) {
    const int t = sym_dim(p.n());
    Vec v(2 * t);
    v << sym_to_vec(p.X()), sym_to_vec(p.Y());
    return v;
}

SiegelPoint chart_to_siegel(const Vec& x, int n) {
    check_len(x, Chart::H, n, 0);
    const int t = sym_dim(n);
    return SiegelPoint(vec_to_sym(x.head(t), n), vec_to_sym(x.segment(t, t), n));
}

Vec jacobi_to_chart(const JacobiPoint& p) {
    const int t = sym_dim(p.n()), mn = p.m() * p.n();
    Vec v(2 * t + 2 * mn);
    v << siegel_to_chart(p.siegel()), rect_to_vec(p.U()), rect_to_vec(p.V());
    return v;
}

JacobiPoint chart_to_jacobi(const Vec& x, int n, int m) {
    check_len(x, Chart::HJ, n, m);
    const int t = sym_dim(n), mn = m * n;
    const Mat u = rect_increment(x, 2 * t, m, n), v = rect_increment(x, 2 * t + mn, m, n);
    return JacobiPoint(chart_to_siegel(x.head(2 * t), n), CMat(to_c(u) + I * to_c(v)));
}

Vec disk_to_chart(const DiskPoint& p) {
    const int t = sym_dim(p.n());
    Vec v(2 * t);
    v << sym_to_vec(p.W().real()), sym_to_vec(p.W().imag());
    return v;
}

DiskPoint chart_to_disk(const Vec& x, int n) {
    check_len(x, Chart::D, n, 0);
    const int t = sym_dim(n);
    return DiskPoint(CMat(to_c(vec_to_sym(x.head(t), n)) + I * to_c(vec_to_sym(x.segment(t, t), n))));
}

Vec disk_jacobi_to_chart(const DiskJacobiPoint& p) {
    const int t = sym_dim(p.n()), mn = p.m() * p.n();
    Vec v(2 * t + 2 * mn);
    v << disk_to_chart(p.disk()), rect_to_vec(p.eta().real()), rect_to_vec(p.eta().imag());
    return v;
}

DiskJacobiPoint chart_to_disk_jacobi(const Vec& x, int n, int m) {
    check_len(x, Chart::DJ, n, m);
    const int t = sym_dim(n), mn = m * n;
    const Mat a = rect_increment(x, 2 * t, m, n), b = rect_increment(x, 2 * t + mn, m, n);
    return DiskJacobiPoint(chart_to_disk(x.head(2 * t), n), CMat(to_c(a) + I * to_c(b)));
}

Vec pv_to_chart(const Mat& y, const Mat& v) {
    const int t = sym_dim(static_cast<int>(y.rows()));
    Vec out(t + v.size());
    out << sym_to_vec(y), rect_to_vec(v);
    return out;
}

std::pair<Mat, Mat> chart_to_pv(const Vec& x, int n, int m) {
    check_len(x, Chart::PV, n, m);
    const int t = sym_dim(n);
    return {vec_to_sym(x.head(t), n), rect_increment(x, t, m, n)};
}

SiegelPoint cayley(const DiskPoint& w) {
    const int n = w.n();
    const CMat id = CMat::Identity(n, n);
    const CMat d = id - w.W();
    if (std::abs(d.determinant()) < 1e-14) throw DomainError("cayley: I - W is singular (boundary point)");
    return SiegelPoint(CMat(I * (id + w.W()) * inv(d)));
}

DiskPoint cayley_inv(const SiegelPoint& omega) {
    const int n = omega.n();
    const CMat id = CMat::Identity(n, n);
    return DiskPoint(CMat((omega.omega() - I * id) * inv(omega.omega() + I * id)));
}

JacobiPoint partial_cayley(const DiskJacobiPoint& p) {
    const int n = p.n();
    const CMat id = CMat::Identity(n, n);
    const CMat d = id - p.W();
    if (std::abs(d.determinant()) < 1e-14) throw DomainError("partial_cayley: I - W is singular (boundary point)");
    const CMat di = inv(d);
    return JacobiPoint(SiegelPoint(CMat(I * (id + p.W()) * di)), CMat(2.0 * I * p.eta() * di));
}

DiskJacobiPoint partial_cayley_inv(const JacobiPoint& q) {
    const int n = q.n();
    const CMat id = CMat::Identity(n, n);
    const CMat s = inv(q.omega() + I * id);
    return DiskJacobiPoint(DiskPoint(CMat((q.omega() - I * id) * s)), CMat(q.Z() * s));
}

std::string metric_name(const MetricId& id) {
    const std::string nm = "(" + std::to_string(id.n) + (id.m > 0 || id.tag == MetricTag::Jacobi || id.tag == MetricTag::DiskJacobi || id.tag == MetricTag::Abelian ? "," + std::to_string(id.m) : "") + ")";
    switch (id.tag) {
        case MetricTag::Siegel: return "SIEGEL" + nm;
        case MetricTag::Disk: return "DISK" + nm;
        case MetricTag::Jacobi: return "JACOBI" + nm;
        case MetricTag::DiskJacobi: return "DISK_JACOBI" + nm;
        case MetricTag::H11: return "H11";
        case MetricTag::Abelian: return "ABELIAN" + nm;
    }
    return "?";
}

Chart metric_chart(const MetricId& id) {
    switch (id.tag) {
        case MetricTag::Siegel: return Chart::H;
        case MetricTag::Disk: return Chart::D;
        case MetricTag::Jacobi:
        case MetricTag::H11: return Chart::HJ;
        case MetricTag::DiskJacobi: return Chart::DJ;
        case MetricTag::Abelian: return Chart::A;
    }
    return Chart::H;
}

GramResult polarize(const QuadForm& q, int d) {
    GramResult r;
    r.gram = Mat::Zero(d, d);
    for (int a = 0; a < d; ++a) {
        for (int b = a; b < d; ++b) {
            Vec p = Vec::Zero(d), mi = Vec::Zero(d);
            p(a) += 1.0;
            p(b) += 1.0;
            mi(a) += 1.0;
            mi(b) -= 1.0;
            const cplx g = 0.25 * (q(p) - q(mi));
            r.imag_residue = std::max(r.imag_residue, std::abs(g.imag()));
            r.gram(a, b) = r.gram(b, a) = g.real();
        }
    }
    return r;
}

static GramResult raw_gram(const MetricId& id, const Vec& x) {
    const int n = id.n, m = id.m;
    const Chart c = metric_chart(id);
    check_len(x, c, n, m);
    const int d = chart_dim(c, n, m), t = sym_dim(n), mn = m * n;
    switch (id.tag) {
        case MetricTag::Siegel: {
            const Mat y = chart_to_siegel(x, n).Y();
            return polarize([&](const Vec& e) {
                const CMat dO = to_c(sym_increment(e, 0, n)) + I * to_c(sym_increment(e, t, n));
                return jacobi_q(y, Mat::Zero(0, n), dO, CMat::Zero(0, n));
            }, d);
        }
        case MetricTag::Jacobi: {
            const JacobiPoint p = chart_to_jacobi(x, n, m);
            const Mat y = p.siegel().Y(), v = p.V();
            return polarize([&](const Vec& e) {
                const CMat dO = to_c(sym_increment(e, 0, n)) + I * to_c(sym_increment(e, t, n));
                const CMat dZ = to_c(rect_increment(e, 2 * t, m, n)) + I * to_c(rect_increment(e, 2 * t + mn, m, n));
                return jacobi_q(y, v, dO, dZ);
            }, d);
        }
        case MetricTag::H11: {
            if (n != 1 || m != 1) throw InputError("H11 is defined on H_{1,1} only");
            const double y = x(1), v = x(3);
            if (!(y > 0)) throw DomainError("H11: y must be positive");
            return polarize([&](const Vec& e) {
                const double dx = e(0), dy = e(1), du = e(2), dv = e(3);
                return cplx((y + v * v) / (y * y * y) * (dx * dx + dy * dy) + (du * du + dv * dv) / y -
                            2.0 * v / (y * y) * (dx * du + dy * dv));
            }, d);
        }
        case MetricTag::Disk: {
            const CMat w = chart_to_disk(x, n).W();
            const CMat id1 = CMat::Identity(n, n);
            const CMat a = inv(id1 - w * w.conjugate()), b = inv(id1 - w.conjugate() * w);
            return polarize([&](const Vec& e) {
                const CMat dW = to_c(sym_increment(e, 0, n)) + I * to_c(sym_increment(e, t, n));
                return cplx(4.0) * (a * dW * b * dW.conjugate()).trace();
            }, d);
        }
        case MetricTag::DiskJacobi: {
            // Pullback through the partial Cayley transform, using its holomorphic differential.
            const DiskJacobiPoint p = chart_to_disk_jacobi(x, n, m);
            const JacobiPoint q = partial_cayley(p);
            const Mat y = q.siegel().Y(), v = q.V();
            const CMat id1 = CMat::Identity(n, n);
            const CMat ri = inv(id1 - p.W());
            return polarize([&](const Vec& e) {
                const CMat dW = to_c(sym_increment(e, 0, n)) + I * to_c(sym_increment(e, t, n));
                const CMat de = to_c(rect_increment(e, 2 * t, m, n)) + I * to_c(rect_increment(e, 2 * t + mn, m, n));
                const CMat dO = 2.0 * I * ri * dW * ri;
                const CMat dZ = 2.0 * I * (de + p.eta() * ri * dW) * ri;
                return jacobi_q(y, v, dO, dZ);
            }, d);
        }
        case MetricTag::Abelian: {
            const SiegelPoint om(id.omega);
            const Mat yi = om.Y().inverse();
            return polarize([&](const Vec& e) {
                const CMat dZ = to_c(rect_increment(e, 0, m, n)) + I * to_c(rect_increment(e, mn, m, n));
                return (to_c(yi) * dZ.transpose() * dZ.conjugate()).trace();
            }, d);
        }
    }
    throw InputError("unknown metric");
}

GramResult metric_gram(const MetricId& id, const Vec& x) {
    GramResult g = raw_gram(id, x);
    require_spd(g, metric_name(id));
    return g;
}

GramResult disk_jacobi_closed_form_gram(int n, int m, const Vec& x) {
    const DiskJacobiPoint p = chart_to_disk_jacobi(x, n, m);
    const int t = sym_dim(n), mn = m * n;
    const CMat id1 = CMat::Identity(n, n);
    const CMat W = p.W(), Wb = W.conjugate(), eta = p.eta(), etab = eta.conjugate();
    const CMat A = inv(id1 - W * Wb), B = inv(id1 - Wb * W);
    const CMat F = inv(id1 - Wb), G = inv(id1 - W);
    return polarize([&](const Vec& e) {
        const CMat dW = to_c(sym_increment(e, 0, n)) + I * to_c(sym_increment(e, t, n));
        const CMat de = to_c(rect_increment(e, 2 * t, m, n)) + I * to_c(rect_increment(e, 2 * t + mn, m, n));
        const CMat dWb = dW.conjugate(), deb = de.conjugate();
        const CMat tail = dW * B * dWb;
        cplx q = (A * dW * B * dWb).trace();
        q += (A * de.transpose() * deb).trace();
        q += ((eta * Wb - etab) * A * dW * B * deb.transpose()).trace();
        q += ((etab * W - eta) * B * dWb * A * de.transpose()).trace();
        q -= (A * eta.transpose() * eta * B * Wb * tail).trace();
        q -= (W * B * etab.transpose() * etab * A * tail).trace();
        q += (A * eta.transpose() * etab * A * tail).trace();
        q += (F * etab.transpose() * eta * Wb * A * tail).trace();
        q += (F * (id1 - W) * B * etab.transpose() * eta * B * (id1 - Wb) * G * tail).trace();
        q -= (A * (id1 - W) * F * etab.transpose() * eta * G * tail).trace();
        return cplx(4.0) * q;
    }, chart_dim(Chart::DJ, n, m));
}

ChartAction chart_action(const MetricId& id, const GroupElement& g) {
    const int n = id.n, m = id.m;
    switch (id.tag) {
        case MetricTag::Siegel: {
            const auto& M = std::get<SymplecticMatrix>(g);
            return {[M, n](const Vec& x) { return siegel_to_chart(sp_action(M, chart_to_siegel(x, n))); }, id};
        }
        case MetricTag::Jacobi:
        case MetricTag::H11: {
            const auto& e = std::get<JacobiElement>(g);
            return {[e, n, m](const Vec& x) { return jacobi_to_chart(jacobi_action(e, chart_to_jacobi(x, n, m))); }, id};
        }
        case MetricTag::Disk: {
            const auto& e = std::get<DiskJacobiElement>(g);
            return {[e, n](const Vec& x) { return disk_to_chart(disk_action(e, chart_to_disk(x, n))); }, id};
        }
        case MetricTag::DiskJacobi: {
            const auto& e = std::get<DiskJacobiElement>(g);
            return {[e, n, m](const Vec& x) {
                        return disk_jacobi_to_chart(disk_jacobi_action(e, chart_to_disk_jacobi(x, n, m)));
                    },
                    id};
        }
        case MetricTag::Abelian: {
            // Omega is transported along with Z; the metric at the image uses the new Omega.
            const auto& e = std::get<JacobiElement>(g);
            const SiegelPoint om(id.omega);
            const JacobiPoint base(om, CMat::Zero(m, n));
            MetricId target = id;
            target.omega = jacobi_action(e, base).omega();
            const int mn = m * n;
            return {[e, om, n, m, mn](const Vec& x) {
                        const CMat z = to_c(rect_increment(x, 0, m, n)) + I * to_c(rect_increment(x, mn, m, n));
                        const JacobiPoint q = jacobi_action(e, JacobiPoint(om, z));
                        Vec out(2 * mn);
                        out << rect_to_vec(q.U()), rect_to_vec(q.V());
                        return out;
                    },
                    target};
        }
    }
    throw InputError("unknown metric");
}

Mat jacobian_fd(const ChartMap& f, const Vec& x, double h) {
    const Vec f0 = f(x);
    Mat j(f0.size(), x.size());
    for (int c = 0; c < x.size(); ++c) {
        const double hc = h * (1.0 + std::abs(x(c)));
        auto diff = [&](double s) {
            Vec xp = x, xm = x;
            xp(c) += s;
            xm(c) -= s;
            return Vec((f(xp) - f(xm)) / (2.0 * s));
        };
        j.col(c) = (4.0 * diff(0.5 * hc) - diff(hc)) / 3.0;
    }
    return j;
}

double pullback_residual(const MetricId& id, const GroupElement& g, const Vec& x) {
    const ChartAction act = chart_action(id, g);
    const Mat j = jacobian_fd(act.map, x);
    const Mat g0 = metric_gram(id, x).gram;
    const Mat g1 = metric_gram(act.target, act.map(x)).gram;
    return max_norm(Mat(j.transpose() * g1 * j - g0)) / max_norm(g0);
}

double volume_density(const MetricId& id, const Vec& x) {
    if (id.tag == MetricTag::Jacobi) {
        const Mat y = chart_to_jacobi(x, id.n, id.m).siegel().Y();
        return std::pow(det(y), -static_cast<double>(id.n + id.m + 1));
    }
    return std::sqrt(det(metric_gram(id, x).gram));
}

double volume_invariance_residual(const MetricId& id, const GroupElement& g, const Vec& x) {
    const ChartAction act = chart_action(id, g);
    const Mat j = jacobian_fd(act.map, x);
    const double lhs = std::abs(det(j)) * volume_density(act.target, act.map(x));
    const double rhs = volume_density(id, x);
    return std::abs(lhs - rhs) / std::abs(rhs);
}

double boundary_margin(Chart c, int n, int m, const Vec& x) {
    switch (c) {
        case Chart::H:
        case Chart::HJ: {
            Eigen::SelfAdjointEigenSolver<Mat> es(vec_to_sym(x.segment(sym_dim(n), sym_dim(n)), n), Eigen::EigenvaluesOnly);
            return es.eigenvalues().minCoeff();
        }
        case Chart::PV: {
            Eigen::SelfAdjointEigenSolver<Mat> es(vec_to_sym(x.head(sym_dim(n)), n), Eigen::EigenvaluesOnly);
            return es.eigenvalues().minCoeff();
        }
        case Chart::D:
        case Chart::DJ: {
            const int t = sym_dim(n);
            return disk_margin(CMat(to_c(vec_to_sym(x.head(t), n)) + I * to_c(vec_to_sym(x.segment(t, t), n))));
        }
        case Chart::A: return 1.0;
    }
    (void)m;
    return 1.0;
}

CurvatureResult scalar_curvature(const MetricId& id, const Vec& x, double h) {
    CurvatureResult out;
    const Chart c = metric_chart(id);
    if (boundary_margin(c, id.n, id.m, x) < kBoundaryMargin)
        throw DomainError("scalar_curvature: point too close to the boundary");
    const int d = static_cast<int>(x.size());
    auto G = [&](const Vec& p) { return metric_gram(id, p).gram; };

    // First and second partials of the Gram matrix, central differences plus one Richardson level.
    std::vector<Mat> dg(d);
    std::vector<std::vector<Mat>> ddg(d, std::vector<Mat>(d));
    std::vector<double> hs(d);
    for (int a = 0; a < d; ++a) hs[a] = h * (1.0 + std::abs(x(a)));
    for (int a = 0; a < d; ++a) {
        auto d1 = [&](double s) {
            Vec p = x, q = x;
            p(a) += s;
            q(a) -= s;
            return Mat((G(p) - G(q)) / (2 * s));
        };
        dg[a] = (4.0 * d1(hs[a] / 2) - d1(hs[a])) / 3.0;
    }
    const Mat g0 = G(x);
    for (int a = 0; a < d; ++a) {
        for (int b = a; b < d; ++b) {
            auto d2 = [&](double sa, double sb) {
                if (a == b) {
                    Vec p = x, q = x;
                    p(a) += sa;
                    q(a) -= sa;
                    return Mat((G(p) - 2.0 * g0 + G(q)) / (sa * sa));
                }
                Vec pp = x, pm = x, mp = x, mm = x;
                pp(a) += sa; pp(b) += sb;
                pm(a) += sa; pm(b) -= sb;
                mp(a) -= sa; mp(b) += sb;
                mm(a) -= sa; mm(b) -= sb;
                return Mat((G(pp) - G(pm) - G(mp) + G(mm)) / (4 * sa * sb));
            };
            ddg[a][b] = (4.0 * d2(hs[a] / 2, hs[b] / 2) - d2(hs[a], hs[b])) / 3.0;
            ddg[b][a] = ddg[a][b];
        }
    }
    const Mat gi = g0.inverse();
    // Gamma^k_{ij} and its partials.
    auto idx3 = [d](int k, int i, int j) { return (k * d + i) * d + j; };
    std::vector<double> gam(d * d * d, 0.0), low(d * d * d, 0.0);
    for (int l = 0; l < d; ++l)
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) low[idx3(l, i, j)] = 0.5 * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));
    for (int k = 0; k < d; ++k)
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                double s = 0;
                for (int l = 0; l < d; ++l) s += gi(k, l) * low[idx3(l, i, j)];
                gam[idx3(k, i, j)] = s;
            }
    // d_m Gamma^k_ij = d_m(g^{kl}) low_lij + g^{kl} d_m low_lij
    std::vector<double> dgam(d * d * d * d, 0.0);
    auto idx4 = [d](int mm, int k, int i, int j) { return ((mm * d + k) * d + i) * d + j; };
    for (int mm = 0; mm < d; ++mm) {
        const Mat dgi = -gi * dg[mm] * gi;
        for (int k = 0; k < d; ++k)
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) {
                    double s = 0;
                    for (int l = 0; l < d; ++l) {
                        const double dlow = 0.5 * (ddg[mm][i](j, l) + ddg[mm][j](i, l) - ddg[mm][l](i, j));
                        s += dgi(k, l) * low[idx3(l, i, j)] + gi(k, l) * dlow;
                    }
                    dgam[idx4(mm, k, i, j)] = s;
                }
    }
    // Ric_{sn} = d_r Gamma^r_{ns} - d_n Gamma^r_{rs} + Gamma^r_{rl} Gamma^l_{ns} - Gamma^r_{nl} Gamma^l_{rs}
    Mat ric = Mat::Zero(d, d);
    for (int s = 0; s < d; ++s)
        for (int nn = 0; nn < d; ++nn) {
            double v = 0;
            for (int r = 0; r < d; ++r) {
                v += dgam[idx4(r, r, nn, s)] - dgam[idx4(nn, r, r, s)];
                for (int l = 0; l < d; ++l)
                    v += gam[idx3(r, r, l)] * gam[idx3(l, nn, s)] - gam[idx3(r, nn, l)] * gam[idx3(l, r, s)];
            }
            ric(s, nn) = v;
        }
    out.scalar = (gi.cwiseProduct(ric)).sum();
    if (boundary_margin(c, id.n, id.m, x) < 1e-3)
        out.warnings.push_back("scalar_curvature: small boundary margin, accuracy may degrade");
    return out;
}

SiegelPoint random_siegel(int n, Rng& rng) {
    const Mat x = random_symmetric(n, rng, 0.5);
    const Mat y = random_symmetric(n, rng, 0.4).exp();
    return SiegelPoint(x, y);
}

JacobiPoint random_jacobi_point(int n, int m, Rng& rng) {
    const SiegelPoint om = random_siegel(n, rng);
    const Mat u = random_matrix(m, n, rng, 1.0), v = random_matrix(m, n, rng, 1.0);
    return JacobiPoint(om, CMat(to_c(u) + I * to_c(v)));
}

DiskPoint random_disk(int n, Rng& rng) { return cayley_inv(random_siegel(n, rng)); }

DiskJacobiPoint random_disk_jacobi_point(int n, int m, Rng& rng) {
    return partial_cayley_inv(random_jacobi_point(n, m, rng));
}

}  // namespace sjl
