#include "sjl/spectral.hpp"

#include <cmath>
#include <numbers>

#include "sjl/errors.hpp"

namespace sjl {

namespace {

constexpr double kPi = std::numbers::pi;
// H_{1,1} chart slots
constexpr int X = 0, Y = 1, U = 2, V = 3;
const cplx kI(0.0, 1.0);

CMat to_c(const Mat& a) { return a.cast<cplx>(); }

// Coefficient of tV in the exponent: (B - A X) Y⁻¹.
Mat v_coefficient(const LatticeSpec& L, const FourierIndex& idx) {
    Mat yinv = sym_inverse(PosDefSymMatrix(L.omega.Y())).inverse.mat();
    return (idx.B.cast<double>() - idx.A.cast<double>() * L.omega.X()) * yinv;
}

void check_index(const LatticeSpec& L, const FourierIndex& idx) {
    if (idx.A.rows() != L.m || idx.A.cols() != L.n() || idx.B.rows() != L.m || idx.B.cols() != L.n())
        throw InputError("Fourier index must be a pair of m×n integer matrices");
}

long long max_abs(const IMat& a) { return a.size() ? a.cwiseAbs().maxCoeff() : 0; }

}  // namespace

RiemannCheck riemann_check(const SiegelPoint& omega) {
    const int n = omega.n();
    CMat star(n, 2 * n);
    star << CMat::Identity(n, n), omega.omega();
    CMat J = to_c(symplectic_form(n));
    RiemannCheck r;
    r.residual = max_norm(CMat(star * J * star.transpose()));
    CMat h = (star * J * star.conjugate().transpose()) * (-1.0 / kI);
    r.margin_matrix = 0.5 * (h.real() + h.real().transpose());
    Eigen::SelfAdjointEigenSolver<Mat> es(r.margin_matrix, Eigen::EigenvaluesOnly);
    r.margin = es.eigenvalues().minCoeff();
    return r;
}

cplx fourier_eval(const LatticeSpec& L, const FourierIndex& idx, const CMat& z) {
    check_index(L, idx);
    if (z.rows() != L.m || z.cols() != L.n()) throw InputError("Z must be m×n");
    double phase = (idx.A.cast<double>().transpose() * z.real()).trace() +
                   (v_coefficient(L, idx) * z.imag().transpose()).trace();
    return std::exp(2.0 * kPi * kI * phase);
}

Vec torus_chart(const CMat& z) {
    const int m = static_cast<int>(z.rows()), n = static_cast<int>(z.cols()), mn = m * n;
    Vec x(2 * mn);
    for (int k = 0; k < m; ++k)
        for (int l = 0; l < n; ++l) {
            x[k * n + l] = z(k, l).real();
            x[mn + k * n + l] = z(k, l).imag();
        }
    return x;
}

ScalarField fourier_field(const LatticeSpec& L, const FourierIndex& idx) {
    check_index(L, idx);
    const int m = L.m, n = L.n(), mn = m * n;
    Mat c = v_coefficient(L, idx);
    CVec coef(2 * mn);
    for (int k = 0; k < m; ++k)
        for (int l = 0; l < n; ++l) {
            coef[k * n + l] = 2.0 * kPi * kI * double(idx.A(k, l));
            coef[mn + k * n + l] = 2.0 * kPi * kI * c(k, l);
        }
    return exp_linear(coef, "E");
}

CMat from_lattice(const LatticeSpec& L, const Mat& lambda, const Mat& mu) {
    return to_c(lambda) * L.omega.omega() + to_c(mu);
}

namespace {

// Values of each character on the uniform lattice-coordinate grid, one row per index.
CMat grid_values(const LatticeSpec& L, const std::vector<FourierIndex>& idx, const TorusGrid& grid) {
    long long freq = 0;
    for (const auto& f : idx) {
        check_index(L, f);
        freq = std::max({freq, max_abs(f.A), max_abs(f.B)});
    }
    if (grid.N < 2 * freq + 1)
        throw InputError("torus grid N=" + std::to_string(grid.N) + " aliases frequency " + std::to_string(freq) +
                         "; need N >= " + std::to_string(2 * freq + 1));
    const int m = L.m, n = L.n(), mn = m * n, dims = 2 * mn;
    long long count = 1;
    for (int i = 0; i < dims; ++i) count *= grid.N;
    CMat vals(idx.size(), count);
    std::vector<int> pos(dims, 0);
    Mat lambda(m, n), mu(m, n);
    for (long long c = 0; c < count; ++c) {
        for (int k = 0; k < mn; ++k) {
            lambda(k / n, k % n) = double(pos[k]) / grid.N;
            mu(k / n, k % n) = double(pos[mn + k]) / grid.N;
        }
        const CMat z = from_lattice(L, lambda, mu);
        for (std::size_t i = 0; i < idx.size(); ++i) vals(i, c) = fourier_eval(L, idx[i], z);
        for (int i = 0; i < dims && ++pos[i] == grid.N; ++i) pos[i] = 0;
    }
    return vals;
}

}  // namespace

cplx torus_inner_product(const LatticeSpec& L, const FourierIndex& a, const FourierIndex& b, const TorusGrid& grid) {
    return torus_gram(L, {a, b}, grid)(0, 1);
}

std::vector<FourierIndex> index_box(int m, int n, int r) {
    const int mn = m * n;
    std::vector<FourierIndex> out;
    std::vector<int> digits(2 * mn, -r);
    while (true) {
        FourierIndex f{IMat(m, n), IMat(m, n)};
        for (int k = 0; k < mn; ++k) {
            f.A(k / n, k % n) = digits[k];
            f.B(k / n, k % n) = digits[mn + k];
        }
        out.push_back(f);
        int i = 0;
        for (; i < 2 * mn; ++i) {
            if (++digits[i] <= r) break;
            digits[i] = -r;
        }
        if (i == 2 * mn) break;
    }
    return out;
}

CMat torus_gram(const LatticeSpec& L, const std::vector<FourierIndex>& idx, const TorusGrid& grid) {
    const CMat v = grid_values(L, idx, grid);
    return v * v.adjoint() / double(v.cols());
}

cplx delta_omega_eigenvalue(const LatticeSpec& L, const FourierIndex& idx) {
    check_index(L, idx);
    Mat a = idx.A.cast<double>();
    Mat y = L.omega.Y();
    Mat bx = idx.B.cast<double>() - a * L.omega.X();
    Mat yinv = sym_inverse(PosDefSymMatrix(y)).inverse.mat();
    return -kPi * kPi * ((a * y * a.transpose()).trace() + (bx * yinv * bx.transpose()).trace());
}

EigenEstimate basis_eigen_residual(const LatticeSpec& L, const FourierIndex& idx, const std::vector<CMat>& zs) {
    if (zs.empty()) throw InputError("need at least one sample point");
    OperatorId op = OperatorId::delta_omega(L.omega, L.m);
    ScalarField e = fourier_field(L, idx);
    std::vector<cplx> ratios;
    std::vector<std::pair<cplx, cplx>> vals;
    for (const auto& z : zs) {
        Vec x = torus_chart(z);
        cplx le = apply(op, e, x);
        cplx ev = e.eval(x);
        ratios.push_back(le / ev);
        vals.push_back({le, ev});
    }
    EigenEstimate r;
    for (cplx q : ratios) r.eigenvalue += q;
    r.eigenvalue /= double(ratios.size());
    for (cplx q : ratios) r.spread = std::max(r.spread, std::abs(q - r.eigenvalue));
    for (const auto& [le, ev] : vals) r.residual = std::max(r.residual, std::abs(le - r.eigenvalue * ev));
    r.closed_form = delta_omega_eigenvalue(L, idx);
    return r;
}

const std::vector<EigenEntry>& eigen_catalog() {
    static const std::vector<EigenEntry> entries = [] {
        auto mono = [](std::vector<std::pair<int, cplx>> pw) {
            return [pw](cplx s, double) {
                std::vector<std::pair<int, cplx>> p = pw;
                for (auto& [k, e] : p)
                    if (e == cplx(-1.0)) e = s;  // -1 marks the exponent s
                return monomial(4, p);
            };
        };
        auto s_s1 = [](cplx s) { return s * (s - 1.0); };
        auto s_s2 = [](cplx s) { return s * (s + 1.0); };
        auto zero = [](cplx) { return cplx(0.0); };
        const cplx S(-1.0);
        std::vector<EigenEntry> v;
        v.push_back({"bessel", 1,
                     [](cplx s, double a) {
                         if (a == 0.0) throw InputError("the K-Bessel entry needs a != 0");
                         SeparableTerm t;
                         t.factors.push_back({X, pow_exp(0.0, 2.0 * kPi * kI * a)});
                         t.factors.push_back({Y, product({pow_exp(0.5), bessel_k(s - 0.5, 2.0 * kPi * std::abs(a))})});
                         return separable_field(4, {t}, "bessel");
                     },
                     s_s1});
        v.push_back({"y^s", 2, mono({{Y, S}}), s_s1});
        v.push_back({"y^s x", 2, mono({{Y, S}, {X, 1.0}}), s_s1});
        v.push_back({"y^s u", 2, mono({{Y, S}, {U, 1.0}}), s_s1});
        v.push_back({"y^s v", 3, mono({{Y, S}, {V, 1.0}}), s_s2});
        v.push_back({"y^s uv", 3, mono({{Y, S}, {U, 1.0}, {V, 1.0}}), s_s2});
        v.push_back({"y^s xv", 3, mono({{Y, S}, {X, 1.0}, {V, 1.0}}), s_s2});
        v.push_back({"x", 4, mono({{X, 1.0}}), zero});
        v.push_back({"y", 4, mono({{Y, 1.0}}), zero});
        v.push_back({"u", 4, mono({{U, 1.0}}), zero});
        v.push_back({"v", 4, mono({{V, 1.0}}), zero});
        v.push_back({"xv", 4, mono({{X, 1.0}, {V, 1.0}}), zero});
        v.push_back({"uv", 4, mono({{U, 1.0}, {V, 1.0}}), zero});
        return v;
    }();
    return entries;
}

const EigenEntry& eigen_entry(const std::string& id) {
    for (const auto& e : eigen_catalog())
        if (e.id == id) return e;
    throw InputError("unknown eigenfunction '" + id + "'");
}

double catalog_eigen_residual(const EigenEntry& e, cplx s, double a, const std::vector<Vec>& points) {
    OperatorId op = OperatorId::make(OpTag::DELTA_11);
    ScalarField f = e.make(s, a);
    cplx lam = e.eigenvalue(s);
    double worst = 0.0;
    for (const auto& p : points) {
        cplx lf = apply(op, f, p);
        cplx fv = f.eval(p);
        worst = std::max(worst, rel_diff(lf, lam * fv, std::abs(fv)));
    }
    return worst;
}

MaassReport maass_jacobi_residual(const ScalarField& f, cplx lambda, const std::vector<Vec>& points) {
    if (f.dim != 4) throw InputError("Maass-Jacobi checks use the H_{1,1} chart");
    if (points.empty()) throw InputError("need at least one sample point");
    auto jac = [](const Mat& M, double l, double u, double k) {
        return JacobiElement{SymplecticMatrix(M), HeisenbergElement(Mat::Constant(1, 1, l), Mat::Constant(1, 1, u),
                                                                    Mat::Constant(1, 1, k))};
    };
    Mat T(2, 2), J(2, 2), I = Mat::Identity(2, 2);
    T << 1, 1, 0, 1;
    J << 0, 1, -1, 0;
    const std::vector<std::pair<std::string, JacobiElement>> gens = {
        {"tau+1", jac(T, 0, 0, 0)},   {"inversion", jac(J, 0, 0, 0)}, {"z+1", jac(I, 0, 1, 0)},
        {"z+tau", jac(I, 1, 0, 0)}, {"kappa+1", jac(I, 0, 0, 1)},
    };
    MaassReport r;
    for (const auto& [name, g] : gens) {
        double worst = 0.0;
        for (const auto& p : points) {
            Vec gp = jacobi_to_chart(jacobi_action(g, chart_to_jacobi(p, 1, 1)));
            cplx a = f.eval(gp), b = f.eval(p);
            worst = std::max(worst, rel_diff(a, b));
        }
        r.mj1.push_back({name, worst});
    }
    OperatorId op = OperatorId::make(OpTag::DELTA_NM, 1, 1);
    for (const auto& p : points) {
        cplx lf = apply(op, f, p), fv = f.eval(p);
        r.mj2 = std::max(r.mj2, rel_diff(lf, lambda * fv, std::abs(fv)));
    }
    // growth along y -> ∞ from the first sample point
    Vec p = points.front();
    std::vector<double> ys, fs;
    for (int j = 0; j <= 6; ++j) {
        Vec q = p;
        q[1] = p[1] * std::pow(4.0, j);
        ys.push_back(q[1]);
        fs.push_back(std::abs(f.eval(q)));
    }
    for (int N = 0; N <= 10; ++N) r.mj3_ratios.push_back({N, fs.back() / std::pow(ys.back(), N)});
    double a = std::log(std::max(fs[fs.size() - 1], 1e-300)), b = std::log(std::max(fs[fs.size() - 2], 1e-300));
    r.mj3_exponent = (a - b) / (std::log(ys.back()) - std::log(ys[ys.size() - 2]));
    return r;
}

cplx automorphic_factor(int k, const JacobiIndexMatrix& index, const JacobiElement& g, const JacobiPoint& p) {
    const int n = p.n(), m = p.m();
    if (g.n() != n || g.m() != m || index.m() != m) throw InputError("automorphic factor: dimension mismatch");
    const CMat om = p.omega(), z = p.Z();
    const CMat C = to_c(g.M.C()), D = to_c(g.M.D());
    const CMat l = to_c(g.h.lambda), mu = to_c(g.h.mu), kap = to_c(g.h.kappa), M = to_c(index.matrix());
    const CMat cod = C * om + D;
    const CMat w = z + l * om + mu;
    cplx e1 = (w.transpose() * M * w * cod.inverse() * C).trace();
    cplx e2 = (M * (l * om * l.transpose() + 2.0 * l * z.transpose() + kap + mu * l.transpose())).trace();
    return std::exp(-2.0 * kPi * kI * e1) * std::exp(2.0 * kPi * kI * e2) * std::pow(det(cod), -k);
}

ScalarField slash(int k, const JacobiIndexMatrix& index, const JacobiElement& g, const ScalarField& f, int n, int m) {
    ScalarField s;
    s.dim = f.dim;
    s.name = f.name + "|g";
    s.eval = [=](const Vec& x) {
        JacobiPoint p = chart_to_jacobi(x, n, m);
        return automorphic_factor(k, index, g, p) * f.eval(jacobi_to_chart(jacobi_action(g, p)));
    };
    return s;
}

}  // namespace sjl
