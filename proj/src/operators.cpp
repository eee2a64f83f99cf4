#include "sjl/operators.hpp"

#include <cmath>
#include <map>
#include <numbers>

#include "sjl/errors.hpp"

namespace sjl {

namespace {

const std::map<OpTag, std::string>& names() {
    static const std::map<OpTag, std::string> m = {
        {OpTag::DELTA_N, "DELTA_N"},   {OpTag::DELTA_STAR, "DELTA_STAR"}, {OpTag::DELTA_NM, "DELTA_NM"},
        {OpTag::DELTA_DISK_NM, "DELTA_DISK_NM"}, {OpTag::DELTA_11, "DELTA_11"}, {OpTag::M1, "M1"},
        {OpTag::M2, "M2"},             {OpTag::S1, "S1"},                 {OpTag::S2, "S2"},
        {OpTag::D, "D"},               {OpTag::PSI, "PSI"},               {OpTag::D1, "D1"},
        {OpTag::D2, "D2"},             {OpTag::M_SING, "M_SING"},         {OpTag::B_J, "B_J"},
        {OpTag::DELTA_OMEGA, "DELTA_OMEGA"},
    };
    return m;
}

CMat to_c(const Mat& a) { return a.cast<cplx>(); }

MultiIndex mi(std::initializer_list<int> l) { return MultiIndex(l); }

// H_{1,1} chart: x, y, u, v.
constexpr int kX = 0, kY = 1, kU = 2, kV = 3;

Poly coord(int k, cplx c = 1.0) { return Poly::coordinate(4, k, c); }
PolyOp term(std::initializer_list<int> a, const Poly& p) { return PolyOp::partial(4, mi(a), p); }

PolyOp psi_op() { return term({0, 0, 2, 0}, coord(kY)) + term({0, 0, 0, 2}, coord(kY)); }

PolyOp d_op() {
    Poly y2 = coord(kY) * coord(kY);
    Poly v2 = coord(kV) * coord(kV);
    Poly yv2 = coord(kY) * coord(kV) * 2.0;
    return term({2, 0, 0, 0}, y2) + term({0, 2, 0, 0}, y2) + term({0, 0, 2, 0}, v2) + term({0, 0, 0, 2}, v2) +
           term({1, 0, 1, 0}, yv2) + term({0, 1, 0, 1}, yv2);
}

PolyOp delta11_op() {
    Poly y2 = coord(kY) * coord(kY);
    Poly yv = coord(kY) + coord(kV) * coord(kV);
    Poly yv2 = coord(kY) * coord(kV) * 2.0;
    return term({2, 0, 0, 0}, y2) + term({0, 2, 0, 0}, y2) + term({0, 0, 2, 0}, yv) + term({0, 0, 0, 2}, yv) +
           term({1, 0, 1, 0}, yv2) + term({0, 1, 0, 1}, yv2);
}

PolyOp d1_op() {
    Poly y2 = coord(kY) * coord(kY);
    PolyOp v_dv_plus_1 = term({0, 0, 0, 1}, coord(kV)) + PolyOp::identity(4);
    return term({1, 0, 1, 1}, y2 * 2.0) + term({0, 1, 2, 0}, y2 * -1.0) + term({0, 1, 0, 2}, y2) +
           v_dv_plus_1.compose(psi_op());
}

PolyOp d2_op() {
    Poly y2 = coord(kY) * coord(kY);
    PolyOp v_du = term({0, 0, 1, 0}, coord(kV));
    return term({1, 0, 0, 2}, y2) + term({1, 0, 2, 0}, y2 * -1.0) + term({0, 1, 1, 1}, y2 * -2.0) -
           v_du.compose(psi_op());
}

int sym_pos(int n, int i, int j) {
    if (i > j) std::swap(i, j);
    return i * n - i * (i - 1) / 2 + (j - i);
}

PolyOp b_j_op(int n, int j) {
    const int dim = sym_dim(n);
    PolyOpMat yd(n, n, dim);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l) {
                double w = (l == k) ? 1.0 : 0.5;
                yd(i, k) = yd(i, k) + PolyOp::partial(dim, unit_index(dim, sym_pos(n, l, k)),
                                                      Poly::coordinate(dim, sym_pos(n, i, l), w));
            }
    PolyOpMat power = yd;
    for (int t = 1; t < j; ++t) power = yd.compose(power);
    return power.trace();
}

// Frozen assemblies.

Symbol delta_n_symbol(int n, const Mat& y, int dim, int re, int im) {
    SymbolMat dO = wirtinger_sym(dim, n, re, im, false);
    SymbolMat dOb = wirtinger_sym(dim, n, re, im, true);
    CMat Y = to_c(y);
    return (Y * (Y * dOb).transpose() * dO).trace() * cplx(4.0);
}

struct JacobiTerms {
    Symbol alpha, beta, gamma, delta, eps;
};

JacobiTerms jacobi_terms(int n, int m, const Vec& x) {
    const int t = sym_dim(n), dim = static_cast<int>(x.size());
    JacobiPoint p = chart_to_jacobi(x, n, m);
    CMat Y = to_c(p.siegel().Y());
    CMat Yi = to_c(sym_inverse(PosDefSymMatrix(p.siegel().Y())).inverse.mat());
    CMat V = to_c(p.V());
    CMat Vt = V.transpose();
    SymbolMat dO = wirtinger_sym(dim, n, 0, t, false);
    SymbolMat dOb = wirtinger_sym(dim, n, 0, t, true);
    SymbolMat dZ = wirtinger_rect(dim, m, n, 2 * t, 2 * t + m * n, false);
    SymbolMat dZb = wirtinger_rect(dim, m, n, 2 * t, 2 * t + m * n, true);
    JacobiTerms r;
    r.alpha = (Y * (Y * dOb).transpose() * dO).trace() * cplx(4.0);
    r.beta = (Y * dZ * dZb.transpose()).trace() * cplx(4.0);
    CMat vyv = V * Yi * Vt;
    r.gamma = (vyv * (Y * dZb).transpose() * dZ).trace() * cplx(4.0);
    r.delta = (V * (Y * dOb).transpose() * dZ).trace() * cplx(4.0);
    r.eps = (Vt * (Y * dZb).transpose() * dO).trace() * cplx(4.0);
    return r;
}

struct DiskTerms {
    Symbol t[8];
};

DiskTerms disk_terms(int n, int m, const Vec& x) {
    const int t = sym_dim(n), dim = static_cast<int>(x.size());
    DiskJacobiPoint p = chart_to_disk_jacobi(x, n, m);
    const CMat W = p.W(), Wb = W.conjugate(), eta = p.eta(), etab = eta.conjugate();
    const CMat I = CMat::Identity(n, n);
    const CMat A1 = I - W * Wb, A2 = I - Wb * W;
    const CMat A1i = A1.inverse(), A2i = A2.inverse();
    SymbolMat dW = wirtinger_sym(dim, n, 0, t, false);
    SymbolMat dWb = wirtinger_sym(dim, n, 0, t, true);
    SymbolMat dE = wirtinger_rect(dim, m, n, 2 * t, 2 * t + m * n, false);
    SymbolMat dEb = wirtinger_rect(dim, m, n, 2 * t, 2 * t + m * n, true);
    SymbolMat dEbt = dEb.transpose();
    SymbolMat tail = dEbt * A2 * dE;  // t(∂/∂η̄) (I - W̄W) ∂/∂η
    DiskTerms r;
    r.t[0] = (A1 * (A1 * dWb).transpose() * dW).trace();
    r.t[1] = (A2 * dE * dEbt).trace();
    r.t[2] = (CMat((eta - etab * W).transpose()) * dEbt * A2 * dW).trace();
    r.t[3] = (CMat(etab - eta * Wb) * (A1 * dWb).transpose() * dE).trace();
    r.t[4] = (CMat(eta * Wb * A1i * eta.transpose()) * tail).trace() * cplx(-1.0);
    r.t[5] = (CMat(etab * W * A2i * etab.transpose()) * tail).trace() * cplx(-1.0);
    r.t[6] = (CMat(etab * A1i * eta.transpose()) * tail).trace();
    r.t[7] = (CMat(eta * Wb * W * A2i * etab.transpose()) * tail).trace();
    return r;
}

Symbol m_sing_symbol(int n, int m, const Mat& index, const Vec& x) {
    const int t = sym_dim(n), dim = static_cast<int>(x.size());
    auto [y, v] = chart_to_pv(x, n, m);
    (void)v;
    SymbolMat dY = real_sym_derivative(dim, n, 0);
    SymbolMat dV = real_rect_derivative(dim, m, n, t);
    CMat minv = to_c(index.inverse()) * cplx(1.0 / (8.0 * std::numbers::pi));
    SymbolMat inner = dY + dV.transpose() * minv * dV;
    return inner.det() * cplx(det(y));
}

void check_chart(const OperatorId& op, const Vec& x) {
    Chart c = op_chart(op);
    int d = (c == Chart::PV && op.tag == OpTag::B_J) ? sym_dim(op.n) : chart_dim(c, op.n, op.m);
    if (x.size() != d)
        throw InputError(op_name(op.tag) + " expects " + std::to_string(d) + " chart coordinates on chart " +
                         chart_name(c));
}

}  // namespace

std::string op_name(OpTag t) { return names().at(t); }

OpTag op_from_name(const std::string& s) {
    for (const auto& [t, n] : names())
        if (n == s) return t;
    throw InputError("unknown operator '" + s + "'");
}

JacobiIndexMatrix::JacobiIndexMatrix(const Mat& m, bool require_definite) {
    if (m.rows() != m.cols() || m.rows() == 0) throw InputError("index matrix must be square");
    RealSymMatrix s(m);
    m_ = s.mat();
    for (int i = 0; i < m_.rows(); ++i)
        for (int j = 0; j < m_.cols(); ++j) {
            double twice = 2.0 * m_(i, j);
            if (std::abs(twice - std::round(twice)) > 1e-12) throw InputError("index matrix is not half-integral");
            if (i == j && std::abs(m_(i, i) - std::round(m_(i, i))) > 1e-12)
                throw InputError("index matrix diagonal must be integral");
        }
    Eigen::SelfAdjointEigenSolver<Mat> es(m_, Eigen::EigenvaluesOnly);
    double least = es.eigenvalues().minCoeff();
    if (least < -1e-12) throw InputError("index matrix is not positive semi-definite");
    if (require_definite && least <= 1e-12) throw InputError("index matrix must be positive definite");
}

OperatorId OperatorId::make(OpTag t, int n, int m) {
    OperatorId op;
    op.tag = t;
    op.n = n;
    op.m = m;
    switch (t) {
        case OpTag::DELTA_N:
        case OpTag::DELTA_STAR: op.m = 0; break;
        case OpTag::DELTA_11:
        case OpTag::D:
        case OpTag::PSI:
        case OpTag::D1:
        case OpTag::D2:
            op.n = 1;
            op.m = 1;
            break;
        case OpTag::M_SING:
        case OpTag::B_J:
        case OpTag::DELTA_OMEGA: throw InputError("use the dedicated constructor for " + op_name(t));
        default: break;
    }
    if (op.n < 1 || op.m < 0) throw InputError("operator dimensions must be positive");
    return op;
}

OperatorId OperatorId::b_j(int n, int j) {
    if (j < 1 || j > 4) throw InputError("B_J power must be in [1,4]");
    OperatorId op;
    op.tag = OpTag::B_J;
    op.n = n;
    op.m = 0;
    op.j = j;
    return op;
}

OperatorId OperatorId::m_sing(int n, const JacobiIndexMatrix& idx) {
    if (n > 2) throw InputError("M_SING is of order 2n; supported for n <= 2");
    JacobiIndexMatrix checked(idx.matrix(), true);
    OperatorId op;
    op.tag = OpTag::M_SING;
    op.n = n;
    op.m = checked.m();
    op.index = checked;
    return op;
}

OperatorId OperatorId::delta_omega(const SiegelPoint& om, int m) {
    OperatorId op;
    op.tag = OpTag::DELTA_OMEGA;
    op.n = om.n();
    op.m = m;
    op.omega = om.omega();
    return op;
}

Chart op_chart(const OperatorId& op) {
    switch (op.tag) {
        case OpTag::DELTA_N: return Chart::H;
        case OpTag::DELTA_STAR: return Chart::D;
        case OpTag::DELTA_DISK_NM:
        case OpTag::S1:
        case OpTag::S2: return Chart::DJ;
        case OpTag::M_SING:
        case OpTag::B_J: return Chart::PV;
        case OpTag::DELTA_OMEGA: return Chart::A;
        default: return Chart::HJ;
    }
}

int op_order(const OperatorId& op) {
    switch (op.tag) {
        case OpTag::D1:
        case OpTag::D2: return 3;
        case OpTag::M_SING: return 2 * op.n;
        case OpTag::B_J: return op.j;
        default: return 2;
    }
}

std::string op_group(const OperatorId& op) {
    switch (op.tag) {
        case OpTag::DELTA_N: return "Sp(n,R)";
        case OpTag::DELTA_STAR: return "disk group";
        case OpTag::DELTA_DISK_NM:
        case OpTag::S1:
        case OpTag::S2: return "disk Jacobi group";
        case OpTag::M_SING: return "GL(n,R) x {(0,mu;0)}";
        case OpTag::B_J: return "GL(n,R)";
        case OpTag::DELTA_OMEGA: return "lattice translations";
        default: return "Jacobi group";
    }
}

std::optional<PolyOp> op_poly(const OperatorId& op) {
    switch (op.tag) {
        case OpTag::DELTA_11: return delta11_op();
        case OpTag::D: return d_op();
        case OpTag::PSI: return psi_op();
        case OpTag::D1: return d1_op();
        case OpTag::D2: return d2_op();
        case OpTag::B_J: return b_j_op(op.n, op.j);
        default: return std::nullopt;
    }
}

PolyOp commutator_DPsi() { return d_op().compose(psi_op()) - psi_op().compose(d_op()); }

PolyOp commutator_rhs() {
    Poly y2 = coord(kY) * coord(kY);
    PolyOp v_dv = term({0, 0, 0, 1}, coord(kV));
    return term({0, 1, 2, 0}, y2 * 2.0) + term({0, 1, 0, 2}, y2 * -2.0) + term({1, 0, 1, 1}, y2 * -4.0) -
           (v_dv.compose(psi_op()) + psi_op()) * cplx(2.0);
}

Symbol op_symbol(const OperatorId& op, const Vec& x) {
    check_chart(op, x);
    if (auto p = op_poly(op)) return p->freeze(x);
    const int n = op.n, m = op.m;
    switch (op.tag) {
        case OpTag::DELTA_N: {
            return delta_n_symbol(n, chart_to_siegel(x, n).Y(), static_cast<int>(x.size()), 0, sym_dim(n));
        }
        case OpTag::DELTA_STAR: {
            const int t = sym_dim(n), dim = static_cast<int>(x.size());
            const CMat W = chart_to_disk(x, n).W();
            const CMat A1 = CMat::Identity(n, n) - W * W.conjugate();
            SymbolMat dW = wirtinger_sym(dim, n, 0, t, false);
            SymbolMat dWb = wirtinger_sym(dim, n, 0, t, true);
            return (A1 * (A1 * dWb).transpose() * dW).trace();
        }
        case OpTag::DELTA_NM:
        case OpTag::M1:
        case OpTag::M2: {
            JacobiTerms t = jacobi_terms(n, m, x);
            if (op.tag == OpTag::M1) return t.beta;
            Symbol rest = t.alpha + t.gamma + t.delta + t.eps;
            return op.tag == OpTag::M2 ? rest : rest + t.beta;
        }
        case OpTag::DELTA_DISK_NM:
        case OpTag::S1:
        case OpTag::S2: {
            DiskTerms t = disk_terms(n, m, x);
            if (op.tag == OpTag::S1) return t.t[1];
            Symbol s(static_cast<int>(x.size()));
            for (int k = 0; k < 8; ++k)
                if (k != 1) s += t.t[k];
            return op.tag == OpTag::S2 ? s : s + t.t[1];
        }
        case OpTag::M_SING: return m_sing_symbol(n, m, op.index->matrix(), x);
        case OpTag::DELTA_OMEGA: {
            const int dim = 2 * m * n;
            SymbolMat dZ = wirtinger_rect(dim, m, n, 0, m * n, false);
            SymbolMat dZb = wirtinger_rect(dim, m, n, 0, m * n, true);
            CMat Y = to_c(op.omega.imag());
            return (Y * dZ * dZb.transpose()).trace();
        }
        default: break;
    }
    throw InputError("operator has no frozen form");
}

cplx apply(const OperatorId& op, const ScalarField& f, const Vec& x, const DeriveOptions& opt, Warnings* w) {
    if (f.dim != x.size()) throw InputError("field dimension does not match the chart");
    return op_symbol(op, x).apply(f, x, opt, w);
}

OpChartAction op_chart_action(const OperatorId& op, const OpGroupElement& g) {
    const int n = op.n, m = op.m;
    const Chart c = op_chart(op);
    OpChartAction act;
    auto bad = [&] { return InputError("group element does not act on the chart of " + op_name(op.tag)); };
    switch (c) {
        case Chart::H: {
            auto* M = std::get_if<SymplecticMatrix>(&g);
            if (!M) throw bad();
            act.map = [M = *M, n](const Vec& x) { return siegel_to_chart(sp_action(M, chart_to_siegel(x, n))); };
            return act;
        }
        case Chart::D: {
            auto* e = std::get_if<DiskJacobiElement>(&g);
            if (!e) throw bad();
            act.map = [e = *e, n](const Vec& x) { return disk_to_chart(disk_action(e, chart_to_disk(x, n))); };
            return act;
        }
        case Chart::DJ: {
            auto* e = std::get_if<DiskJacobiElement>(&g);
            if (!e) throw bad();
            act.map = [e = *e, n, m](const Vec& x) {
                return disk_jacobi_to_chart(disk_jacobi_action(e, chart_to_disk_jacobi(x, n, m)));
            };
            return act;
        }
        case Chart::HJ: {
            JacobiElement je;
            if (auto* j = std::get_if<JacobiElement>(&g)) {
                je = *j;
            } else if (auto* h = std::get_if<HeisenbergElement>(&g)) {
                je = JacobiElement{SymplecticMatrix::identity(n), *h};
                act.affine = true;
            } else {
                throw bad();
            }
            act.map = [je, n, m](const Vec& x) { return jacobi_to_chart(jacobi_action(je, chart_to_jacobi(x, n, m))); };
            return act;
        }
        case Chart::PV: {
            auto* a = std::get_if<GLnmElement>(&g);
            if (!a) throw bad();
            act.affine = true;
            act.map = [a = *a, n, m](const Vec& x) {
                auto [y, v] = chart_to_pv(x, n, m);
                auto [y2, v2] = glnm_action(a, y, v.rows() ? v : Mat(0, n));
                return pv_to_chart(y2, v2);
            };
            return act;
        }
        case Chart::A: {
            auto* h = std::get_if<HeisenbergElement>(&g);
            if (!h) throw bad();
            act.affine = true;
            act.map = [h = *h, om = op.omega, m, n](const Vec& x) {
                const int mn = m * n;
                Mat u = Eigen::Map<const Mat>(x.data(), n, m).transpose();
                Mat v = Eigen::Map<const Mat>(x.data() + mn, n, m).transpose();
                CMat z = to_c(u) + cplx(0, 1) * to_c(v) + to_c(h.lambda) * om + to_c(h.mu);
                Vec out(2 * mn);
                Mat zr = z.real().transpose(), zi = z.imag().transpose();
                out.head(mn) = Eigen::Map<const Vec>(zr.data(), mn);
                out.tail(mn) = Eigen::Map<const Vec>(zi.data(), mn);
                return out;
            };
            return act;
        }
    }
    throw bad();
}

ScalarField pull_field(const ScalarField& f, const OpChartAction& act, const Vec& x) {
    if (!act.affine) return compose(f, act.map, f.dim);
    // Recover the affine map from symmetric differences, which are exact for affine maps.
    const int d = static_cast<int>(x.size());
    Vec fx = act.map(x);
    Mat A(fx.size(), d);
    for (int k = 0; k < d; ++k) {
        Vec e = Vec::Zero(d);
        e[k] = 0.01 * (1.0 + std::abs(x[k]));
        A.col(k) = (act.map(x + e) - act.map(x - e)) / (2.0 * e[k]);
    }
    return affine_compose(f, A, fx - A * x);
}

double invariance_residual(const OperatorId& op, const OpGroupElement& g, const ScalarField& f, const Vec& x,
                           const DeriveOptions& opt) {
    OpChartAction act = op_chart_action(op, g);
    Vec gx = act.map(x);
    ScalarField pulled = pull_field(f, act, x);
    cplx lhs = apply(op, pulled, x, opt);
    cplx rhs = apply(op, f, gx, opt);
    return rel_diff(lhs, rhs, std::abs(f.eval(gx)));
}

double commutator_check_DPsi(const ScalarField& f, const Vec& x, const DeriveOptions& opt) {
    if (f.dim != 4 || x.size() != 4) throw InputError("commutator check lives on the H_{1,1} chart");
    cplx lhs = commutator_DPsi().freeze(x).apply(f, x, opt);
    cplx rhs = commutator_rhs().freeze(x).apply(f, x, opt);
    return rel_diff(lhs, rhs, std::abs(f.eval(x)));
}

double fourier_ode_residual(const ScalarField& F, double a, double b, cplx lambda, double y, double v,
                        const DeriveOptions& opt) {
    if (F.dim != 2) throw InputError("ODE field must be a function of (y, v)");
    if (!(y > 0.0)) throw DomainError("ODE check requires y > 0");
    Vec p(2);
    p << y, v;
    cplx lhs = y * y * derive(F, p, {2, 0}, opt) + (y + v * v) * derive(F, p, {0, 2}, opt) +
               2.0 * y * v * derive(F, p, {1, 1}, opt);
    cplx rhs = ((a * y + b * v) * (a * y + b * v) + b * b * y + lambda) * F.eval(p);
    return rel_diff(lhs, rhs, std::abs(F.eval(p)));
}

cplx laplace_beltrami(const MetricId& id, const ScalarField& f, const Vec& x, const DeriveOptions& opt) {
    const int d = static_cast<int>(x.size());
    Mat g = metric_gram(id, x).gram;
    Mat gi = g.inverse();
    // dg[a] = ∂_a g, central differences with one Richardson level
    std::vector<Mat> dg(d);
    for (int a = 0; a < d; ++a) {
        double h = 1e-4 * (1.0 + std::abs(x[a]));
        auto cd = [&](double s) {
            Vec xp = x, xm = x;
            xp[a] += s;
            xm[a] -= s;
            return Mat((metric_gram(id, xp).gram - metric_gram(id, xm).gram) / (2.0 * s));
        };
        dg[a] = (4.0 * cd(h / 2) - cd(h)) / 3.0;
    }
    Vec first = Vec::Zero(d);  // coefficient of ∂_b f
    for (int b = 0; b < d; ++b) {
        double s = 0.0;
        for (int a = 0; a < d; ++a) {
            s -= (gi.row(a) * dg[a] * gi.col(b))(0, 0);
            s += 0.5 * gi(a, b) * (gi * dg[a]).trace();
        }
        first[b] = s;
    }
    cplx total = 0.0;
    for (int a = 0; a < d; ++a) {
        for (int b = 0; b < d; ++b) {
            MultiIndex al(d, 0);
            ++al[a];
            ++al[b];
            total += gi(a, b) * derive(f, x, al, opt);
        }
        total += first[a] * derive(f, x, unit_index(d, a), opt);
    }
    return total;
}

}  // namespace sjl
