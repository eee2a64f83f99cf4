#include <cmath>
#include <numbers>

#include "catch_amalgamated.hpp"
#include "sjl/bessel.hpp"
#include "sjl/diffop.hpp"
#include "sjl/errors.hpp"
#include "sjl/operators.hpp"

using namespace sjl;

namespace {

Vec vec(std::initializer_list<double> xs) {
    Vec v(xs.size());
    int k = 0;
    for (double x : xs) v[k++] = x;
    return v;
}

// Strip the exact-derivative hook so derive falls back to finite differences.
ScalarField fd_only(ScalarField f) {
    f.exact = nullptr;
    f.exact_order = 0;
    return f;
}

ScalarField field(int dim, std::function<cplx(const Vec&)> eval) {
    ScalarField f;
    f.dim = dim;
    f.eval = std::move(eval);
    return f;
}

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace

TEST_CASE("derive on closed forms") {
    Vec x = vec({0.3, 0.7});
    ScalarField sq = field(2, [](const Vec& p) { return cplx(p[0] * p[0]); });
    CHECK(std::abs(derive(sq, x, {2, 0}) - 2.0) < 1e-8);
    ScalarField c = field(2, [](const Vec&) { return cplx(5.0); });
    CHECK(std::abs(derive(c, x, {1, 0})) < 1e-10);
    CHECK(std::abs(derive(c, x, {1, 2})) < 1e-8);
    ScalarField e = field(2, [](const Vec& p) { return std::exp(cplx(p[0] + 2.0 * p[1])); });
    const cplx ev = e.eval(x);
    CHECK(rel(derive(e, x, {1, 1}), 2.0 * ev) < 1e-6);
    CHECK(rel(derive(e, x, {1, 2}), 4.0 * ev) < 1e-5);
    CHECK(rel(derive(e, x, {2, 2}), 4.0 * ev) < 1e-4);
    ScalarField s = field(2, [](const Vec& p) { return cplx(std::sin(p[0]) * std::cos(p[1])); });
    CHECK(rel(derive(s, x, {1, 1}), -std::cos(0.3) * std::sin(0.7)) < 1e-8);
    // third order: rounding error grows like eps / h^3
    CHECK(rel(derive(s, x, {3, 0}), -std::cos(0.3) * std::cos(0.7)) < 1e-5);
}

TEST_CASE("exact derivatives agree with finite differences") {
    Rng rng(1);
    CVec c(4);
    c << cplx(0.3, 0.1), cplx(-0.2, 0.4), cplx(0.5, -0.3), cplx(0.1, 0.2);
    std::vector<ScalarField> fields = {
        exp_linear(c),
        monomial(4, {{1, 2.5}, {3, 1.0}}),
        monomial(4, {{0, 2.0}, {1, cplx(0.5, 14.0)}}),
        affine_compose(exp_linear(c), Mat(Mat::Identity(4, 4) * 1.5), Vec(Vec::Constant(4, 0.1))),
    };
    for (const auto& f : fields) {
        Vec x = jacobi_to_chart(random_jacobi_point(1, 1, rng));
        for (const MultiIndex& a : std::vector<MultiIndex>{{1, 0, 0, 0}, {0, 2, 0, 0}, {1, 1, 0, 1}, {0, 0, 2, 1}}) {
            const cplx exact = derive(f, x, a);
            CHECK(rel(derive(fd_only(f), x, a), exact) < (order(a) <= 2 ? 1e-6 : 1e-4) * std::max(1.0, std::abs(exact)));
        }
    }
}

TEST_CASE("Wirtinger convention: d tr(A Omega) / d Omega = (A + tA)/2") {
    Rng rng(2);
    const int n = 2;
    Mat a = random_matrix(n, n, rng, 1.0);
    ScalarField f = field(6, [&](const Vec& x) {
        CMat om = chart_to_siegel(x, n).omega();
        return (a.cast<cplx>() * om).trace();
    });
    Vec x = siegel_to_chart(random_siegel(n, rng));
    SymbolMat d = wirtinger_sym(6, n, 0, 3, false);
    SymbolMat db = wirtinger_sym(6, n, 0, 3, true);
    Mat want = 0.5 * (a + a.transpose());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            CHECK(std::abs(d(i, j).apply(f, x) - want(i, j)) < 1e-10);
            CHECK(std::abs(db(i, j).apply(f, x)) < 1e-10);
        }
}

TEST_CASE("DELTA_11 catalog values") {
    Vec p = vec({0.1, 1.3, 0.2, 0.3});
    auto op = OperatorId::make(OpTag::DELTA_11);
    ScalarField ys = monomial(4, {{1, 2.5}});
    CHECK(rel(apply(op, ys, p), 3.75 * ys.eval(p)) < 1e-10);
    ScalarField ysv = monomial(4, {{1, 1.3}, {3, 1.0}});
    CHECK(rel(apply(op, ysv, p), 1.3 * 2.3 * ysv.eval(p)) < 1e-10);
    for (int k = 0; k < 4; ++k) CHECK(std::abs(apply(op, monomial(4, {{k, 1.0}}), p)) < 1e-12);
    CHECK(std::abs(apply(op, monomial(4, {{0, 1.0}, {3, 1.0}}), p)) < 1e-12);
    CHECK(std::abs(apply(op, monomial(4, {{2, 1.0}, {3, 1.0}}), p)) < 1e-12);
}

TEST_CASE("DELTA_NM at (1,1) equals DELTA_11") {
    Rng rng(3);
    for (int k = 0; k < 5; ++k) {
        Vec x = jacobi_to_chart(random_jacobi_point(1, 1, rng));
        CVec c = CVec::Constant(4, cplx(0.3, -0.2));
        c[k % 4] = 0.7;
        ScalarField f = exp_linear(c);
        CHECK(rel(apply(OperatorId::make(OpTag::DELTA_NM, 1, 1), f, x), apply(OperatorId::make(OpTag::DELTA_11), f, x)) <
              1e-10);
    }
}

TEST_CASE("B_J on powers of det Y") {
    Rng rng(4);
    const cplx s(1.7, 0.3);
    for (int n = 1; n <= 3; ++n) {
        Vec x = sym_to_vec(random_siegel(n, rng).Y());
        ScalarField f = field(int(x.size()), [n, s](const Vec& v) { return std::pow(cplx(det(vec_to_sym(v, n))), s); });
        for (int j = 1; j <= n; ++j) {
            const cplx want = double(n) * std::pow(s, j) * f.eval(x);
            CHECK(rel(apply(OperatorId::b_j(n, j), f, x), want) < 1e-5 * std::max(1.0, std::abs(want)));
        }
    }
}

TEST_CASE("M_SING") {
    auto op = OperatorId::m_sing(1, JacobiIndexMatrix(Mat::Identity(1, 1)));
    Vec x = vec({1.4, 0.3});
    CHECK(std::abs(apply(op, monomial(2, {}, 3.0), x)) < 1e-12);
    GLnmElement dil(Mat::Constant(1, 1, 2.0), HeisenbergElement::zero(1, 1));
    CVec c(2);
    c << cplx(0.4, 0.1), cplx(-0.3, 0.2);
    CHECK(invariance_residual(op, dil, exp_linear(c), x) < 1e-5);
    CHECK_THROWS_AS(OperatorId::m_sing(3, JacobiIndexMatrix(Mat::Identity(1, 1))), InputError);
}

TEST_CASE("index matrices are validated") {
    Mat a(2, 2);
    a << 1, 0.5, 0.5, 1;
    CHECK_NOTHROW(JacobiIndexMatrix(a));
    a(0, 1) = a(1, 0) = 0.3;
    CHECK_THROWS_AS(JacobiIndexMatrix(a), InputError);
    CHECK_THROWS_AS(JacobiIndexMatrix(Mat::Constant(1, 1, 0.5)), InputError);
}

TEST_CASE("invariance of DELTA_NM under the Jacobi group") {
    Rng rng(5);
    auto op = OperatorId::make(OpTag::DELTA_NM, 1, 1);
    CVec c(4);
    c << 1, 2, 3, 4;
    c *= 0.25;
    Vec x = jacobi_to_chart(random_jacobi_point(1, 1, rng));
    CHECK(invariance_residual(op, JacobiElement::identity(1, 1), exp_linear(c), x) < 1e-6);
    for (int k = 0; k < 3; ++k) CHECK(invariance_residual(op, random_jacobi(1, 1, rng), exp_linear(c), x) < 1e-5);
}

TEST_CASE("commutator identity") {
    Vec x = vec({0.0, 1.0, 0.0, 0.3});
    CHECK(commutator_check_DPsi(monomial(4, {}, 2.0), x) < 1e-12);
    CVec c(4);
    c << 1, 2, 3, 4;
    CHECK(commutator_check_DPsi(exp_linear(c), x) < 1e-4);
    Rng rng(6);
    for (int k = 0; k < 10; ++k) {
        Vec p = jacobi_to_chart(random_jacobi_point(1, 1, rng));
        CHECK(commutator_check_DPsi(monomial(4, {{1, 2.0}, {3, 1.0}}), p) < 1e-4);
    }
    // finite differences through order four stay within tolerance
    CHECK(commutator_check_DPsi(fd_only(monomial(4, {{1, 2.0}, {3, 1.0}})), x) < 1e-4);
}

TEST_CASE("Fourier coefficient ODE") {
    const double a = 2.0 * std::numbers::pi, s = 2.5;
    SeparableTerm t;
    t.factors.push_back({0, product({pow_exp(0.5), bessel_k(s - 0.5, a)})});
    ScalarField F = separable_field(2, {t});
    for (double y : {0.5, 1.0, 2.0}) CHECK(fourier_ode_residual(F, a, 0.0, s * (s - 1.0), y, 0.0) < 1e-6);
    CHECK(fourier_ode_residual(monomial(2, {}, 0.0), a, 0.0, 0.0, 1.0, 0.0) == 0.0);
    CHECK(fourier_ode_residual(monomial(2, {{0, 1.0}}), a, 0.0, 0.0, 1.0, 0.0) > 0.5);
    CHECK_THROWS_AS(fourier_ode_residual(F, a, 0.0, 0.0, -1.0, 0.0), DomainError);
}

TEST_CASE("Laplace-Beltrami of JACOBI(1,1) matches DELTA_11") {
    Rng rng(7);
    CVec c(4);
    c << cplx(0.5, 0.2), cplx(-0.4, 0.1), cplx(0.3, 0.3), cplx(0.2, -0.6);
    for (int k = 0; k < 3; ++k) {
        Vec x = jacobi_to_chart(random_jacobi_point(1, 1, rng));
        ScalarField f = exp_linear(c);
        CHECK(rel(laplace_beltrami(MetricId::jacobi(1, 1), f, x), apply(OperatorId::make(OpTag::DELTA_11), f, x)) <
              1e-5);
    }
}

TEST_CASE("operator names round trip") {
    for (OpTag t : {OpTag::DELTA_N, OpTag::DELTA_NM, OpTag::M1, OpTag::S2, OpTag::B_J, OpTag::DELTA_OMEGA})
        CHECK(op_from_name(op_name(t)) == t);
    CHECK_THROWS_AS(op_from_name("NOPE"), InputError);
}
