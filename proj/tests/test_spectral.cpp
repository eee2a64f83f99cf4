#include <cmath>
#include <numbers>

#include "catch_amalgamated.hpp"
#include "sjl/bessel.hpp"
#include "sjl/errors.hpp"
#include "sjl/spectral.hpp"

using namespace sjl;

namespace {

const cplx I(0.0, 1.0);
constexpr double kPi = std::numbers::pi;

LatticeSpec lattice(cplx tau) { return {SiegelPoint(CMat::Constant(1, 1, tau)), 1}; }

FourierIndex idx1(long long a, long long b) { return {IMat::Constant(1, 1, a), IMat::Constant(1, 1, b)}; }

}  // namespace

TEST_CASE("Riemann conditions") {
    RiemannCheck r = riemann_check(SiegelPoint(CMat(I * CMat::Identity(2, 2))));
    CHECK(r.residual < 1e-15);
    CHECK(max_norm(Mat(r.margin_matrix - 2.0 * Mat::Identity(2, 2))) < 1e-15);
    CHECK(riemann_check(SiegelPoint(CMat::Constant(1, 1, 2.0 * I))).margin == Catch::Approx(4.0));
}

TEST_CASE("Fourier characters") {
    LatticeSpec L = lattice(I);
    CHECK(std::abs(fourier_eval(L, idx1(2, -1), CMat::Zero(1, 1)) - 1.0) < 1e-15);
    CHECK(std::abs(fourier_eval(L, idx1(1, 0), CMat::Constant(1, 1, 0.25)) - I) < 1e-15);
    Rng rng(1);
    LatticeSpec L2{random_siegel(2, rng), 1};
    FourierIndex f{IMat::Constant(1, 2, 1), IMat::Constant(1, 2, -2)};
    CMat z = CMat::Constant(1, 2, cplx(0.3, -0.2));
    Mat l(1, 2), u(1, 2);
    l << 2, -1;
    u << 1, 3;
    CHECK(std::abs(fourier_eval(L2, f, z + from_lattice(L2, l, u)) - fourier_eval(L2, f, z)) < 1e-12);
    CHECK(std::abs(std::abs(fourier_eval(L2, f, z)) - 1.0) < 1e-14);
}

TEST_CASE("orthonormality on the torus") {
    LatticeSpec L = lattice(cplx(0.3, 1.2));
    TorusGrid g{8};
    CHECK(std::abs(torus_inner_product(L, idx1(0, 0), idx1(0, 0), g) - 1.0) < 1e-14);
    CHECK(std::abs(torus_inner_product(L, idx1(1, 0), idx1(0, 0), g)) < 1e-12);
    CMat gram = torus_gram(L, index_box(1, 1, 2), g);
    CHECK(gram.rows() == 25);
    CHECK(max_norm(CMat(gram - CMat::Identity(25, 25))) < 1e-8);
    CHECK_THROWS_AS(torus_inner_product(L, idx1(4, 0), idx1(0, 0), TorusGrid{6}), InputError);
}

TEST_CASE("Fourier basis eigenvalues") {
    LatticeSpec L = lattice(I);
    std::vector<CMat> zs;
    Rng rng(2);
    for (int k = 0; k < 10; ++k) zs.push_back(CMat::Constant(1, 1, cplx(k * 0.1, 0.3 - 0.05 * k)));
    EigenEstimate zero = basis_eigen_residual(L, idx1(0, 0), zs);
    CHECK(std::abs(zero.eigenvalue) < 1e-12);
    EigenEstimate e = basis_eigen_residual(L, idx1(1, 0), zs);
    CHECK(e.spread < 1e-6);
    CHECK(std::abs(e.eigenvalue - (-kPi * kPi)) < 1e-8);
    CHECK(std::abs(e.eigenvalue - e.closed_form) < 1e-8);
}

TEST_CASE("K-Bessel function") {
    CHECK(std::abs(k_bessel(0.5, 1.0) - std::sqrt(kPi / 2.0) * std::exp(-1.0)) < 1e-12);
    CHECK(std::abs(k_bessel(1.5, 2.0) - 0.1799066579520922) < 1e-12);
    const cplx s(0.5, 14.134725);
    CHECK(std::abs(k_bessel(s, 3.0) - k_bessel(-s, 3.0)) < 1e-10 * std::abs(k_bessel(s, 3.0)));
    for (double z : {0.5, 2.0, 6.0, 40.0}) {
        Warnings quiet;
        const cplx k = k_bessel(s, z, &quiet);
        CHECK(quiet.empty());
        const cplx rec = k_bessel(s + 1.0, z) - k_bessel(s - 1.0, z) - 2.0 * s / z * k;
        CHECK(std::abs(rec) < 1e-11 * std::abs(k));
    }
    Warnings w;
    k_bessel(30.0, 1.0, &w);
    CHECK_FALSE(w.empty());
}

TEST_CASE("eigenfunction catalog") {
    Rng rng(3);
    std::vector<Vec> pts;
    for (int k = 0; k < 5; ++k) pts.push_back(jacobi_to_chart(random_jacobi_point(1, 1, rng)));
    CHECK(catalog_eigen_residual(eigen_entry("y^s"), 2.5, 1.0, pts) < 1e-6);
    CHECK(catalog_eigen_residual(eigen_entry("y^s v"), 1.3, 1.0, pts) < 1e-6);
    CHECK(catalog_eigen_residual(eigen_entry("bessel"), 2.5, 1.0, pts) < 1e-6);
    CHECK(eigen_entry("y^s v").eigenvalue(1.3) == cplx(1.3 * 2.3));
    CHECK_THROWS_AS(eigen_entry("nope"), InputError);
}

TEST_CASE("Maass-Jacobi conditions") {
    Rng rng(4);
    std::vector<Vec> pts;
    for (int k = 0; k < 5; ++k) pts.push_back(jacobi_to_chart(random_jacobi_point(1, 1, rng)));
    MaassReport c = maass_jacobi_residual(monomial(4, {}, 1.0), 0.0, pts);
    for (const auto& [name, v] : c.mj1) CHECK(v == 0.0);
    CHECK(c.mj2 == 0.0);

    MaassReport ys = maass_jacobi_residual(monomial(4, {{1, 2.5}}), 3.75, pts);
    CHECK(ys.mj2 < 1e-6);
    bool inversion_fails = false;
    for (const auto& [name, v] : ys.mj1) inversion_fails = inversion_fails || (name == "inversion" && v > 1e-3);
    CHECK(inversion_fails);

    MaassReport b = maass_jacobi_residual(eigen_entry("bessel").make(2.5, 1.0), 3.75, pts);
    for (const auto& [name, v] : b.mj1)
        if (name != "inversion") CHECK(v < 1e-8);
}

TEST_CASE("automorphic factor") {
    Rng rng(5);
    JacobiIndexMatrix M(Mat::Identity(1, 1));
    JacobiPoint p = random_jacobi_point(1, 1, rng);
    CHECK(std::abs(automorphic_factor(2, M, JacobiElement::identity(1, 1), p) - 1.0) < 1e-15);
    JacobiElement c{SymplecticMatrix::identity(1),
                    HeisenbergElement(Mat::Zero(1, 1), Mat::Zero(1, 1), Mat::Constant(1, 1, 0.3))};
    CHECK(std::abs(automorphic_factor(2, M, c, p) - std::exp(2.0 * kPi * I * 0.3)) < 1e-12);
    for (int k = 0; k < 20; ++k) {
        JacobiElement g = random_jacobi(1, 1, rng), h = random_jacobi(1, 1, rng);
        cplx lhs = automorphic_factor(2, M, jacobi_mul(g, h), p);
        cplx rhs = automorphic_factor(2, M, g, jacobi_action(h, p)) * automorphic_factor(2, M, h, p);
        CHECK(std::abs(lhs - rhs) < 1e-9 * std::abs(lhs));
    }
}
