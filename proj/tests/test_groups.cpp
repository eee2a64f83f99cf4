#include "catch_amalgamated.hpp"
#include "sjl/errors.hpp"
#include "sjl/groups.hpp"
#include "sjl/points.hpp"

using namespace sjl;

namespace {

const cplx I(0.0, 1.0);

Mat m1(double v) { return Mat::Constant(1, 1, v); }

SiegelPoint tau(cplx z) { return SiegelPoint(CMat::Constant(1, 1, z)); }

Mat jmat(int n) { return symplectic_form(n); }

}  // namespace

TEST_CASE("Sp(n,R) acts by fractional linear maps") {
    CHECK(std::abs(sp_action(SymplecticMatrix(jmat(1)), tau(I)).omega()(0, 0) - I) < 1e-15);
    Mat t(2, 2);
    t << 1, 2, 0, 1;
    CHECK(std::abs(sp_action(SymplecticMatrix(t), tau(I)).omega()(0, 0) - cplx(2, 1)) < 1e-15);
    CHECK(std::abs(im_pullback(SymplecticMatrix(jmat(1)), tau(cplx(1, 1))).mat()(0, 0) - 0.5) < 1e-15);
    Rng rng(1);
    for (int k = 0; k < 10; ++k) {
        auto M = random_symplectic(2, rng);
        SiegelPoint om(CMat(I * CMat::Identity(2, 2)));
        CHECK(max_norm(Mat(im_pullback(M, om).mat() - sp_action(M, om).Y())) < 1e-12);
    }
}

TEST_CASE("non-symplectic matrices are rejected") {
    Mat a = Mat::Identity(2, 2);
    a(0, 0) = 2.0;
    CHECK_THROWS_AS(SymplecticMatrix(a), InputError);
}

TEST_CASE("Heisenberg law") {
    auto e = JacobiElement::identity(1, 1);
    JacobiElement g{e.M, HeisenbergElement(m1(1), m1(0), m1(0))};
    JacobiElement h{e.M, HeisenbergElement(m1(0), m1(1), m1(0))};
    auto p = jacobi_mul(g, h);
    CHECK(p.h.lambda(0, 0) == 1.0);
    CHECK(p.h.mu(0, 0) == 1.0);
    CHECK(p.h.kappa(0, 0) == 1.0);

    JacobiElement f{e.M, HeisenbergElement(m1(1), m1(1), m1(1))};
    auto fi = jacobi_inv(f);
    CHECK(fi.h.lambda(0, 0) == -1.0);
    CHECK(fi.h.mu(0, 0) == -1.0);
    CHECK(fi.h.kappa(0, 0) == -1.0);
}

TEST_CASE("Jacobi group inverses") {
    Rng rng(2);
    for (int k = 0; k < 20; ++k) {
        auto g = random_jacobi(2, 2, rng);
        auto gg = jacobi_inv(jacobi_inv(g));
        CHECK(max_norm(Mat(gg.M.mat() - g.M.mat())) < 1e-10);
        CHECK(max_norm(Mat(gg.h.kappa - g.h.kappa)) < 1e-10);
    }
}

TEST_CASE("Jacobi action") {
    Rng rng(3);
    JacobiPoint p(tau(cplx(0.2, 1.5)), CMat::Constant(1, 1, cplx(0.3, -0.4)));
    HeisenbergElement h(m1(2), m1(-1), m1(0.5));
    JacobiPoint q = jacobi_action(JacobiElement{SymplecticMatrix::identity(1), h}, p);
    CHECK(std::abs(q.omega()(0, 0) - p.omega()(0, 0)) < 1e-15);
    CHECK(std::abs(q.Z()(0, 0) - (p.Z()(0, 0) + 2.0 * p.omega()(0, 0) - 1.0)) < 1e-14);

    JacobiPoint base(SiegelPoint(CMat(I * CMat::Identity(2, 2))), CMat::Zero(1, 2));
    JacobiPoint fixed = jacobi_action(JacobiElement{SymplecticMatrix(jmat(2)), HeisenbergElement::zero(1, 2)}, base);
    CHECK(max_norm(CMat(fixed.omega() - base.omega())) < 1e-15);
    CHECK(max_norm(fixed.Z()) < 1e-15);
}

TEST_CASE("embedding into Sp(m+n)") {
    Mat want(4, 4);
    want << 1, 0, 0, 0, 1, 1, 0, 0, 0, 0, 1, -1, 0, 0, 0, 1;
    JacobiElement g{SymplecticMatrix::identity(1), HeisenbergElement(m1(1), m1(0), m1(0))};
    CHECK(max_norm(Mat(embed_sp(g).mat() - want)) < 1e-15);
    CHECK(max_norm(Mat(embed_sp(JacobiElement::identity(1, 1)).mat() - Mat::Identity(4, 4))) == 0.0);
}

TEST_CASE("disk group") {
    auto e = to_disk_group(JacobiElement::identity(1, 1));
    CHECK(max_norm(CMat(e.P - CMat::Identity(1, 1))) < 1e-15);
    CHECK(max_norm(e.Q) < 1e-15);
    CHECK(max_norm(e.xi) < 1e-15);
    auto j = to_disk_group(JacobiElement{SymplecticMatrix(jmat(1)), HeisenbergElement::zero(1, 1)});
    CHECK(std::abs(j.P(0, 0) - I) < 1e-15);
    CHECK(std::abs(j.Q(0, 0)) < 1e-15);

    DiskJacobiPoint origin(DiskPoint(CMat::Zero(1, 1)), CMat::Zero(1, 1));
    auto out = disk_jacobi_action(e, origin);
    CHECK(max_norm(out.W()) < 1e-15);
    CHECK(max_norm(out.eta()) < 1e-15);
}

TEST_CASE("disk points must lie inside the disk") {
    CHECK_THROWS_AS(DiskPoint(CMat::Constant(1, 1, cplx(1.0, 0.0))), DomainError);
    CHECK_NOTHROW(DiskPoint(CMat::Constant(1, 1, cplx(0.5, 0.5))));
}

TEST_CASE("GL(n,m) action") {
    GLnmElement a(m1(2), HeisenbergElement::zero(1, 1));
    auto [y, v] = glnm_action(a, m1(1), m1(3));
    CHECK(y(0, 0) == Catch::Approx(4.0));
    CHECK(v(0, 0) == Catch::Approx(6.0));
    auto [y0, v0] = glnm_action(GLnmElement::identity(1, 1), m1(1), m1(3));
    CHECK(y0(0, 0) == 1.0);
    CHECK(v0(0, 0) == 3.0);
}

TEST_CASE("pairing is invariant under the right Sp action") {
    Rng rng(4);
    for (int k = 0; k < 20; ++k) {
        auto M = random_symplectic(2, rng);
        Mat l = random_matrix(2, 2, rng, 1.0), u = random_matrix(2, 2, rng, 1.0);
        Mat lp = random_matrix(2, 2, rng, 1.0), up = random_matrix(2, 2, rng, 1.0);
        auto [l2, u2] = right_sp_action(l, u, M);
        auto [lp2, up2] = right_sp_action(lp, up, M);
        CHECK(max_norm(Mat(heisenberg_pairing(l2, u2, lp2, up2) - heisenberg_pairing(l, u, lp, up))) < 1e-10);
    }
}
