#include "catch_amalgamated.hpp"
#include "sjl/errors.hpp"
#include "sjl/geometry.hpp"

using namespace sjl;

namespace {

const cplx I(0.0, 1.0);

CMat c1(cplx z) { return CMat::Constant(1, 1, z); }

Vec vec(std::initializer_list<double> xs) {
    Vec v(xs.size());
    int k = 0;
    for (double x : xs) v[k++] = x;
    return v;
}

}  // namespace

TEST_CASE("Cayley transform values") {
    CHECK(std::abs(cayley(DiskPoint(c1(0.0))).omega()(0, 0) - I) < 1e-15);
    CHECK(std::abs(cayley(DiskPoint(c1(0.5))).omega()(0, 0) - 3.0 * I) < 1e-14);
    CHECK(std::abs(cayley_inv(SiegelPoint(c1(3.0 * I))).W()(0, 0) - 0.5) < 1e-15);

    JacobiPoint q = partial_cayley(DiskJacobiPoint(DiskPoint(c1(0.5)), c1(1.0)));
    CHECK(std::abs(q.omega()(0, 0) - 3.0 * I) < 1e-14);
    CHECK(std::abs(q.Z()(0, 0) - 4.0 * I) < 1e-14);
    DiskJacobiPoint p = partial_cayley_inv(JacobiPoint(SiegelPoint(c1(3.0 * I)), c1(4.0 * I)));
    CHECK(std::abs(p.W()(0, 0) - 0.5) < 1e-14);
    CHECK(std::abs(p.eta()(0, 0) - 1.0) < 1e-14);
}

TEST_CASE("Cayley round trips") {
    Rng rng(1);
    for (int n = 1; n <= 3; ++n)
        for (int k = 0; k < 100; ++k) {
            DiskPoint w = random_disk(n, rng);
            CHECK(max_norm(CMat(cayley_inv(cayley(w)).W() - w.W())) < 1e-12);
        }
}

TEST_CASE("chart coordinates round trip") {
    Rng rng(2);
    JacobiPoint p = random_jacobi_point(2, 2, rng);
    Vec x = jacobi_to_chart(p);
    CHECK(x.size() == chart_dim(Chart::HJ, 2, 2));
    JacobiPoint q = chart_to_jacobi(x, 2, 2);
    CHECK(max_norm(CMat(q.omega() - p.omega())) == 0.0);
    CHECK(max_norm(CMat(q.Z() - p.Z())) == 0.0);
    CHECK(sym_dim(3) == 6);
}

TEST_CASE("Gram matrices at base points") {
    // JACOBI(2,1) at (iI, 0): 1 on diagonal coordinates, 2 on the off-diagonal entry of X and Y, 1 on U, V.
    Vec x = vec({0, 0, 0, 1, 0, 1, 0, 0, 0, 0});
    Mat g = metric_gram(MetricId::jacobi(2, 1), x).gram;
    Vec want = vec({1, 2, 1, 1, 2, 1, 1, 1, 1, 1});
    CHECK(max_norm(Mat(g - Mat(want.asDiagonal()))) < 1e-12);

    Mat s = metric_gram(MetricId::siegel(1), vec({0.3, 2.0})).gram;
    CHECK(max_norm(Mat(s - 0.25 * Mat::Identity(2, 2))) < 1e-14);

    const double y = 1.7, v = 0.4;
    Mat h = metric_gram(MetricId::h11(), vec({0.2, y, -0.3, v})).gram;
    CHECK(h(0, 2) == Catch::Approx(-v / (y * y)));
    CHECK(h(0, 0) == Catch::Approx((y + v * v) / (y * y * y)));
    CHECK(h(2, 2) == Catch::Approx(1.0 / y));
}

TEST_CASE("H11 agrees with JACOBI(1,1)") {
    Rng rng(3);
    for (int k = 0; k < 20; ++k) {
        Vec x = jacobi_to_chart(random_jacobi_point(1, 1, rng));
        Mat a = metric_gram(MetricId::h11(), x).gram, b = metric_gram(MetricId::jacobi(1, 1), x).gram;
        CHECK(max_norm(Mat(a - b)) < 1e-10 * std::max(1.0, max_norm(b)));
    }
}

TEST_CASE("pullback invariance") {
    Rng rng(4);
    Vec x = jacobi_to_chart(random_jacobi_point(1, 1, rng));
    CHECK(pullback_residual(MetricId::jacobi(1, 1), JacobiElement::identity(1, 1), x) < 1e-10);
    JacobiElement h{SymplecticMatrix::identity(1), random_heisenberg(1, 1, rng)};
    CHECK(pullback_residual(MetricId::jacobi(1, 1), h, x) < 1e-8);
    for (int k = 0; k < 5; ++k) {
        Vec s = siegel_to_chart(random_siegel(2, rng));
        CHECK(pullback_residual(MetricId::siegel(2), random_symplectic(2, rng), s) < 1e-6);
        Vec j = jacobi_to_chart(random_jacobi_point(2, 1, rng));
        CHECK(pullback_residual(MetricId::jacobi(2, 1), random_jacobi(2, 1, rng), j) < 1e-6);
    }
}

TEST_CASE("volume density") {
    CHECK(volume_density(MetricId::jacobi(1, 1), vec({0, 1, 0, 0})) == Catch::Approx(1.0));
    CHECK(volume_density(MetricId::jacobi(1, 1), vec({0.4, 2, 0.1, -0.3})) == Catch::Approx(0.125));
    Rng rng(5);
    Vec x = jacobi_to_chart(random_jacobi_point(1, 2, rng));
    CHECK(volume_invariance_residual(MetricId::jacobi(1, 2), random_jacobi(1, 2, rng), x) < 1e-6);
}

TEST_CASE("scalar curvature") {
    CHECK(scalar_curvature(MetricId::h11(), vec({0, 1, 0, 0})).scalar == Catch::Approx(-3.0).margin(1e-3));
    CHECK(scalar_curvature(MetricId::siegel(1), vec({0, 1})).scalar == Catch::Approx(-2.0).margin(1e-3));
}

TEST_CASE("metrics reject points off the space") {
    CHECK_THROWS(metric_gram(MetricId::h11(), vec({0, -1, 0, 0})));
    CHECK_THROWS(metric_gram(MetricId::siegel(1), vec({0, 1, 2})));
}
