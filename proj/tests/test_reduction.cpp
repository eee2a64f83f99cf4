#include <cmath>
#include <numbers>
#include <random>

#include "catch_amalgamated.hpp"
#include "sjl/errors.hpp"
#include "sjl/reduction.hpp"

using namespace sjl;

namespace {

const cplx I(0.0, 1.0);

SiegelPoint tau(cplx z) { return SiegelPoint(CMat::Constant(1, 1, z)); }

Mat m2(double a, double b, double c, double d) {
    Mat m(2, 2);
    m << a, b, c, d;
    return m;
}

// Classical SL(2,Z) reduction into x in (-1/2, 1/2], |tau| >= 1.
cplx classical(cplx t) {
    while (true) {
        t -= std::ceil(t.real() - 0.5);
        if (std::norm(t) >= 1.0) return t;
        t = -1.0 / t;
    }
}

}  // namespace

TEST_CASE("Minkowski conditions") {
    CHECK(is_minkowski_reduced(Mat::Identity(2, 2)).reduced);
    CHECK(is_minkowski_reduced(m2(2, 0.5, 0.5, 3)).reduced);
    MinkowskiCheck bad = is_minkowski_reduced(m2(2, -0.5, -0.5, 3));
    CHECK_FALSE(bad.reduced);
    bool m2_failed = false;
    for (const auto& c : bad.conditions) m2_failed = m2_failed || (c.name == "M.2" && !c.holds);
    CHECK(m2_failed);
    MinkowskiCheck short_vec = is_minkowski_reduced(m2(5, 4, 4, 5));
    CHECK_FALSE(short_vec.reduced);
    REQUIRE(short_vec.witness);
}

TEST_CASE("Minkowski reduction") {
    MinkowskiResult id = minkowski_reduce(Mat::Identity(2, 2));
    CHECK(max_norm(Mat(id.reduced - Mat::Identity(2, 2))) == 0.0);
    MinkowskiResult r = minkowski_reduce(m2(5, 4, 4, 5));
    CHECK(max_norm(Mat(r.reduced - m2(2, 1, 1, 5))) < 1e-12);
    CHECK(std::abs(std::abs(det(Mat(r.U.cast<double>()))) - 1.0) < 1e-12);
    MinkowskiResult again = minkowski_reduce(r.reduced);
    CHECK(max_norm(Mat(again.reduced - r.reduced)) < 1e-12);
}

TEST_CASE("Minkowski reduction matches a brute-force search") {
    Rng rng(1);
    for (int k = 0; k < 20; ++k) {
        Mat a = random_matrix(2, 2, rng, 2.0);
        Mat y = a * a.transpose() + 0.1 * Mat::Identity(2, 2);
        MinkowskiResult r = minkowski_reduce(y);
        double best = INFINITY;
        for (int p = -6; p <= 6; ++p)
            for (int q = -6; q <= 6; ++q) {
                if (p == 0 && q == 0) continue;
                Vec v(2);
                v << p, q;
                best = std::min(best, double(v.transpose() * y * v));
            }
        CHECK(r.reduced(0, 0) == Catch::Approx(best).epsilon(1e-10));
        CHECK(is_minkowski_reduced(r.reduced).reduced);
    }
}

TEST_CASE("Siegel reduction n=1") {
    SiegelResult fixed = siegel_reduce(tau(2.0 * I));
    CHECK(std::abs(fixed.reduced.omega()(0, 0) - 2.0 * I) < 1e-15);
    CHECK(max_norm(Mat(fixed.gamma.mat() - Mat::Identity(2, 2))) == 0.0);
    SiegelResult r = siegel_reduce(tau(cplx(0.3, 0.4)));
    CHECK(std::abs(r.reduced.omega()(0, 0) - cplx(-0.2, 1.6)) < 1e-12);
    CHECK(is_siegel_reduced(tau(2.0 * I)).reduced);
    CHECK_FALSE(is_siegel_reduced(tau(cplx(0.3, 0.4))).reduced);
    CHECK(is_siegel_reduced(SiegelPoint(CMat(I * CMat::Identity(2, 2)))).reduced);
}

TEST_CASE("Siegel reduction agrees with the classical algorithm") {
    Rng rng(2);
    std::uniform_real_distribution<double> ux(-4.0, 4.0), uy(-4.0, 1.0);
    for (int k = 0; k < 200; ++k) {
        const cplx t(ux(rng), std::exp(uy(rng)));
        const cplx ref = classical(t);
        if (std::abs(std::abs(ref.real()) - 0.5) < 1e-6 || std::abs(ref) < 1.0 + 1e-6) continue;
        SiegelResult r = siegel_reduce(tau(t));
        CHECK(std::abs(r.reduced.omega()(0, 0) - ref) < 1e-10);
        CHECK(std::abs(sp_action(r.gamma, tau(t)).omega()(0, 0) - r.reduced.omega()(0, 0)) < 1e-10);
        CHECK(r.reduced.Y()(0, 0) >= t.imag());
    }
}

TEST_CASE("Siegel reduction n=2") {
    Rng rng(3);
    for (int k = 0; k < 10; ++k) {
        Mat a = random_matrix(2, 2, rng, 1.0);
        SiegelPoint p(random_symmetric(2, rng, 3.0), Mat(0.3 * a * a.transpose() + 0.05 * Mat::Identity(2, 2)));
        SiegelResult r = siegel_reduce(p);
        CHECK(max_norm(CMat(sp_action(r.gamma, p).omega() - r.reduced.omega())) < 1e-10);
        CHECK(det(r.reduced.Y()) >= det(p.Y()) * (1.0 - 1e-12));
        CHECK(is_siegel_reduced(r.reduced).reduced);
    }
}

TEST_CASE("Jacobi reduction") {
    JacobiPoint base(tau(2.0 * I), CMat::Zero(1, 1));
    JacobiReduceResult b = jacobi_reduce(base);
    CHECK(std::abs(b.reduced.Z()(0, 0)) < 1e-15);
    JacobiReduceResult r = jacobi_reduce(JacobiPoint(tau(2.0 * I), CMat::Constant(1, 1, cplx(3.7, 5.0))));
    CHECK(std::abs(r.reduced.Z()(0, 0) - cplx(0.7, 1.0)) < 1e-12);
    CHECK(r.lambda_int(0, 0) == 2.0);
    CHECK(r.mu_int(0, 0) == 3.0);
    for (double f : {r.lambda_frac(0, 0), r.mu_frac(0, 0)}) {
        CHECK(f >= 0.0);
        CHECK(f < 1.0);
    }
}

TEST_CASE("Siegel volumes") {
    const double pi = std::numbers::pi;
    CHECK(siegel_volume(1).value == Catch::Approx(pi / 3.0).epsilon(1e-14));
    CHECK(siegel_volume(2).value == Catch::Approx(std::pow(pi, 3) / 270.0).epsilon(1e-14));
    CHECK(siegel_volume(3).rational == "1/127575");
    CHECK(siegel_volume(4).rational == "1/200930625");
    CHECK(siegel_volume(4).pi_power == 10);
    CHECK_THROWS_AS(siegel_volume(0), InputError);
}
