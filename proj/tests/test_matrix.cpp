#include <random>

#include "catch_amalgamated.hpp"
#include "sjl/errors.hpp"
#include "sjl/groups.hpp"
#include "sjl/matrix.hpp"

using namespace sjl;

TEST_CASE("posdef_check agrees with the eigenvalue sign oracle") {
    Rng rng(1);
    std::uniform_int_distribution<int> dim(1, 6);
    std::uniform_real_distribution<double> shift(-1.5, 1.5);
    int positive = 0;
    for (int k = 0; k < 200; ++k) {
        const int n = dim(rng);
        Mat a = random_symmetric(n, rng, 1.0) + shift(rng) * Mat::Identity(n, n);
        Eigen::SelfAdjointEigenSolver<Mat> es(a, Eigen::EigenvaluesOnly);
        const double least = es.eigenvalues().minCoeff();
        if (std::abs(least) < 1e-9) continue;
        const bool oracle = least > 0.0;
        positive += oracle;
        CHECK(posdef_check(a).positive == oracle);
    }
    CHECK(positive > 20);
    CHECK(positive < 180);
}

TEST_CASE("sym_inverse is an involution") {
    Rng rng(2);
    for (int n = 1; n <= 5; ++n) {
        Mat a = random_matrix(n, n, rng, 1.0);
        Mat y = a * a.transpose() + 0.1 * Mat::Identity(n, n);
        SymInverse inv = sym_inverse(PosDefSymMatrix(y));
        SymInverse back = sym_inverse(PosDefSymMatrix(inv.inverse.mat()));
        CHECK(max_norm(Mat(back.inverse.mat() - y)) / max_norm(y) < 1e-10);
    }
}

TEST_CASE("det is multiplicative") {
    Rng rng(3);
    for (int n = 1; n <= 6; ++n) {
        Mat a = random_matrix(n, n, rng, 1.0), b = random_matrix(n, n, rng, 1.0);
        const double lhs = det(Mat(a * b)), rhs = det(a) * det(b);
        CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(rhs)));
    }
}

TEST_CASE("symmetric matrix validation") {
    Mat a(2, 2);
    a << 1, 2, 3, 4;
    CHECK_THROWS_AS(RealSymMatrix(a), InputError);
    Mat y(2, 2);
    y << 1, 2, 2, 1;
    CHECK_THROWS_WITH(PosDefSymMatrix(y), "Y not positive definite");
    Mat tiny = Mat::Identity(2, 2);
    tiny(0, 1) = 1e-15;
    CHECK(RealSymMatrix(tiny).mat()(1, 0) == RealSymMatrix(tiny).mat()(0, 1));
}

TEST_CASE("symplectic form") {
    Mat j = symplectic_form(2);
    CHECK(max_norm(Mat(j * j + Mat::Identity(4, 4))) == 0.0);
    CHECK(j(0, 2) == 1.0);
    CHECK(j(2, 0) == -1.0);
}
