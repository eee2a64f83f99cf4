#include <array>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <string>
#include <sys/wait.h>

#include "catch_amalgamated.hpp"
#include "sjl/errors.hpp"
#include "sjl/io.hpp"
#include "sjl/suites.hpp"

using namespace sjl;

namespace {

struct Run {
    int code;
    std::string out;
};

std::string quote(const std::string& s) {
    std::string q = "'";
    for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
    return q + "'";
}

Run cli(const std::string& args, bool merge_stderr = false) {
    const char* exe = std::getenv("SJL_CLI");
    REQUIRE(exe != nullptr);
    std::string cmd = std::string("env -u SJL_CONFIG ") + quote(exe) + " " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null");
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    while (std::size_t n = fread(buf.data(), 1, buf.size(), p)) out.append(buf.data(), n);
    int status = pclose(p);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

}  // namespace

TEST_CASE("parse and emit points") {
    AnyPoint p = parse_point(json::parse(R"({"chart":"H","n":1,"X":[[0]],"Y":[[1]]})"));
    const auto& s = std::get<SiegelPoint>(p);
    CHECK(s.omega()(0, 0) == cplx(0.0, 1.0));
    CHECK_THROWS_WITH(parse_point(json::parse(R"({"chart":"H","n":1,"X":[[0]],"Y":[[-1]]})")),
                      "Y not positive definite");
    CHECK_THROWS_AS(parse_point(json::parse(R"({"chart":"Q"})")), InputError);
    CHECK_THROWS_AS(parse_point(json::parse(R"({"chart":"H","n":2,"X":[[0]],"Y":[[1]]})")), InputError);

    Rng rng(1);
    std::vector<AnyPoint> pts = {random_siegel(2, rng), random_jacobi_point(2, 1, rng), random_disk(2, rng),
                                 random_disk_jacobi_point(1, 2, rng)};
    for (const auto& q : pts) {
        json j = emit_point(q);
        AnyPoint back = parse_point(j);
        CHECK(emit_point(back) == j);
        CHECK(point_to_chart(back) == point_to_chart(q));
    }
}

TEST_CASE("config validation") {
    Config c = load_config(json::parse(R"({"seed":7,"tolerances":{"curvature":1e-2},"grid":12})"));
    CHECK(c.seed == 7);
    CHECK(c.suite_tol.at("curvature") == 1e-2);
    CHECK(c.grid == 12);
    CHECK_THROWS_AS(load_config(json::parse(R"({"tolerances":{"curvature":-1}})")), InputError);
    CHECK_THROWS_AS(load_config(json::parse(R"({"tolerances":{"nope":1}})")), InputError);
    CHECK_THROWS_AS(load_config(json::parse(R"({"sede":1})")), InputError);
}

TEST_CASE("suites in process") {
    Config c;
    SuiteReport v = run_suite("volume-formula", c);
    CHECK(v.cases == 4);
    CHECK(v.passed == 4);
    CHECK(v.max_residual <= 1e-12);
    CHECK_FALSE(report_json(v).contains("wall_ms"));
    CHECK_THROWS_AS(run_suite("nope", c), InputError);
    c.timing = true;
    CHECK(report_json(run_suite("volume-formula", c)).contains("wall_ms"));
}

TEST_CASE("verify exit codes") {
    CHECK(cli("verify volume-formula").code == 0);
    CHECK(cli("verify curvature").code == 0);
    CHECK(cli("verify nosuch").code == 2);
    CHECK(cli("verify curvature --tol 1e-14").code == 1);
    CHECK(cli("bogus").code == 2);
}

TEST_CASE("reports are deterministic") {
    Run a = cli("--json verify group-axioms"), b = cli("--json verify group-axioms");
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    json j = json::parse(a.out);
    CHECK(j["seed"] == 1);
    CHECK(j["passed"] == j["cases"]);
    Run c = cli("--json --seed 2 verify group-axioms");
    CHECK(c.out != a.out);
}

TEST_CASE("volume and bessel") {
    Run v = cli("--json volume --n 1");
    REQUIRE(v.code == 0);
    CHECK(json::parse(v.out)["value"].get<double>() == Catch::Approx(std::numbers::pi / 3.0));
    Run b = cli("--json bessel --s 0.5 --z 1");
    REQUIRE(b.code == 0);
    CHECK(json::parse(b.out)["value"][0].get<double>() == Catch::Approx(0.4610685044478946));
    CHECK(cli("bessel --s 0.5 --z -1").code == 2);
    CHECK(cli("volume --n 0").code == 2);
}

TEST_CASE("reduce") {
    Run r = cli(R"(--json reduce --point '{"chart":"H","n":1,"X":[[0.3]],"Y":[[0.4]]}')");
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["reduced"]["X"][0][0].get<double>() == Catch::Approx(-0.2));
    CHECK(j["reduced"]["Y"][0][0].get<double>() == Catch::Approx(1.6));
    Run bad = cli(R"(reduce --point '{"chart":"H","n":1,"X":[[0]],"Y":[[-1]]}')", true);
    CHECK(bad.code == 2);
    CHECK(bad.out.find("Y not positive definite") != std::string::npos);
    Run jac = cli(R"(--json reduce --jacobi '{"chart":"HJ","n":1,"m":1,"X":[[0]],"Y":[[2]],"U":[[3.7]],"V":[[5]]}')");
    REQUIRE(jac.code == 0);
    CHECK(json::parse(jac.out)["lambda_int"][0][0] == 2.0);
}

TEST_CASE("act, laplacian, curvature, spectrum, check-maass") {
    Run a = cli(R"(--json act --element '{"type":"symplectic","M":[[0,1],[-1,0]]}' --point '{"chart":"H","n":1,"X":[[0]],"Y":[[1]]}')");
    REQUIRE(a.code == 0);
    CHECK(json::parse(a.out)["Y"][0][0].get<double>() == Catch::Approx(1.0));

    Run l = cli(R"(--json laplacian --op DELTA_11 --field '{"dim":4,"terms":[{"factors":[{"coord":1,"pow":2.5}]}]}' --coords '[0.1,1.3,0.2,0.3]')");
    REQUIRE(l.code == 0);
    CHECK(json::parse(l.out)["value"][0].get<double>() == Catch::Approx(3.75 * std::pow(1.3, 2.5)));

    Run c = cli(R"(--json curvature --metric H11 --coords '[0,1,0,0]')");
    REQUIRE(c.code == 0);
    CHECK(json::parse(c.out)["scalar_curvature"].get<double>() == Catch::Approx(-3.0).margin(1e-3));

    Run s = cli(R"(--json spectrum --omega '{"chart":"H","n":1,"X":[[0.2]],"Y":[[1.1]]}' --range 1 --grid 4)");
    CHECK(s.code == 0);
    CHECK(json::parse(s.out)["max_deviation"].get<double>() < 1e-8);
    CHECK(cli(R"(spectrum --omega '{"chart":"H","n":1,"X":[[0.2]],"Y":[[1.1]]}' --range 2 --grid 3)").code == 2);

    CHECK(cli(R"(check-maass --field '{"dim":4,"terms":[{"coef":2}]}' --lambda 0)").code == 0);
    Run m = cli(R"(--json check-maass --field '{"catalog":"bessel","s":2.5,"a":1}' --lambda 3.75)");
    CHECK(m.code == 1);
    json mj = json::parse(m.out);
    CHECK(mj["MJ2"].get<double>() < 1e-6);
    CHECK(mj["MJ1"]["inversion"].get<double>() > 1e-3);
    CHECK(mj["MJ1"]["tau+1"].get<double>() < 1e-8);
}
