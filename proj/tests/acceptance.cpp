// One line per acceptance criterion. Tolerances live in the suites and are printed with each line.
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <string>

#include "sjl/suites.hpp"

using namespace sjl;

namespace {

struct Criterion {
    int id;
    std::string title;
    std::string suite;
    std::function<bool(const std::string&)> select;
};

bool contains(const std::string& s, const std::string& part) { return s.find(part) != std::string::npos; }

bool any(const std::string&) { return true; }

}  // namespace

int main() {
    const Config cfg;
    std::map<std::string, SuiteReport> reports;
    auto report = [&](const std::string& suite) -> const SuiteReport& {
        auto it = reports.find(suite);
        if (it == reports.end()) it = reports.emplace(suite, run_suite(suite, cfg)).first;
        return it->second;
    };

    const std::vector<Criterion> criteria = {
        {1, "volume formula n=1..4", "volume-formula", any},
        {2, "scalar curvature of H_{1,1} is -3", "curvature", [](const std::string& l) { return contains(l, "scalar curvature"); }},
        {3, "eigenfunction catalog", "eigenfunctions", any},
        {4, "metric invariance by pullback", "metric-invariance", [](const std::string& l) { return contains(l, "pullback"); }},
        {5, "operator invariance", "laplacian-invariance",
         [](const std::string& l) { return !contains(l, "Laplace-Beltrami"); }},
        {6, "partial Cayley compatibility", "cayley", [](const std::string& l) { return contains(l, "intertwines"); }},
        {7, "volume element invariance", "volume-element", any},
        {8, "reduction", "reduction", any},
        {9, "spectral basis", "spectral", any},
        {10, "commutator identity", "commutator", any},
        {11, "ODE for the Whittaker solution", "fourier-ode", any},
        {12, "Laplace-Beltrami constant vs DELTA_11", "laplacian-invariance",
         [](const std::string& l) { return contains(l, "Laplace-Beltrami constant spread"); }},
    };

    int failed = 0;
    for (const auto& c : criteria) {
        const SuiteReport& r = report(c.suite);
        int n = 0, ok = 0;
        double worst = 0.0, tol = 0.0, ratio = -1.0;
        for (const auto& rec : r.records) {
            if (!c.select(rec.label)) continue;
            ++n;
            ok += rec.pass;
            // NaN marks a case that threw, so it always counts as the worst.
            const double q = std::isnan(rec.residual) ? HUGE_VAL : rec.residual / rec.tolerance;
            if (rec.compare == Compare::LE && q > ratio) {
                ratio = q;
                worst = rec.residual;
                tol = rec.tolerance;
            }
            if (!rec.pass) std::printf("    failed: %s residual=%.3e tol=%.1e\n", rec.label.c_str(), rec.residual, rec.tolerance);
        }
        const bool pass = n > 0 && ok == n;
        failed += !pass;
        std::printf("[%s] %2d %-40s %d/%d cases, worst residual %.3e (tol %.1e)\n", pass ? "PASS" : "FAIL", c.id,
                    c.title.c_str(), ok, n, worst, tol);
        if (c.id == 12) {
            for (const auto& [key, value] : r.diagnostics) {
                if (!contains(key, "Laplace-Beltrami constant")) continue;
                std::printf("     %s: %s\n", key.c_str(), value.dump().c_str());
                if (key == "Laplace-Beltrami constant (1,1)") {
                    const double k = value[0].get<double>();
                    const char* reading = std::abs(k - 1.0) < 1e-4    ? "DELTA_11 is the Laplace-Beltrami operator itself"
                                          : std::abs(k - 4.0) < 1e-4  ? "DELTA_11 is 4x the Laplace-Beltrami operator"
                                          : std::abs(k - 0.25) < 1e-4 ? "DELTA_11 is 1/4 of the Laplace-Beltrami operator"
                                                                      : "no simple factor";
                    std::printf("     resolution: constant %.12f, %s\n", k, reading);
                }
            }
        }
        if (c.id == 5)
            for (const auto& [key, value] : r.diagnostics)
                if (contains(key, "not invariant")) std::printf("     diagnostic %s: %s\n", key.c_str(), value.dump().c_str());
    }
    std::printf("%d of %zu criteria passed\n", int(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
