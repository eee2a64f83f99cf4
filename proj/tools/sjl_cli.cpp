#include <algorithm>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "sjl/bessel.hpp"
#include "sjl/errors.hpp"
#include "sjl/io.hpp"
#include "sjl/operators.hpp"
#include "sjl/reduction.hpp"
#include "sjl/spectral.hpp"
#include "sjl/suites.hpp"

using namespace sjl;

namespace {

constexpr int kPass = 0, kFail = 1, kUsage = 2;

struct Globals {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<double> tol;
    bool json_out = false;
};

Config resolve_config(const Globals& g) {
    Config c;
    if (!g.config_path.empty()) {
        c = load_config_file(g.config_path);
    } else if (const char* env = std::getenv("SJL_CONFIG"); env && *env) {
        c = load_config_file(env);
    }
    if (g.seed) c.seed = *g.seed;
    if (g.tol) {
        if (!(*g.tol > 0.0)) throw InputError("--tol must be positive");
        c.tol = g.tol;
    }
    if (g.json_out) c.format = "json";
    return c;
}

// "1.5", "0.5,14.1" or "[0.5,14.1]".
cplx parse_complex(const std::string& s) {
    std::string t = s;
    if (!t.empty() && t.front() == '[') return complex_scalar(json::parse(t), "complex value");
    try {
        std::size_t comma = t.find(',');
        if (comma == std::string::npos) return std::stod(t);
        return {std::stod(t.substr(0, comma)), std::stod(t.substr(comma + 1))};
    } catch (const std::exception&) {
        throw InputError("cannot parse complex value '" + s + "'");
    }
}

MetricId metric_from_name(const std::string& name, int n, int m, const std::optional<SiegelPoint>& omega) {
    if (name == "SIEGEL") return MetricId::siegel(n);
    if (name == "DISK") return MetricId::disk(n);
    if (name == "JACOBI") return MetricId::jacobi(n, m);
    if (name == "DISK_JACOBI") return MetricId::disk_jacobi(n, m);
    if (name == "H11") return MetricId::h11();
    if (name == "ABELIAN") {
        if (!omega) throw InputError("ABELIAN needs --omega");
        return MetricId::abelian(*omega, m);
    }
    throw InputError("unknown metric '" + name + "'");
}

Vec coords_from(const std::string& point, const std::string& coords) {
    if (!point.empty() == !coords.empty()) throw InputError("give exactly one of --point or --coords");
    if (!point.empty()) return point_to_chart(parse_point(read_json_arg(point)));
    json j = read_json_arg(coords);
    if (!j.is_array()) throw InputError("--coords must be a JSON array");
    Vec x(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) x[i] = j[i].get<double>();
    return x;
}

SiegelPoint siegel_from(const std::string& arg) {
    AnyPoint p = parse_point(read_json_arg(arg));
    if (auto* s = std::get_if<SiegelPoint>(&p)) return *s;
    throw InputError("expected a point with chart H");
}

void print(const Config& c, const json& j, const std::string& table) {
    if (c.format == "json") std::cout << j.dump(2) << "\n";
    else std::cout << table;
}

std::string text(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Siegel-Jacobi space toolkit"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--config", g.config_path, "JSON config file (default: $SJL_CONFIG)");
    app.add_option("--seed", g.seed, "RNG seed");
    app.add_option("--tol", g.tol, "override every upper-bound tolerance");
    app.add_flag("--json", g.json_out, "emit JSON");
    std::function<int()> action;

    auto* verify = app.add_subcommand("verify", "run verification suites");
    std::vector<std::string> suites;
    verify->add_option("suites", suites, "suite names (default: all)");
    bool list = false;
    verify->add_flag("--list", list, "list suite names");
    verify->callback([&] {
        action = [&] {
            if (list) {
                for (const auto& s : suite_names()) std::cout << s << "\n";
                return kPass;
            }
            Config c = resolve_config(g);
            if (suites.empty()) suites = suite_names();
            for (const auto& s : suites)
                if (std::find(suite_names().begin(), suite_names().end(), s) == suite_names().end())
                    throw InputError("unknown suite '" + s + "'");
            json all = json::array();
            bool ok = true;
            std::string table;
            for (const auto& s : suites) {
                SuiteReport r = run_suite(s, c);
                ok = ok && r.ok();
                all.push_back(report_json(r));
                table += report_table(r);
            }
            json out = suites.size() == 1 ? all[0] : json{{"seed", c.seed}, {"all_passed", ok}, {"suites", all}};
            print(c, out, table);
            return ok ? kPass : kFail;
        };
    });

    auto* reduce = app.add_subcommand("reduce", "reduce a point to the fundamental domain");
    std::string point_arg, jacobi_arg;
    auto* popt = reduce->add_option("--point", point_arg, "point of H_n (file or inline JSON)");
    reduce->add_option("--jacobi", jacobi_arg, "point of H_n x C^(m,n) (file or inline JSON)")->excludes(popt);
    reduce->callback([&] {
        action = [&] {
            Config c = resolve_config(g);
            if (point_arg.empty() && jacobi_arg.empty()) throw InputError("give --point or --jacobi");
            AnyPoint p = parse_point(read_json_arg(point_arg.empty() ? jacobi_arg : point_arg));
            json out;
            if (auto* s = std::get_if<SiegelPoint>(&p)) out = emit_reduction(siegel_reduce(*s));
            else if (auto* j = std::get_if<JacobiPoint>(&p)) out = emit_reduction(jacobi_reduce(*j));
            else throw InputError("reduction works on charts H and HJ");
            print(c, out, text(out));
            for (const auto& cond : out["conditions"])
                if (!cond["holds"].get<bool>()) return kFail;
            return kPass;
        };
    });

    auto* volume = app.add_subcommand("volume", "volume of Sp(n,Z)\\H_n");
    int vol_n = 1, digits = 17;
    volume->add_option("--n", vol_n, "degree n")->required()->check(CLI::Range(1, 20));
    volume->add_option("--digits", digits, "significant digits")->check(CLI::Range(1, 17));
    volume->callback([&] {
        action = [&] {
            Config c = resolve_config(g);
            VolumeResult v = siegel_volume(vol_n);
            std::ostringstream val;
            val << std::setprecision(digits) << v.value;
            json out = {{"n", vol_n}, {"value", v.value}, {"rational", v.rational}, {"pi_power", v.pi_power}};
            print(c, out, "vol = " + v.rational + " pi^" + std::to_string(v.pi_power) + " = " + val.str() + "\n");
            return kPass;
        };
    });

    auto* lap = app.add_subcommand("laplacian", "apply a catalog operator or a Laplace-Beltrami operator");
    std::string op_name_arg, metric_arg, field_arg, lap_point, lap_coords, index_arg, omega_arg;
    int lap_n = 1, lap_m = 1, lap_j = 1;
    auto* oopt = lap->add_option("--op", op_name_arg, "operator name, e.g. DELTA_NM");
    lap->add_option("--metric", metric_arg, "metric whose Laplace-Beltrami operator to apply")->excludes(oopt);
    lap->add_option("--field", field_arg, "field descriptor (file or inline JSON)")->required();
    lap->add_option("--point", lap_point, "point (file or inline JSON)");
    lap->add_option("--coords", lap_coords, "raw chart coordinates as a JSON array");
    lap->add_option("--n", lap_n, "n")->check(CLI::Range(1, 4));
    lap->add_option("--m", lap_m, "m")->check(CLI::Range(0, 4));
    lap->add_option("--j", lap_j, "power for B_J")->check(CLI::Range(1, 4));
    lap->add_option("--index", index_arg, "index matrix for M_SING (JSON)");
    lap->add_option("--omega", omega_arg, "period point for DELTA_OMEGA / ABELIAN");
    lap->callback([&] {
        action = [&] {
            Config c = resolve_config(g);
            ScalarField f = parse_field(read_json_arg(field_arg));
            Vec x = coords_from(lap_point, lap_coords);
            if (f.dim != x.size()) throw InputError("field dimension does not match the chart");
            cplx value;
            std::string label;
            if (!metric_arg.empty()) {
                std::optional<SiegelPoint> om;
                if (!omega_arg.empty()) om = siegel_from(omega_arg);
                MetricId id = metric_from_name(metric_arg, lap_n, lap_m, om);
                value = laplace_beltrami(id, f, x, c.fd);
                label = "Laplace-Beltrami " + metric_name(id);
            } else {
                if (op_name_arg.empty()) throw InputError("give --op or --metric");
                OpTag t = op_from_name(op_name_arg);
                OperatorId op;
                if (t == OpTag::B_J) op = OperatorId::b_j(lap_n, lap_j);
                else if (t == OpTag::M_SING) {
                    if (index_arg.empty()) throw InputError("M_SING needs --index");
                    op = OperatorId::m_sing(lap_n, JacobiIndexMatrix(real_matrix(read_json_arg(index_arg), "index")));
                } else if (t == OpTag::DELTA_OMEGA) {
                    if (omega_arg.empty()) throw InputError("DELTA_OMEGA needs --omega");
                    op = OperatorId::delta_omega(siegel_from(omega_arg), lap_m);
                } else op = OperatorId::make(t, lap_n, lap_m);
                if (x.size() != chart_dim(op_chart(op), op.n, op.m))
                    throw InputError("point has " + std::to_string(x.size()) + " coordinates, chart " +
                                     chart_name(op_chart(op)) + " needs " +
                                     std::to_string(chart_dim(op_chart(op), op.n, op.m)));
                value = apply(op, f, x, c.fd);
                label = op_name(op.tag);
            }
            json out = {{"operator", label}, {"value", to_json(value)}, {"field_value", to_json(f.eval(x))}};
            print(c, out, text(out));
            return kPass;
        };
    });

    auto* curv = app.add_subcommand("curvature", "scalar curvature of a metric");
    std::string curv_metric = "H11", curv_point, curv_coords, curv_omega;
    int curv_n = 1, curv_m = 1;
    curv->add_option("--metric", curv_metric, "metric name");
    curv->add_option("--point", curv_point, "point (file or inline JSON)");
    curv->add_option("--coords", curv_coords, "raw chart coordinates as a JSON array");
    curv->add_option("--n", curv_n, "n")->check(CLI::Range(1, 3));
    curv->add_option("--m", curv_m, "m")->check(CLI::Range(0, 3));
    curv->add_option("--omega", curv_omega, "period point for ABELIAN");
    curv->callback([&] {
        action = [&] {
            Config c = resolve_config(g);
            std::optional<SiegelPoint> om;
            if (!curv_omega.empty()) om = siegel_from(curv_omega);
            MetricId id = metric_from_name(curv_metric, curv_n, curv_m, om);
            Vec x = coords_from(curv_point, curv_coords);
            CurvatureResult r = scalar_curvature(id, x);
            json out = {{"metric", metric_name(id)}, {"scalar_curvature", r.scalar}, {"warnings", r.warnings}};
            print(c, out, text(out));
            return kPass;
        };
    });

    auto* spec = app.add_subcommand("spectrum", "Gram matrix of the Fourier basis on the abelian variety");
    std::string spec_omega;
    int range = 1, grid = 0, spec_m = 1;
    spec->add_option("--omega", spec_omega, "period point of H_n (file or inline JSON)")->required();
    spec->add_option("--range", range, "index box |A|,|B| <= R")->check(CLI::Range(0, 4));
    spec->add_option("--grid", grid, "quadrature points per lattice direction (default: config grid)");
    spec->add_option("--m", spec_m, "m")->check(CLI::Range(1, 3));
    spec->callback([&] {
        action = [&] {
            Config c = resolve_config(g);
            LatticeSpec L{siegel_from(spec_omega), spec_m};
            TorusGrid tg{grid > 0 ? grid : c.grid};
            auto idx = index_box(spec_m, L.n(), range);
            CMat gram = torus_gram(L, idx, tg);
            double dev = max_norm(CMat(gram - CMat::Identity(gram.rows(), gram.cols())));
            json ind = json::array();
            for (const auto& f : idx) ind.push_back({{"A", to_json(f.A)}, {"B", to_json(f.B)}});
            const double tol = c.tol.value_or(1e-8);
            json out = {{"chart", "A"},       {"grid", tg.N}, {"indices", ind},
                        {"gram", to_json(gram)}, {"max_deviation", dev}, {"tolerance", tol}};
            std::ostringstream t;
            t << idx.size() << " characters, grid " << tg.N << ", max |Gram - I| = " << dev << "\n";
            print(c, out, t.str());
            return dev <= tol ? kPass : kFail;
        };
    });

    auto* bes = app.add_subcommand("bessel", "K-Bessel function K_s(z)");
    std::string s_arg;
    double z_arg = 1.0;
    bes->add_option("--s", s_arg, "order, real or re,im")->required();
    bes->add_option("--z", z_arg, "argument z > 0")->required();
    bes->callback([&] {
        action = [&] {
            Config c = resolve_config(g);
            if (!(z_arg > 0.0)) throw InputError("--z must be positive");
            Warnings w;
            cplx v = k_bessel(parse_complex(s_arg), z_arg, &w);
            json out = {{"s", to_json(parse_complex(s_arg))}, {"z", z_arg}, {"value", to_json(v)}, {"warnings", w}};
            std::ostringstream t;
            t << std::setprecision(16) << "K = " << v.real() << (v.imag() < 0 ? " - " : " + ") << std::abs(v.imag())
              << "i\n";
            for (const auto& s : w) t << "warning: " << s << "\n";
            print(c, out, t.str());
            return kPass;
        };
    });

    auto* act = app.add_subcommand("act", "apply a group element to a point");
    std::string elem_arg, act_point;
    act->add_option("--element", elem_arg, "group element (file or inline JSON)")->required();
    act->add_option("--point", act_point, "point (file or inline JSON)")->required();
    act->callback([&] {
        action = [&] {
            Config c = resolve_config(g);
            GroupElement e = parse_element(read_json_arg(elem_arg));
            AnyPoint p = parse_point(read_json_arg(act_point));
            AnyPoint out = std::visit(
                [&](const auto& q) -> AnyPoint {
                    using P = std::decay_t<decltype(q)>;
                    if constexpr (std::is_same_v<P, SiegelPoint>) {
                        if (auto* m = std::get_if<SymplecticMatrix>(&e)) return sp_action(*m, q);
                        if (auto* j = std::get_if<JacobiElement>(&e)) return sp_action(j->M, q);
                    } else if constexpr (std::is_same_v<P, JacobiPoint>) {
                        if (auto* j = std::get_if<JacobiElement>(&e)) return jacobi_action(*j, q);
                        if (auto* m = std::get_if<SymplecticMatrix>(&e))
                            return jacobi_action(JacobiElement{*m, HeisenbergElement::zero(q.m(), q.n())}, q);
                    } else if constexpr (std::is_same_v<P, DiskPoint>) {
                        if (auto* d = std::get_if<DiskJacobiElement>(&e)) return disk_action(*d, q);
                    } else {
                        if (auto* d = std::get_if<DiskJacobiElement>(&e)) return disk_jacobi_action(*d, q);
                    }
                    throw InputError("element does not act on chart " + chart_name(point_chart(AnyPoint(q))));
                },
                p);
            json j = emit_point(out);
            print(c, j, text(j));
            return kPass;
        };
    });

    auto* maass = app.add_subcommand("check-maass", "check the Maass-Jacobi conditions for a field on H_{1,1}");
    std::string maass_field, lambda_arg = "0";
    int n_points = 10;
    maass->add_option("--field", maass_field, "field descriptor (file or inline JSON)")->required();
    maass->add_option("--lambda", lambda_arg, "eigenvalue, real or re,im");
    maass->add_option("--points", n_points, "number of random sample points")->check(CLI::Range(1, 1000));
    maass->callback([&] {
        action = [&] {
            Config c = resolve_config(g);
            ScalarField f = parse_field(read_json_arg(maass_field));
            Rng rng(c.seed);
            std::vector<Vec> pts;
            for (int k = 0; k < n_points; ++k) pts.push_back(jacobi_to_chart(random_jacobi_point(1, 1, rng)));
            MaassReport r = maass_jacobi_residual(f, parse_complex(lambda_arg), pts);
            const double tol = c.tol.value_or(1e-6);
            bool ok = r.mj2 <= tol;
            json mj1 = json::object();
            for (const auto& [name, v] : r.mj1) {
                mj1[name] = v;
                ok = ok && v <= tol;
            }
            json ratios = json::array();
            for (const auto& [N, v] : r.mj3_ratios) ratios.push_back({{"N", N}, {"ratio", v}});
            json out = {{"MJ1", mj1},
                        {"MJ2", r.mj2},
                        {"MJ3", {{"sampled_exponent", r.mj3_exponent}, {"ratios", ratios}}},
                        {"tolerance", tol},
                        {"seed", c.seed},
                        {"pass", ok}};
            print(c, out, text(out));
            return ok ? kPass : kFail;
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    try {
        return action ? action() : kUsage;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kUsage;
    } catch (const DomainError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kUsage;
    } catch (const json::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFail;
    }
}
