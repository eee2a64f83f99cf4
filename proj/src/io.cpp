#include "sjl/io.hpp"

#include <fstream>
#include <sstream>

#include "sjl/errors.hpp"

namespace sjl {

json to_json(const Mat& a) {
    json j = json::array();
    for (int i = 0; i < a.rows(); ++i) {
        json row = json::array();
        for (int k = 0; k < a.cols(); ++k) row.push_back(a(i, k));
        j.push_back(row);
    }
    return j;
}

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

json to_json(const CMat& a) {
    json j = json::array();
    for (int i = 0; i < a.rows(); ++i) {
        json row = json::array();
        for (int k = 0; k < a.cols(); ++k) row.push_back(to_json(a(i, k)));
        j.push_back(row);
    }
    return j;
}

json to_json(const IMat& a) {
    json j = json::array();
    for (int i = 0; i < a.rows(); ++i) {
        json row = json::array();
        for (int k = 0; k < a.cols(); ++k) row.push_back(a(i, k));
        j.push_back(row);
    }
    return j;
}

namespace {

void require_rows(const json& j, const std::string& what) {
    if (!j.is_array() || j.empty() || !j[0].is_array())
        throw InputError(what + ": expected a non-empty array of rows");
    for (const auto& r : j)
        if (!r.is_array() || r.size() != j[0].size()) throw InputError(what + ": ragged rows");
}

const json& field(const json& j, const std::string& key, const std::string& ctx) {
    if (!j.is_object() || !j.contains(key)) throw InputError(ctx + ": missing \"" + key + "\"");
    return j.at(key);
}

}  // namespace

cplx complex_scalar(const json& j, const std::string& what) {
    if (j.is_number()) return j.get<double>();
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    throw InputError(what + ": expected a number or [re, im]");
}

Mat real_matrix(const json& j, const std::string& what) {
    require_rows(j, what);
    Mat a(j.size(), j[0].size());
    for (std::size_t i = 0; i < j.size(); ++i)
        for (std::size_t k = 0; k < j[0].size(); ++k) {
            if (!j[i][k].is_number()) throw InputError(what + ": entries must be real numbers");
            a(i, k) = j[i][k].get<double>();
        }
    return a;
}

CMat complex_matrix(const json& j, const std::string& what) {
    require_rows(j, what);
    CMat a(j.size(), j[0].size());
    for (std::size_t i = 0; i < j.size(); ++i)
        for (std::size_t k = 0; k < j[0].size(); ++k) a(i, k) = complex_scalar(j[i][k], what);
    return a;
}

IMat int_matrix(const json& j, const std::string& what) {
    require_rows(j, what);
    IMat a(j.size(), j[0].size());
    for (std::size_t i = 0; i < j.size(); ++i)
        for (std::size_t k = 0; k < j[0].size(); ++k) {
            if (!j[i][k].is_number_integer()) throw InputError(what + ": entries must be integers");
            a(i, k) = j[i][k].get<long long>();
        }
    return a;
}

AnyPoint parse_point(const json& j) {
    const std::string chart = field(j, "chart", "point").get<std::string>();
    auto dims = [&](const Mat& a, int r, int c, const std::string& what) {
        if (a.rows() != r || a.cols() != c) throw InputError(what + " has the wrong shape");
    };
    if (chart == "H" || chart == "HJ") {
        Mat x = real_matrix(field(j, "X", "point"), "X");
        Mat y = real_matrix(field(j, "Y", "point"), "Y");
        int n = j.value("n", static_cast<int>(x.rows()));
        dims(x, n, n, "X");
        dims(y, n, n, "Y");
        SiegelPoint om(x, y);
        if (chart == "H") return om;
        Mat u = real_matrix(field(j, "U", "point"), "U");
        Mat v = real_matrix(field(j, "V", "point"), "V");
        int m = j.value("m", static_cast<int>(u.rows()));
        dims(u, m, n, "U");
        dims(v, m, n, "V");
        return JacobiPoint(om, u.cast<cplx>() + cplx(0, 1) * v.cast<cplx>());
    }
    if (chart == "D" || chart == "DJ") {
        CMat w = complex_matrix(field(j, "W", "point"), "W");
        int n = j.value("n", static_cast<int>(w.rows()));
        if (w.rows() != n || w.cols() != n) throw InputError("W has the wrong shape");
        DiskPoint d(w);
        if (chart == "D") return d;
        CMat eta = complex_matrix(field(j, "eta", "point"), "eta");
        int m = j.value("m", static_cast<int>(eta.rows()));
        if (eta.rows() != m || eta.cols() != n) throw InputError("eta has the wrong shape");
        return DiskJacobiPoint(d, eta);
    }
    throw InputError("unknown chart \"" + chart + "\"");
}

json emit_point(const AnyPoint& p) {
    json j;
    std::visit(
        [&](const auto& q) {
            using T = std::decay_t<decltype(q)>;
            if constexpr (std::is_same_v<T, SiegelPoint>) {
                j = {{"chart", "H"}, {"n", q.n()}, {"X", to_json(q.X())}, {"Y", to_json(q.Y())}};
            } else if constexpr (std::is_same_v<T, JacobiPoint>) {
                j = {{"chart", "HJ"},
                     {"n", q.n()},
                     {"m", q.m()},
                     {"X", to_json(q.siegel().X())},
                     {"Y", to_json(q.siegel().Y())},
                     {"U", to_json(q.U())},
                     {"V", to_json(q.V())}};
            } else if constexpr (std::is_same_v<T, DiskPoint>) {
                j = {{"chart", "D"}, {"n", q.n()}, {"W", to_json(q.W())}};
            } else {
                j = {{"chart", "DJ"}, {"n", q.n()}, {"m", q.m()}, {"W", to_json(q.W())}, {"eta", to_json(q.eta())}};
            }
        },
        p);
    return j;
}

Chart point_chart(const AnyPoint& p) {
    static const Chart charts[] = {Chart::H, Chart::HJ, Chart::D, Chart::DJ};
    return charts[p.index()];
}

Vec point_to_chart(const AnyPoint& p) {
    return std::visit(
        [](const auto& q) -> Vec {
            using T = std::decay_t<decltype(q)>;
            if constexpr (std::is_same_v<T, SiegelPoint>) return siegel_to_chart(q);
            else if constexpr (std::is_same_v<T, JacobiPoint>) return jacobi_to_chart(q);
            else if constexpr (std::is_same_v<T, DiskPoint>) return disk_to_chart(q);
            else return disk_jacobi_to_chart(q);
        },
        p);
}

GroupElement parse_element(const json& j) {
    const std::string type = field(j, "type", "element").get<std::string>();
    if (type == "symplectic") return SymplecticMatrix(real_matrix(field(j, "M", "element"), "M"));
    if (type == "jacobi") {
        SymplecticMatrix M(real_matrix(field(j, "M", "element"), "M"));
        return JacobiElement{M, HeisenbergElement(real_matrix(field(j, "lambda", "element"), "lambda"),
                                                  real_matrix(field(j, "mu", "element"), "mu"),
                                                  real_matrix(field(j, "kappa", "element"), "kappa"))};
    }
    if (type == "disk")
        return DiskJacobiElement(complex_matrix(field(j, "P", "element"), "P"),
                                 complex_matrix(field(j, "Q", "element"), "Q"),
                                 complex_matrix(field(j, "xi", "element"), "xi"),
                                 real_matrix(field(j, "kappa", "element"), "kappa"));
    throw InputError("unknown element type \"" + type + "\"");
}

json emit_element(const GroupElement& g) {
    return std::visit(
        [](const auto& e) -> json {
            using T = std::decay_t<decltype(e)>;
            if constexpr (std::is_same_v<T, SymplecticMatrix>) {
                return {{"type", "symplectic"}, {"n", e.n()}, {"M", to_json(e.mat())}};
            } else if constexpr (std::is_same_v<T, JacobiElement>) {
                return {{"type", "jacobi"},          {"n", e.n()},
                        {"m", e.m()},                {"M", to_json(e.M.mat())},
                        {"lambda", to_json(e.h.lambda)}, {"mu", to_json(e.h.mu)},
                        {"kappa", to_json(e.h.kappa)}};
            } else {
                return {{"type", "disk"},       {"n", e.n()},           {"m", e.m()},
                        {"P", to_json(e.P)},    {"Q", to_json(e.Q)},    {"xi", to_json(e.xi)},
                        {"kappa", to_json(e.kappa)}};
            }
        },
        g);
}

ScalarField parse_field(const json& j) {
    if (j.is_object() && j.contains("catalog")) {
        const EigenEntry& e = eigen_entry(j.at("catalog").get<std::string>());
        cplx s = j.contains("s") ? complex_scalar(j.at("s"), "s") : cplx(0.0);
        double a = j.value("a", 1.0);
        return e.make(s, a);
    }
    int dim = field(j, "dim", "field").get<int>();
    if (dim < 1) throw InputError("field: dim must be positive");
    std::vector<SeparableTerm> terms;
    for (const auto& t : field(j, "terms", "field")) {
        SeparableTerm st;
        st.coef = t.contains("coef") ? complex_scalar(t.at("coef"), "coef") : cplx(1.0);
        for (const auto& f : t.value("factors", json::array())) {
            int k = field(f, "coord", "factor").get<int>();
            cplx p = f.contains("pow") ? complex_scalar(f.at("pow"), "pow") : cplx(0.0);
            cplx a = f.contains("exp") ? complex_scalar(f.at("exp"), "exp") : cplx(0.0);
            st.factors.push_back({k, pow_exp(p, a)});
        }
        terms.push_back(st);
    }
    return separable_field(dim, terms, "json");
}

namespace {

json conditions_json(const std::vector<ConditionReport>& cs) {
    json j = json::array();
    for (const auto& c : cs) j.push_back({{"condition", c.name}, {"holds", c.holds}, {"margin", c.margin}});
    return j;
}

}  // namespace

json emit_reduction(const SiegelResult& r) {
    return {{"reduced", emit_point(r.reduced)},
            {"gamma", emit_element(r.gamma)},
            {"iterations", r.iterations},
            {"det_im_history", r.det_im_history},
            {"conditions", conditions_json(r.conditions)}};
}

json emit_reduction(const JacobiReduceResult& r) {
    return {{"reduced", emit_point(r.reduced)},
            {"gamma", emit_element(r.gamma)},
            {"lambda_int", to_json(r.lambda_int)},
            {"mu_int", to_json(r.mu_int)},
            {"lambda_frac", to_json(r.lambda_frac)},
            {"mu_frac", to_json(r.mu_frac)},
            {"iterations", r.iterations},
            {"conditions", conditions_json(r.conditions)}};
}

json emit_gram(const MetricId& id, const Vec& x, const GramResult& g) {
    json coords = json::array();
    for (int i = 0; i < x.size(); ++i) coords.push_back(x[i]);
    return {{"metric", metric_name(id)},
            {"chart", chart_name(metric_chart(id))},
            {"ordering", "upper-triangle X row-wise, upper-triangle Y, U row-major, V row-major"},
            {"point", coords},
            {"gram", to_json(g.gram)},
            {"imag_residue", g.imag_residue}};
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw InputError(path + ": " + e.what());
    }
}

json read_json_arg(const std::string& arg) {
    std::size_t first = arg.find_first_not_of(" \t\n");
    if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[')) {
        try {
            return json::parse(arg);
        } catch (const json::parse_error& e) {
            throw InputError(std::string("inline JSON: ") + e.what());
        }
    }
    return read_json_file(arg);
}

}  // namespace sjl
