#include "sjl/fields.hpp"

#include <cmath>
#include <numeric>

#include "sjl/bessel.hpp"
#include "sjl/errors.hpp"

namespace sjl {

int order(const MultiIndex& a) { return std::accumulate(a.begin(), a.end(), 0); }

MultiIndex unit_index(int d, int k, int times) {
    MultiIndex a(d, 0);
    a[k] = times;
    return a;
}

namespace {

class PowExp final : public UniFn {
public:
    PowExp(cplx p, cplx a) : p_(p), a_(a) {}
    cplx deriv(double x, int r) const override {
        // Leibniz over x^p and e^{ax}
        cplx sum = 0.0;
        double binom = 1.0;
        for (int j = 0; j <= r; ++j) {
            cplx falling = 1.0;
            for (int t = 0; t < j; ++t) falling *= p_ - double(t);
            cplx power = (falling == 0.0) ? cplx(0.0) : falling * cpow(x, p_ - double(j));
            sum += binom * power * std::pow(a_, r - j);
            binom = binom * (r - j) / (j + 1);
        }
        return sum * std::exp(a_ * x);
    }

private:
    static cplx cpow(double x, cplx e) {
        if (e.imag() == 0.0 && e.real() == std::round(e.real()) && e.real() >= 0.0)
            return std::pow(x, static_cast<int>(e.real()));
        if (x <= 0.0) throw DomainError("non-integer power of a non-positive coordinate");
        return std::exp(e * std::log(x));
    }
    cplx p_, a_;
};

class BesselK final : public UniFn {
public:
    BesselK(cplx nu, double b) : nu_(nu), b_(b) {}
    cplx deriv(double x, int r) const override {
        if (b_ * x <= 0.0) throw DomainError("K-Bessel argument must be positive");
        return std::pow(b_, r) * k_bessel_deriv(nu_, b_ * x, r);
    }

private:
    cplx nu_;
    double b_;
};

class Product final : public UniFn {
public:
    explicit Product(std::vector<UniPtr> fs) : fs_(std::move(fs)) {}
    cplx deriv(double x, int r) const override { return rec(x, r, 0); }

private:
    cplx rec(double x, int r, std::size_t from) const {
        if (from == fs_.size()) return r == 0 ? 1.0 : 0.0;
        if (from + 1 == fs_.size()) return fs_[from]->deriv(x, r);
        cplx sum = 0.0;
        double binom = 1.0;
        for (int j = 0; j <= r; ++j) {
            sum += binom * fs_[from]->deriv(x, j) * rec(x, r - j, from + 1);
            binom = binom * (r - j) / (j + 1);
        }
        return sum;
    }
    std::vector<UniPtr> fs_;
};

cplx term_value(const SeparableTerm& t, const Vec& x, const MultiIndex* alpha) {
    cplx v = t.coef;
    std::vector<bool> seen(x.size(), false);
    for (const auto& [k, f] : t.factors) {
        if (seen[k]) throw InputError("separable term repeats a coordinate; use product()");
        seen[k] = true;
        v *= f->deriv(x[k], alpha ? (*alpha)[k] : 0);
    }
    if (alpha)
        for (int k = 0; k < static_cast<int>(x.size()); ++k)
            if (!seen[k] && (*alpha)[k] > 0) return 0.0;
    return v;
}

}  // namespace

UniPtr pow_exp(cplx p, cplx a) { return std::make_shared<PowExp>(p, a); }
UniPtr bessel_k(cplx nu, double b) { return std::make_shared<BesselK>(nu, b); }
UniPtr product(const std::vector<UniPtr>& fs) { return std::make_shared<Product>(fs); }

ScalarField separable_field(int dim, std::vector<SeparableTerm> terms, std::string name) {
    for (const auto& t : terms)
        for (const auto& f : t.factors)
            if (f.first < 0 || f.first >= dim) throw InputError("separable factor coordinate out of range");
    auto shared = std::make_shared<std::vector<SeparableTerm>>(std::move(terms));
    ScalarField f;
    f.dim = dim;
    f.name = std::move(name);
    f.eval = [shared](const Vec& x) {
        cplx s = 0.0;
        for (const auto& t : *shared) s += term_value(t, x, nullptr);
        return s;
    };
    f.exact = [shared](const Vec& x, const MultiIndex& a) {
        cplx s = 0.0;
        for (const auto& t : *shared) s += term_value(t, x, &a);
        return s;
    };
    f.exact_order = 1 << 20;
    return f;
}

ScalarField exp_linear(const CVec& c, std::string name) {
    SeparableTerm t;
    for (int k = 0; k < c.size(); ++k) t.factors.push_back({k, pow_exp(0.0, c[k])});
    return separable_field(static_cast<int>(c.size()), {t}, std::move(name));
}

ScalarField monomial(int dim, const std::vector<std::pair<int, cplx>>& powers, cplx coef, std::string name) {
    SeparableTerm t;
    t.coef = coef;
    for (const auto& [k, p] : powers) t.factors.push_back({k, pow_exp(p, 0.0)});
    return separable_field(dim, {t}, std::move(name));
}

namespace {

// Σ over index tuples j_1..j_k of prod_i A(j_i, col_i) ∂_{j_1..j_k} f, skipping zero entries.
cplx chain_rule(const ScalarField& f, const Vec& y, const Mat& A, const std::vector<int>& cols, std::size_t pos,
                MultiIndex& inner, double weight) {
    if (pos == cols.size()) return weight * f.exact(y, inner);
    cplx sum = 0.0;
    for (int j = 0; j < A.rows(); ++j) {
        double a = A(j, cols[pos]);
        if (a == 0.0) continue;
        ++inner[j];
        sum += chain_rule(f, y, A, cols, pos + 1, inner, weight * a);
        --inner[j];
    }
    return sum;
}

}  // namespace

ScalarField affine_compose(const ScalarField& f, const Mat& A, const Vec& b) {
    if (A.rows() != f.dim || b.size() != f.dim) throw InputError("affine_compose: dimension mismatch");
    ScalarField g;
    g.dim = static_cast<int>(A.cols());
    g.name = f.name + "∘affine";
    g.eval = [f, A, b](const Vec& x) { return f.eval(A * x + b); };
    if (f.exact) {
        g.exact_order = f.exact_order;
        g.exact = [f, A, b](const Vec& x, const MultiIndex& alpha) {
            std::vector<int> cols;
            for (int k = 0; k < static_cast<int>(alpha.size()); ++k)
                for (int t = 0; t < alpha[k]; ++t) cols.push_back(k);
            MultiIndex inner(f.dim, 0);
            Vec y = A * x + b;
            return chain_rule(f, y, A, cols, 0, inner, 1.0);
        };
    }
    return g;
}

ScalarField compose(const ScalarField& f, std::function<Vec(const Vec&)> phi, int dim) {
    ScalarField g;
    g.dim = dim;
    g.name = f.name + "∘map";
    g.eval = [f, phi](const Vec& x) { return f.eval(phi(x)); };
    return g;
}

ScalarField operator+(const ScalarField& a, const ScalarField& b) {
    if (a.dim != b.dim) throw InputError("field sum: dimension mismatch");
    ScalarField s;
    s.dim = a.dim;
    s.name = a.name + "+" + b.name;
    s.eval = [a, b](const Vec& x) { return a.eval(x) + b.eval(x); };
    if (a.exact && b.exact) {
        s.exact_order = std::min(a.exact_order, b.exact_order);
        s.exact = [a, b](const Vec& x, const MultiIndex& al) { return a.exact(x, al) + b.exact(x, al); };
    }
    return s;
}

ScalarField scale(const ScalarField& a, cplx c) {
    ScalarField s = a;
    s.eval = [a, c](const Vec& x) { return c * a.eval(x); };
    if (a.exact) s.exact = [a, c](const Vec& x, const MultiIndex& al) { return c * a.exact(x, al); };
    return s;
}

}  // namespace sjl
