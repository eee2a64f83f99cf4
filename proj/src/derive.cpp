#include "sjl/derive.hpp"

#include <cmath>
#include <string>

#include "sjl/errors.hpp"

namespace sjl {

namespace {

// Central stencils, second-order accurate: offsets in units of h and weights times h^r.
struct Stencil {
    std::vector<int> offsets;
    std::vector<double> weights;
};

const Stencil& stencil(int r) {
    static const Stencil s[5] = {
        {{0}, {1.0}},
        {{-1, 1}, {-0.5, 0.5}},
        {{-1, 0, 1}, {1.0, -2.0, 1.0}},
        {{-2, -1, 1, 2}, {-0.5, 1.0, -1.0, 0.5}},
        {{-2, -1, 0, 1, 2}, {1.0, -4.0, 6.0, -4.0, 1.0}},
    };
    return s[r];
}

cplx tensor_stencil(const ScalarField& f, const Vec& x, const MultiIndex& alpha, const Vec& h) {
    std::vector<int> active;
    for (int k = 0; k < static_cast<int>(alpha.size()); ++k)
        if (alpha[k] > 0) active.push_back(k);
    cplx sum = 0.0;
    std::vector<std::size_t> pos(active.size(), 0);
    Vec y = x;
    while (true) {
        double w = 1.0;
        for (std::size_t i = 0; i < active.size(); ++i) {
            int k = active[i];
            const Stencil& st = stencil(alpha[k]);
            y[k] = x[k] + st.offsets[pos[i]] * h[k];
            w *= st.weights[pos[i]];
        }
        cplx v = f.eval(y);
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw NumericError("field returned a non-finite value");
        sum += w * v;
        std::size_t i = 0;
        for (; i < active.size(); ++i) {
            if (++pos[i] < stencil(alpha[active[i]]).offsets.size()) break;
            pos[i] = 0;
        }
        if (i == active.size()) break;
    }
    double denom = 1.0;
    for (int k : active) denom *= std::pow(h[k], alpha[k]);
    return sum / denom;
}

}  // namespace

cplx derive(const ScalarField& f, const Vec& x, const MultiIndex& alpha, const DeriveOptions& opt, Warnings* warnings) {
    if (static_cast<int>(alpha.size()) != f.dim || x.size() != f.dim) throw InputError("derive: dimension mismatch");
    int ord = 0;
    for (int a : alpha) {
        if (a < 0 || a > 4) throw InputError("derive: per-coordinate order must be in [0,4]");
        ord += a;
    }
    if (ord > 4) throw InputError("derive: total order above 4 is not supported");
    if (opt.allow_exact && f.has_exact(ord)) {
        cplx v = f.exact(x, alpha);
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw NumericError("exact derivative is non-finite");
        return v;
    }
    if (ord == 0) return f.eval(x);
    double base = ord <= 2 ? opt.step_low : (ord == 3 ? opt.step_third : opt.step_fourth);
    for (int shrink = 0; shrink < 8; ++shrink) {
        Vec h(x.size());
        for (int k = 0; k < x.size(); ++k) h[k] = base * (1.0 + std::abs(x[k]));
        try {
            cplx coarse = tensor_stencil(f, x, alpha, h);
            cplx fine = tensor_stencil(f, x, alpha, h / 2.0);
            return (4.0 * fine - coarse) / 3.0;
        } catch (const DomainError&) {
            if (warnings) warnings->push_back("derive: stencil left the domain, step halved");
            base /= 2.0;
        }
    }
    throw DomainError("derive: no admissible finite-difference step near the point");
}

}  // namespace sjl
