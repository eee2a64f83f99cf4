#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "sjl/matrix.hpp"

namespace sjl {

// Exponent vector over chart coordinates: alpha[k] = number of derivatives in coordinate k.
using MultiIndex = std::vector<int>;

int order(const MultiIndex& a);
MultiIndex unit_index(int d, int k, int times = 1);

struct ScalarField {
    int dim = 0;
    std::string name;
    std::function<cplx(const Vec&)> eval;
    // Optional exact partial derivatives; empty when only finite differences are available.
    std::function<cplx(const Vec&, const MultiIndex&)> exact;
    int exact_order = 0;

    cplx operator()(const Vec& x) const { return eval(x); }
    bool has_exact(int ord) const { return static_cast<bool>(exact) && ord <= exact_order; }
};

// One-variable building blocks with closed-form derivatives of any order.
class UniFn {
public:
    virtual ~UniFn() = default;
    virtual cplx deriv(double x, int r) const = 0;
};
using UniPtr = std::shared_ptr<const UniFn>;

// x^p e^{a x}; p may be complex (requires x > 0 unless p is a non-negative integer).
UniPtr pow_exp(cplx p, cplx a = 0.0);
// K_nu(b x) via the integral representation.
UniPtr bessel_k(cplx nu, double b);
UniPtr product(const std::vector<UniPtr>& fs);

// coef * prod_k f_k(x_k), with missing coordinates treated as 1.
struct SeparableTerm {
    cplx coef = 1.0;
    std::vector<std::pair<int, UniPtr>> factors;
};

// Sum of separable terms; exact derivatives of every order.
ScalarField separable_field(int dim, std::vector<SeparableTerm> terms, std::string name = "");
// exp(sum_k c_k x_k).
ScalarField exp_linear(const CVec& c, std::string name = "");
// prod_k x_k^{p_k} monomial with coefficient.
ScalarField monomial(int dim, const std::vector<std::pair<int, cplx>>& powers, cplx coef = 1.0, std::string name = "");

// f(A x + b); exact derivatives are carried through by the chain rule when f has them.
ScalarField affine_compose(const ScalarField& f, const Mat& A, const Vec& b);
// f(phi(x)) for a general map; finite differences only.
ScalarField compose(const ScalarField& f, std::function<Vec(const Vec&)> phi, int dim);

ScalarField operator+(const ScalarField& a, const ScalarField& b);
ScalarField scale(const ScalarField& a, cplx c);

}  // namespace sjl
