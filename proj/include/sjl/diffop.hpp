#pragma once

#include <map>
#include <vector>

#include "sjl/derive.hpp"
#include "sjl/fields.hpp"

namespace sjl {

// Constant-coefficient operator Σ c_α ∂^α: an operator frozen at one point.
class Symbol {
public:
    Symbol() = default;
    explicit Symbol(int dim) : dim_(dim) {}
    static Symbol constant(int dim, cplx c);
    static Symbol partial(int dim, int k, cplx c = 1.0);

    int dim() const { return dim_; }
    const std::map<MultiIndex, cplx>& terms() const { return terms_; }
    void add(const MultiIndex& a, cplx c);
    int order() const;

    Symbol& operator+=(const Symbol& o);
    Symbol operator+(const Symbol& o) const;
    Symbol operator-(const Symbol& o) const;
    Symbol operator*(const Symbol& o) const;  // composition of constant-coefficient operators
    Symbol operator*(cplx c) const;

    cplx apply(const ScalarField& f, const Vec& x, const DeriveOptions& opt = {}, Warnings* w = nullptr) const;

private:
    int dim_ = 0;
    std::map<MultiIndex, cplx> terms_;
};

// Matrix whose entries are frozen symbols; numeric matrices act on either side.
class SymbolMat {
public:
    SymbolMat(int rows, int cols, int dim);
    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int dim() const { return dim_; }
    Symbol& operator()(int i, int j) { return e_[i * cols_ + j]; }
    const Symbol& operator()(int i, int j) const { return e_[i * cols_ + j]; }
    SymbolMat transpose() const;
    Symbol trace() const;
    Symbol det() const;  // Leibniz expansion; entries commute

    friend SymbolMat operator*(const CMat& a, const SymbolMat& s);
    friend SymbolMat operator*(const SymbolMat& s, const CMat& a);
    friend SymbolMat operator*(const SymbolMat& a, const SymbolMat& b);
    friend SymbolMat operator+(const SymbolMat& a, const SymbolMat& b);

private:
    int rows_, cols_, dim_;
    std::vector<Symbol> e_;
};

// Weighted Wirtinger derivative matrices on a chart. A symmetric n×n block with real part at
// coordinates offset re_off and imaginary part at im_off (upper triangle row-wise):
// entry (i,j) = ((1+δ_ij)/2) ∂/∂ω_ij with ∂/∂ω = ½(∂_x - i ∂_y); conj=true gives ∂/∂ω̄.
SymbolMat wirtinger_sym(int dim, int n, int re_off, int im_off, bool conj);
// Real weighted derivative ((1+δ_ij)/2) ∂/∂y_ij of a symmetric block.
SymbolMat real_sym_derivative(int dim, int n, int off);
// For an m×n complex variable Z (real parts at re_off, imaginary at im_off, row-major), the n×m
// matrix with (l,k) entry ∂/∂z_kl = ½(∂_u - i ∂_v); conj gives ∂/∂z̄.
SymbolMat wirtinger_rect(int dim, int m, int n, int re_off, int im_off, bool conj);
// m×n matrix with (k,l) entry ∂/∂v_kl for a real rectangular block.
SymbolMat real_rect_derivative(int dim, int m, int n, int off);

// Polynomial in chart coordinates with complex coefficients.
class Poly {
public:
    Poly() = default;
    explicit Poly(int dim) : dim_(dim) {}
    static Poly constant(int dim, cplx c);
    static Poly coordinate(int dim, int k, cplx c = 1.0);

    int dim() const { return dim_; }
    bool zero() const { return terms_.empty(); }
    void add(const MultiIndex& e, cplx c);
    Poly operator+(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator*(cplx c) const;
    Poly diff(int k) const;
    Poly diff(const MultiIndex& a) const;
    cplx eval(const Vec& x) const;

private:
    int dim_ = 0;
    std::map<MultiIndex, cplx> terms_;
};

// Differential operator with polynomial coefficients, Σ p_α(x) ∂^α, coefficients on the left.
class PolyOp {
public:
    PolyOp() = default;
    explicit PolyOp(int dim) : dim_(dim) {}
    static PolyOp identity(int dim);
    static PolyOp partial(int dim, const MultiIndex& a, const Poly& coef);

    int dim() const { return dim_; }
    const std::map<MultiIndex, Poly>& terms() const { return terms_; }
    void add(const MultiIndex& a, const Poly& p);
    PolyOp operator+(const PolyOp& o) const;
    PolyOp operator-(const PolyOp& o) const;
    PolyOp operator*(cplx c) const;
    PolyOp left_mul(const Poly& p) const;
    // (this ∘ o) with the Leibniz rule applied to o's coefficients.
    PolyOp compose(const PolyOp& o) const;
    Symbol freeze(const Vec& x) const;

private:
    int dim_ = 0;
    std::map<MultiIndex, Poly> terms_;
};

// Matrix of PolyOps with composition-aware product.
struct PolyOpMat {
    int rows, cols;
    std::vector<PolyOp> e;
    PolyOpMat(int r, int c, int dim);
    PolyOp& operator()(int i, int j) { return e[i * cols + j]; }
    const PolyOp& operator()(int i, int j) const { return e[i * cols + j]; }
    PolyOpMat compose(const PolyOpMat& o) const;
    PolyOp trace() const;
};

}  // namespace sjl
