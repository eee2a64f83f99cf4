#include "sjl/diffop.hpp"

#include <algorithm>
#include <numeric>

#include "sjl/errors.hpp"

namespace sjl {

namespace {

int sym_pos(int n, int i, int j) {
    if (i > j) std::swap(i, j);
    return i * n - i * (i - 1) / 2 + (j - i);
}

MultiIndex add_index(const MultiIndex& a, const MultiIndex& b) {
    MultiIndex c(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) c[k] = a[k] + b[k];
    return c;
}

double binomial(int n, int k) {
    double r = 1.0;
    for (int j = 0; j < k; ++j) r = r * (n - j) / (j + 1);
    return r;
}

}  // namespace

// ---- Symbol ----

Symbol Symbol::constant(int dim, cplx c) {
    Symbol s(dim);
    s.add(MultiIndex(dim, 0), c);
    return s;
}

Symbol Symbol::partial(int dim, int k, cplx c) {
    Symbol s(dim);
    s.add(unit_index(dim, k), c);
    return s;
}

void Symbol::add(const MultiIndex& a, cplx c) {
    if (c == 0.0) return;
    auto it = terms_.find(a);
    if (it == terms_.end()) {
        terms_.emplace(a, c);
    } else {
        it->second += c;
        if (it->second == 0.0) terms_.erase(it);
    }
}

int Symbol::order() const {
    int o = 0;
    for (const auto& [a, c] : terms_) o = std::max(o, sjl::order(a));
    return o;
}

Symbol& Symbol::operator+=(const Symbol& o) {
    if (dim_ == 0) dim_ = o.dim_;
    for (const auto& [a, c] : o.terms_) add(a, c);
    return *this;
}

Symbol Symbol::operator+(const Symbol& o) const {
    Symbol r = *this;
    r += o;
    return r;
}

Symbol Symbol::operator-(const Symbol& o) const { return *this + o * cplx(-1.0); }

Symbol Symbol::operator*(const Symbol& o) const {
    Symbol r(std::max(dim_, o.dim_));
    for (const auto& [a, c] : terms_)
        for (const auto& [b, d] : o.terms_) r.add(add_index(a, b), c * d);
    return r;
}

Symbol Symbol::operator*(cplx c) const {
    Symbol r(dim_);
    for (const auto& [a, v] : terms_) r.add(a, v * c);
    return r;
}

cplx Symbol::apply(const ScalarField& f, const Vec& x, const DeriveOptions& opt, Warnings* w) const {
    cplx s = 0.0;
    for (const auto& [a, c] : terms_) s += c * derive(f, x, a, opt, w);
    return s;
}

// ---- SymbolMat ----

SymbolMat::SymbolMat(int rows, int cols, int dim) : rows_(rows), cols_(cols), dim_(dim), e_(rows * cols, Symbol(dim)) {}

SymbolMat SymbolMat::transpose() const {
    SymbolMat t(cols_, rows_, dim_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Symbol SymbolMat::trace() const {
    Symbol s(dim_);
    for (int i = 0; i < std::min(rows_, cols_); ++i) s += (*this)(i, i);
    return s;
}

Symbol SymbolMat::det() const {
    if (rows_ != cols_) throw InputError("det of a non-square symbol matrix");
    std::vector<int> perm(rows_);
    std::iota(perm.begin(), perm.end(), 0);
    Symbol total(dim_);
    do {
        int inversions = 0;
        for (int i = 0; i < rows_; ++i)
            for (int j = i + 1; j < rows_; ++j)
                if (perm[i] > perm[j]) ++inversions;
        Symbol term = Symbol::constant(dim_, inversions % 2 ? -1.0 : 1.0);
        for (int i = 0; i < rows_; ++i) term = term * (*this)(i, perm[i]);
        total += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

SymbolMat operator*(const CMat& a, const SymbolMat& s) {
    if (a.cols() != s.rows_) throw InputError("SymbolMat: dimension mismatch");
    SymbolMat r(static_cast<int>(a.rows()), s.cols_, s.dim_);
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < s.cols_; ++j)
            for (int k = 0; k < s.rows_; ++k)
                if (a(i, k) != 0.0) r(i, j) += s(k, j) * a(i, k);
    return r;
}

SymbolMat operator*(const SymbolMat& s, const CMat& a) {
    if (s.cols_ != a.rows()) throw InputError("SymbolMat: dimension mismatch");
    SymbolMat r(s.rows_, static_cast<int>(a.cols()), s.dim_);
    for (int i = 0; i < s.rows_; ++i)
        for (int j = 0; j < a.cols(); ++j)
            for (int k = 0; k < s.cols_; ++k)
                if (a(k, j) != 0.0) r(i, j) += s(i, k) * a(k, j);
    return r;
}

SymbolMat operator*(const SymbolMat& a, const SymbolMat& b) {
    if (a.cols_ != b.rows_) throw InputError("SymbolMat: dimension mismatch");
    SymbolMat r(a.rows_, b.cols_, a.dim_);
    for (int i = 0; i < a.rows_; ++i)
        for (int j = 0; j < b.cols_; ++j)
            for (int k = 0; k < a.cols_; ++k) r(i, j) += a(i, k) * b(k, j);
    return r;
}

SymbolMat operator+(const SymbolMat& a, const SymbolMat& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InputError("SymbolMat: dimension mismatch");
    SymbolMat r = a;
    for (std::size_t k = 0; k < r.e_.size(); ++k) r.e_[k] += b.e_[k];
    return r;
}

SymbolMat wirtinger_sym(int dim, int n, int re_off, int im_off, bool conj) {
    SymbolMat s(n, n, dim);
    const cplx iu(0.0, conj ? 0.5 : -0.5);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double w = (i == j) ? 1.0 : 0.5;
            int p = sym_pos(n, i, j);
            s(i, j) = Symbol::partial(dim, re_off + p, 0.5 * w) + Symbol::partial(dim, im_off + p, iu * w);
        }
    return s;
}

SymbolMat real_sym_derivative(int dim, int n, int off) {
    SymbolMat s(n, n, dim);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) s(i, j) = Symbol::partial(dim, off + sym_pos(n, i, j), i == j ? 1.0 : 0.5);
    return s;
}

SymbolMat wirtinger_rect(int dim, int m, int n, int re_off, int im_off, bool conj) {
    SymbolMat s(n, m, dim);
    const cplx iu(0.0, conj ? 0.5 : -0.5);
    for (int k = 0; k < m; ++k)
        for (int l = 0; l < n; ++l) {
            int p = k * n + l;
            s(l, k) = Symbol::partial(dim, re_off + p, 0.5) + Symbol::partial(dim, im_off + p, iu);
        }
    return s;
}

SymbolMat real_rect_derivative(int dim, int m, int n, int off) {
    SymbolMat s(m, n, dim);
    for (int k = 0; k < m; ++k)
        for (int l = 0; l < n; ++l) s(k, l) = Symbol::partial(dim, off + k * n + l);
    return s;
}

// ---- Poly ----

Poly Poly::constant(int dim, cplx c) {
    Poly p(dim);
    p.add(MultiIndex(dim, 0), c);
    return p;
}

Poly Poly::coordinate(int dim, int k, cplx c) {
    Poly p(dim);
    p.add(unit_index(dim, k), c);
    return p;
}

void Poly::add(const MultiIndex& e, cplx c) {
    if (c == 0.0) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
    } else {
        it->second += c;
        if (it->second == 0.0) terms_.erase(it);
    }
}

Poly Poly::operator+(const Poly& o) const {
    Poly r = *this;
    if (r.dim_ == 0) r.dim_ = o.dim_;
    for (const auto& [e, c] : o.terms_) r.add(e, c);
    return r;
}

Poly Poly::operator*(const Poly& o) const {
    Poly r(std::max(dim_, o.dim_));
    for (const auto& [a, c] : terms_)
        for (const auto& [b, d] : o.terms_) r.add(add_index(a, b), c * d);
    return r;
}

Poly Poly::operator*(cplx c) const {
    Poly r(dim_);
    for (const auto& [e, v] : terms_) r.add(e, v * c);
    return r;
}

Poly Poly::diff(int k) const {
    Poly r(dim_);
    for (const auto& [e, c] : terms_) {
        if (e[k] == 0) continue;
        MultiIndex f = e;
        --f[k];
        r.add(f, c * double(e[k]));
    }
    return r;
}

Poly Poly::diff(const MultiIndex& a) const {
    Poly r = *this;
    for (int k = 0; k < static_cast<int>(a.size()); ++k)
        for (int t = 0; t < a[k]; ++t) r = r.diff(k);
    return r;
}

cplx Poly::eval(const Vec& x) const {
    cplx s = 0.0;
    for (const auto& [e, c] : terms_) {
        cplx t = c;
        for (int k = 0; k < static_cast<int>(e.size()); ++k)
            if (e[k]) t *= std::pow(x[k], e[k]);
        s += t;
    }
    return s;
}

// ---- PolyOp ----

PolyOp PolyOp::identity(int dim) {
    PolyOp o(dim);
    o.add(MultiIndex(dim, 0), Poly::constant(dim, 1.0));
    return o;
}

PolyOp PolyOp::partial(int dim, const MultiIndex& a, const Poly& coef) {
    PolyOp o(dim);
    o.add(a, coef);
    return o;
}

void PolyOp::add(const MultiIndex& a, const Poly& p) {
    if (p.zero()) return;
    auto it = terms_.find(a);
    if (it == terms_.end()) {
        terms_.emplace(a, p);
    } else {
        it->second = it->second + p;
        if (it->second.zero()) terms_.erase(it);
    }
}

PolyOp PolyOp::operator+(const PolyOp& o) const {
    PolyOp r = *this;
    if (r.dim_ == 0) r.dim_ = o.dim_;
    for (const auto& [a, p] : o.terms_) r.add(a, p);
    return r;
}

PolyOp PolyOp::operator-(const PolyOp& o) const { return *this + o * cplx(-1.0); }

PolyOp PolyOp::operator*(cplx c) const {
    PolyOp r(dim_);
    for (const auto& [a, p] : terms_) r.add(a, p * c);
    return r;
}

PolyOp PolyOp::left_mul(const Poly& q) const {
    PolyOp r(dim_);
    for (const auto& [a, p] : terms_) r.add(a, q * p);
    return r;
}

PolyOp PolyOp::compose(const PolyOp& o) const {
    PolyOp r(std::max(dim_, o.dim_));
    for (const auto& [alpha, a] : terms_) {
        // enumerate gamma <= alpha
        MultiIndex gamma(alpha.size(), 0);
        while (true) {
            double w = 1.0;
            MultiIndex rest(alpha.size());
            for (std::size_t k = 0; k < alpha.size(); ++k) {
                w *= binomial(alpha[k], gamma[k]);
                rest[k] = alpha[k] - gamma[k];
            }
            for (const auto& [beta, b] : o.terms_) {
                Poly db = b.diff(gamma);
                if (!db.zero()) r.add(add_index(rest, beta), a * db * w);
            }
            std::size_t k = 0;
            for (; k < alpha.size(); ++k) {
                if (++gamma[k] <= alpha[k]) break;
                gamma[k] = 0;
            }
            if (k == alpha.size()) break;
        }
    }
    return r;
}

Symbol PolyOp::freeze(const Vec& x) const {
    Symbol s(dim_);
    for (const auto& [a, p] : terms_) s.add(a, p.eval(x));
    return s;
}

PolyOpMat::PolyOpMat(int r, int c, int dim) : rows(r), cols(c), e(r * c, PolyOp(dim)) {}

PolyOpMat PolyOpMat::compose(const PolyOpMat& o) const {
    if (cols != o.rows) throw InputError("PolyOpMat: dimension mismatch");
    PolyOpMat r(rows, o.cols, e.empty() ? 0 : e[0].dim());
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < o.cols; ++j)
            for (int k = 0; k < cols; ++k) r(i, j) = r(i, j) + (*this)(i, k).compose(o(k, j));
    return r;
}

PolyOp PolyOpMat::trace() const {
    PolyOp t(e.empty() ? 0 : e[0].dim());
    for (int i = 0; i < std::min(rows, cols); ++i) t = t + (*this)(i, i);
    return t;
}

}  // namespace sjl
