#include "sjl/reduction.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <functional>
#include <numbers>
#include <numeric>

#include "sjl/errors.hpp"

namespace sjl {

namespace {

using Rational = boost::multiprecision::cpp_rational;

constexpr long long kEnumerationCap = 2'000'000;

double tol_for(const Mat& y) { return kReduceTol * (1.0 + max_norm(y)); }

long long gcd_tail(const IVec& a, int k) {
    long long g = 0;
    for (int i = k; i < a.size(); ++i) g = std::gcd(g, std::llabs(a[i]));
    return g;
}

Mat to_d(const IMat& u) { return u.cast<double>(); }

IMat round_int(const Mat& m) {
    IMat r(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r(i, j) = std::llround(m(i, j));
    return r;
}

// Unimodular S with first row v (v primitive).
IMat complete_row(const IVec& v) {
    const int n = static_cast<int>(v.size());
    IMat W = IMat::Identity(n, n), Winv = IMat::Identity(n, n);
    IVec w = v;
    // column operations on the row vector w, recorded in W (w_now = v W) and in Winv
    auto col_add = [&](int dst, int src, long long q) {  // col dst -= q col src
        w[dst] -= q * w[src];
        W.col(dst) -= q * W.col(src);
        Winv.row(src) += q * Winv.row(dst);
    };
    auto col_swap = [&](int a, int b) {
        std::swap(w[a], w[b]);
        W.col(a).swap(W.col(b));
        Winv.row(a).swap(Winv.row(b));
    };
    for (int i = 1; i < n; ++i) {
        while (w[i] != 0) {
            long long q = w[0] / w[i];
            col_add(0, i, q);
            col_swap(0, i);
        }
    }
    if (w[0] < 0) {
        w[0] = -w[0];
        W.col(0) *= -1;
        Winv.row(0) *= -1;
    }
    if (w[0] != 1) throw InputError("vector is not primitive");
    return Winv;  // e_1 Winv = v
}

struct GramSchmidt {
    Mat mu;
    Vec b;
};

GramSchmidt gram_schmidt(const Mat& g) {
    const int n = static_cast<int>(g.rows());
    GramSchmidt gs{Mat::Zero(n, n), Vec::Zero(n)};
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < i; ++j) {
            double s = g(i, j);
            for (int l = 0; l < j; ++l) s -= gs.mu(j, l) * gs.mu(i, l) * gs.b[l];
            gs.mu(i, j) = s / gs.b[j];
        }
        double s = g(i, i);
        for (int j = 0; j < i; ++j) s -= gs.mu(i, j) * gs.mu(i, j) * gs.b[j];
        gs.b[i] = s;
    }
    return gs;
}

// LLL on the rows of U with Gram U Y tU.
void lll(const Mat& y, IMat& u) {
    const int n = static_cast<int>(y.rows());
    int k = 1, guard = 0;
    while (k < n) {
        if (++guard > 100000) throw NumericError("LLL did not terminate");
        for (int j = k - 1; j >= 0; --j) {
            GramSchmidt gs = gram_schmidt(to_d(u) * y * to_d(u).transpose());
            long long q = std::llround(gs.mu(k, j));
            if (q != 0) u.row(k) -= q * u.row(j);
        }
        GramSchmidt gs = gram_schmidt(to_d(u) * y * to_d(u).transpose());
        if (gs.b[k] >= (0.99 - gs.mu(k, k - 1) * gs.mu(k, k - 1)) * gs.b[k - 1]) {
            ++k;
        } else {
            u.row(k).swap(u.row(k - 1));
            k = std::max(k - 1, 1);
        }
    }
}

// All nonzero integer a with a G ta <= bound (Fincke-Pohst over an LDL^T factorization).
void enumerate_short(const Mat& g, double bound, const std::function<void(const IVec&, double)>& visit) {
    const int n = static_cast<int>(g.rows());
    // An explicit unpivoted LDL^T so coordinates stay in the original order.
    Mat L = Mat::Identity(n, n);
    Vec D = Vec::Zero(n);
    for (int j = 0; j < n; ++j) {
        double s = g(j, j);
        for (int k = 0; k < j; ++k) s -= L(j, k) * L(j, k) * D[k];
        D[j] = s;
        if (!(s > 0)) throw NumericError("enumeration needs a positive definite Gram matrix");
        for (int i = j + 1; i < n; ++i) {
            double t = g(i, j);
            for (int k = 0; k < j; ++k) t -= L(i, k) * L(j, k) * D[k];
            L(i, j) = t / D[j];
        }
    }
    // a G ta = Σ_i D_i (a_i + Σ_{j>i} a_j L_ji)^2
    IVec a = IVec::Zero(n);
    long long count = 0;
    std::function<void(int, double)> rec = [&](int i, double used) {
        if (i < 0) {
            if (a.cwiseAbs().maxCoeff() == 0) return;
            if (++count > kEnumerationCap)
                throw NumericError("short-vector enumeration exceeded " + std::to_string(kEnumerationCap) +
                                   " candidates (bound " + std::to_string(bound) + ")");
            visit(a, used);
            return;
        }
        double c = 0.0;
        for (int j = i + 1; j < n; ++j) c -= double(a[j]) * L(j, i);
        double rem = bound - used;
        if (rem < 0) return;
        double r = std::sqrt(rem / D[i]);
        long long lo = static_cast<long long>(std::ceil(c - r - 1e-9)), hi = static_cast<long long>(std::floor(c + r + 1e-9));
        for (long long v = lo; v <= hi; ++v) {
            a[i] = v;
            double t = double(v) - c;
            rec(i - 1, used + D[i] * t * t);
        }
        a[i] = 0;
    };
    rec(n - 1, 0.0);
}

SiegelPoint act(const SymplecticMatrix& m, const SiegelPoint& p) { return sp_action(m, p); }

SymplecticMatrix translation(const Mat& b) {
    const int n = static_cast<int>(b.rows());
    Mat m = Mat::Identity(2 * n, 2 * n);
    m.topRightCorner(n, n) = b;
    return SymplecticMatrix(m);
}

double s1_margin(const SiegelPoint& p, int* best = nullptr) {
    const int n = p.n();
    auto cands = siegel_candidates(n);
    double least = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < cands.size(); ++i) {
        CMat cd = cands[i].C().cast<cplx>() * p.omega() + cands[i].D().cast<cplx>();
        double v = std::abs(det(cd));
        if (v < least) {
            least = v;
            if (best) *best = static_cast<int>(i);
        }
    }
    return least - 1.0;
}

// x - ceil(x - 1/2) lies in (-1/2, 1/2]; ties go to +1/2.
double translate_amount(double x) { return -std::ceil(x - 0.5); }

std::vector<Rational> bernoulli(int upto) {
    // Akiyama-Tanigawa, B_1 = +1/2 convention (only even indices are used)
    std::vector<Rational> out(upto + 1), a(upto + 1);
    for (int m = 0; m <= upto; ++m) {
        a[m] = Rational(1, m + 1);
        for (int j = m; j >= 1; --j) a[j - 1] = Rational(j) * (a[j - 1] - a[j]);
        out[m] = a[0];
    }
    return out;
}

}  // namespace

MinkowskiCheck is_minkowski_reduced(const Mat& y, int bound) {
    const int n = static_cast<int>(y.rows());
    if (bound < 1) throw InputError("search bound must be >= 1");
    PosDefSymMatrix checked(y);
    const double tol = tol_for(y);
    MinkowskiCheck out;
    double m2 = std::numeric_limits<double>::infinity();
    for (int k = 0; k + 1 < n; ++k) m2 = std::min(m2, y(k, k + 1));
    bool m2_ok = n < 2 || m2 >= -tol;
    out.conditions.push_back({"M.2", m2_ok, n < 2 ? 0.0 : m2});
    double m1 = std::numeric_limits<double>::infinity();
    IVec a = IVec::Constant(n, -bound);
    while (true) {
        double q = (a.cast<double>().transpose() * y * a.cast<double>())(0, 0);
        for (int k = 0; k < n; ++k) {
            if (gcd_tail(a, k) != 1) continue;
            double margin = q - y(k, k);
            if (margin < m1) m1 = margin;
            if (margin < -tol && !out.witness) out.witness = a;
        }
        int i = 0;
        for (; i < n; ++i) {
            if (++a[i] <= bound) break;
            a[i] = -bound;
        }
        if (i == n) break;
    }
    bool m1_ok = !out.witness;
    out.conditions.insert(out.conditions.begin(), {"M.1", m1_ok, m1});
    out.reduced = m1_ok && m2_ok;
    return out;
}

MinkowskiResult minkowski_reduce(const Mat& y0, int check_bound) {
    const int n = static_cast<int>(y0.rows());
    Mat y = PosDefSymMatrix(y0).mat();
    IMat u = IMat::Identity(n, n);
    lll(y, u);
    MinkowskiResult r;
    const double tol = tol_for(y);
    bool changed = true;
    while (changed) {
        changed = false;
        if (++r.iterations > 1000) throw NumericError("Minkowski reduction did not stabilize");
        for (int k = 0; k < n; ++k) {
            Mat g = to_d(u) * y * to_d(u).transpose();
            IVec best;
            double best_q = g(k, k) - tol;
            enumerate_short(g, g(k, k) + tol, [&](const IVec& a, double q) {
                if (q < best_q && gcd_tail(a, k) == 1) {
                    best_q = q;
                    best = a;
                }
            });
            if (best.size() == 0) continue;
            IMat t = IMat::Identity(n, n);
            t.row(k) = best.transpose();
            IMat s = complete_row(best.tail(n - k));
            for (int i = k + 1; i < n; ++i) {
                t.row(i).setZero();
                t.block(i, k, 1, n - k) = s.row(i - k);
            }
            u = t * u;
            changed = true;
        }
    }
    for (int k = 0; k + 1 < n; ++k) {
        Mat g = to_d(u) * y * to_d(u).transpose();
        if (g(k, k + 1) < 0) u.row(k + 1) *= -1;
    }
    Mat red = to_d(u) * y * to_d(u).transpose();
    r.reduced = 0.5 * (red + red.transpose());
    r.U = u;
    r.conditions = is_minkowski_reduced(r.reduced, check_bound).conditions;
    return r;
}

std::vector<SymplecticMatrix> siegel_candidates(int n) {
    std::vector<SymplecticMatrix> out;
    const Mat I = Mat::Identity(n, n);
    // C = I, D = S symmetric with entries in {-1,0,1}: M = [[0,-I],[I,S]]
    const int t = n * (n + 1) / 2;
    std::vector<int> digits(t, -1);
    while (true) {
        Mat s = Mat::Zero(n, n);
        int p = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) s(i, j) = s(j, i) = digits[p++];
        Mat m(2 * n, 2 * n);
        m << Mat::Zero(n, n), -I, I, s;
        out.emplace_back(m);
        int k = 0;
        for (; k < t; ++k) {
            if (++digits[k] <= 1) break;
            digits[k] = -1;
        }
        if (k == t) break;
    }
    if (n > 1) {
        for (int i = 0; i < n; ++i)
            for (int d = -1; d <= 1; ++d) {
                Mat e = Mat::Zero(n, n);
                e(i, i) = 1.0;
                Mat m(2 * n, 2 * n);
                m << I - e, -e, e, I - e + d * e;
                out.emplace_back(m);
            }
    }
    return out;
}

SiegelCheck is_siegel_reduced(const SiegelPoint& omega, int bound) {
    SiegelCheck out;
    const Mat x = omega.X();
    double s1 = s1_margin(omega);
    out.conditions.push_back({"S.1", s1 >= -1e-12, s1});
    auto mk = is_minkowski_reduced(omega.Y(), bound);
    double s2 = std::numeric_limits<double>::infinity();
    for (const auto& c : mk.conditions) s2 = std::min(s2, c.margin);
    out.conditions.push_back({"S.2", mk.reduced, s2});
    double s3 = 0.5 - x.cwiseAbs().maxCoeff();
    out.conditions.push_back({"S.3", s3 >= -1e-12, s3});
    out.reduced = true;
    for (const auto& c : out.conditions) out.reduced = out.reduced && c.holds;
    return out;
}

SymplecticMatrix symplectic_from_unimodular(const IMat& u) {
    const int n = static_cast<int>(u.rows());
    Mat ud = to_d(u);
    Mat uinv_t = to_d(round_int(ud.inverse())).transpose();
    Mat m = Mat::Zero(2 * n, 2 * n);
    m.topLeftCorner(n, n) = ud;
    m.bottomRightCorner(n, n) = uinv_t;
    return SymplecticMatrix(m);
}

SiegelResult siegel_reduce(const SiegelPoint& omega, int max_iterations) {
    const int n = omega.n();
    SiegelResult r;
    r.gamma = SymplecticMatrix::identity(n);
    SiegelPoint p = omega;
    r.det_im_history.push_back(det(p.Y()));
    for (int it = 0; it < max_iterations; ++it) {
        r.iterations = it + 1;
        if (n > 1) {
            MinkowskiResult mk = minkowski_reduce(p.Y());
            if (!mk.U.isIdentity()) {
                SymplecticMatrix g = symplectic_from_unimodular(mk.U);
                p = act(g, p);
                r.gamma = g * r.gamma;
            }
        }
        Mat b(n, n);
        const Mat x = p.X();
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) b(i, j) = translate_amount(x(i, j));
        if (!b.isZero()) {
            SymplecticMatrix g = translation(b);
            p = act(g, p);
            r.gamma = g * r.gamma;
        }
        int best = -1;
        double margin = s1_margin(p, &best);
        if (margin < -1e-12) {
            SymplecticMatrix g = siegel_candidates(n)[best];
            p = act(g, p);
            r.gamma = g * r.gamma;
            r.det_im_history.push_back(det(p.Y()));
            continue;
        }
        r.det_im_history.push_back(det(p.Y()));
        SiegelCheck chk = is_siegel_reduced(p);
        if (chk.reduced) {
            r.reduced = p;
            r.conditions = chk.conditions;
            return r;
        }
    }
    throw NumericError("siegel_reduce: iteration cap " + std::to_string(max_iterations) + " exceeded");
}

std::pair<Mat, Mat> lattice_coordinates(const SiegelPoint& omega, const CMat& z) {
    Mat yinv = sym_inverse(PosDefSymMatrix(omega.Y())).inverse.mat();
    Mat lambda = z.imag() * yinv;
    Mat mu = z.real() - lambda * omega.X();
    return {lambda, mu};
}

JacobiReduceResult jacobi_reduce(const JacobiPoint& p, int max_iterations) {
    const int n = p.n(), m = p.m();
    SiegelResult sr = siegel_reduce(p.siegel(), max_iterations);
    JacobiElement g1{sr.gamma, HeisenbergElement::zero(m, n)};
    JacobiPoint q = jacobi_action(g1, p);
    auto [lambda, mu] = lattice_coordinates(q.siegel(), q.Z());
    Mat li = lambda.array().floor().matrix();
    Mat mi = mu.array().floor().matrix();
    // kappa chosen so that kappa + mu tlambda = 0
    HeisenbergElement h(-li, -mi, -mi * li.transpose());
    JacobiElement g2{SymplecticMatrix::identity(n), h};
    JacobiReduceResult r;
    r.gamma = jacobi_mul(g2, g1);
    r.reduced = jacobi_action(g2, q);
    r.lambda_int = li;
    r.mu_int = mi;
    auto [lf, mf] = lattice_coordinates(r.reduced.siegel(), r.reduced.Z());
    // clamp round-off at the right edge back into [0,1)
    auto wrap = [](Mat a) {
        for (int i = 0; i < a.size(); ++i) {
            double& v = a.data()[i];
            if (v >= 1.0 && v - 1.0 < 1e-12) v = 0.0;
            if (v < 0.0 && v > -1e-12) v = 0.0;
        }
        return a;
    };
    r.lambda_frac = wrap(lf);
    r.mu_frac = wrap(mf);
    r.iterations = sr.iterations;
    r.conditions = sr.conditions;
    double lat = std::min({r.lambda_frac.size() ? r.lambda_frac.minCoeff() : 0.0,
                           r.mu_frac.size() ? r.mu_frac.minCoeff() : 0.0,
                           r.lambda_frac.size() ? 1.0 - r.lambda_frac.maxCoeff() : 1.0,
                           r.mu_frac.size() ? 1.0 - r.mu_frac.maxCoeff() : 1.0});
    r.conditions.push_back({"lattice", lat >= 0.0, lat});
    return r;
}

VolumeResult siegel_volume(int n) {
    if (n < 1 || n > 20) throw InputError("siegel_volume supports 1 <= n <= 20");
    auto B = bernoulli(2 * n);
    // pi^{-k} (k-1)! zeta(2k) = (k-1)! |B_2k| 2^{2k-1} / (2k)! * pi^k
    Rational coef = 2;
    for (int k = 1; k <= n; ++k) {
        Rational fact_k1 = 1, fact_2k = 1;
        for (int i = 2; i <= k - 1; ++i) fact_k1 *= i;
        for (int i = 2; i <= 2 * k; ++i) fact_2k *= i;
        Rational b = B[2 * k] < 0 ? Rational(-B[2 * k]) : B[2 * k];
        Rational pow2 = 1;
        for (int i = 0; i < 2 * k - 1; ++i) pow2 *= 2;
        coef *= fact_k1 * b * pow2 / fact_2k;
    }
    VolumeResult r;
    r.pi_power = n * (n + 1) / 2;
    r.rational = coef.str();
    r.value = static_cast<double>(coef) * std::pow(std::numbers::pi, r.pi_power);
    return r;
}

}  // namespace sjl
