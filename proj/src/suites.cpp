#include "sjl/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iomanip>
#include <limits>
#include <numbers>
#include <sstream>

#include "sjl/bessel.hpp"
#include "sjl/errors.hpp"
#include "sjl/reduction.hpp"
#include "sjl/spectral.hpp"

namespace sjl {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI(0.0, 1.0);

const std::vector<std::pair<int, int>> kShapes = {{1, 1}, {2, 1}, {1, 2}, {2, 2}};

double rel(const Mat& a, const Mat& b) { return max_norm(Mat(a - b)) / std::max(1.0, max_norm(b)); }
double rel(const CMat& a, const CMat& b) { return max_norm(CMat(a - b)) / std::max(1.0, max_norm(b)); }

double elem_diff(const JacobiElement& a, const JacobiElement& b) {
    return std::max({rel(a.M.mat(), b.M.mat()), rel(a.h.lambda, b.h.lambda), rel(a.h.mu, b.h.mu),
                     rel(a.h.kappa, b.h.kappa)});
}

double elem_diff(const DiskJacobiElement& a, const DiskJacobiElement& b) {
    return std::max({rel(a.P, b.P), rel(a.Q, b.Q), rel(a.xi, b.xi), rel(a.kappa, b.kappa)});
}

double elem_diff(const GLnmElement& a, const GLnmElement& b) {
    return std::max({rel(a.A, b.A), rel(a.h.lambda, b.h.lambda), rel(a.h.mu, b.h.mu), rel(a.h.kappa, b.h.kappa)});
}

double point_diff(const JacobiPoint& a, const JacobiPoint& b) {
    return std::max(rel(a.omega(), b.omega()), rel(a.Z(), b.Z()));
}

double point_diff(const DiskJacobiPoint& a, const DiskJacobiPoint& b) {
    return std::max(rel(a.W(), b.W()), rel(a.eta(), b.eta()));
}

std::string shape(int n, int m) { return "(" + std::to_string(n) + "," + std::to_string(m) + ")"; }

double uniform(Rng& rng, double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }

long long uniform_int(Rng& rng, int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng); }

CVec random_coef(int d, Rng& rng, double scale = 0.5) {
    CVec c(d);
    for (int i = 0; i < d; ++i) c[i] = cplx(uniform(rng, -scale, scale), uniform(rng, -scale, scale));
    return c;
}

Mat random_int_matrix(int r, int c, Rng& rng, int bound) {
    Mat a(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) a(i, j) = double(uniform_int(rng, -bound, bound));
    return a;
}

CMat random_cmat(int r, int c, Rng& rng, double scale) {
    return random_matrix(r, c, rng, scale).cast<cplx>() + kI * random_matrix(r, c, rng, scale).cast<cplx>();
}

// Integer lattice translation (λ, μ; κ) with κ + μ tλ symmetric.
HeisenbergElement lattice_translation(int m, int n, Rng& rng, int bound = 3) {
    Mat l = random_int_matrix(m, n, rng, bound), u = random_int_matrix(m, n, rng, bound);
    return HeisenbergElement(l, u, Mat(-u * l.transpose()));
}

// Incremental FNV-1a over a textual rendering of the inputs.
class Digest {
public:
    Digest& add(const std::string& s) {
        for (unsigned char c : s) {
            h_ ^= c;
            h_ *= 1099511628211ULL;
        }
        return add_sep();
    }
    Digest& add(double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return add(std::string(buf));
    }
    Digest& add(cplx z) { return add(z.real()).add(z.imag()); }
    template <class Derived>
    Digest& add(const Eigen::MatrixBase<Derived>& a) {
        for (int i = 0; i < a.rows(); ++i)
            for (int j = 0; j < a.cols(); ++j) add(a(i, j));
        return *this;
    }
    Digest& add(const JacobiElement& g) { return add(g.M.mat()).add(g.h.lambda).add(g.h.mu).add(g.h.kappa); }
    Digest& add(const DiskJacobiElement& g) { return add(g.P).add(g.Q).add(g.xi).add(g.kappa); }
    Digest& add(const GLnmElement& g) { return add(g.A).add(g.h.lambda).add(g.h.mu).add(g.h.kappa); }
    Digest& add(const SymplecticMatrix& g) { return add(g.mat()); }
    Digest& add(const HeisenbergElement& h) { return add(h.lambda).add(h.mu).add(h.kappa); }
    std::string hex() const {
        char buf[20];
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h_));
        return buf;
    }

private:
    Digest& add_sep() {
        h_ ^= 0x1f;
        h_ *= 1099511628211ULL;
        return *this;
    }
    std::uint64_t h_ = 1469598103934665603ULL;
};

// A case aggregates the worst residual over its samples.
class Batch {
public:
    explicit Batch(std::string label) : label_(std::move(label)) { digest_.add(label_); }
    Digest& digest() { return digest_; }
    void le(double r) {
        worst_ = std::isnan(r) || std::isnan(worst_) ? std::numeric_limits<double>::quiet_NaN() : std::max(worst_, r);
        ++samples_;
    }
    void ge(double r) {
        worst_ = samples_ == 0 ? r : std::min(worst_, r);
        ++samples_;
    }
    const std::string& label() const { return label_; }
    double worst() const { return worst_; }
    int samples() const { return samples_; }

private:
    std::string label_;
    Digest digest_;
    double worst_ = 0.0;
    int samples_ = 0;
};

class Runner {
public:
    Runner(const std::string& name, const Config& cfg) : rng(cfg.seed), cfg_(cfg) {
        rep_.suite = name;
        rep_.seed = cfg.seed;
    }

    double tol(double fallback) const {
        if (cfg_.tol) return *cfg_.tol;
        auto it = cfg_.suite_tol.find(rep_.suite);
        return it != cfg_.suite_tol.end() ? it->second : fallback;
    }

    // Runs fn to fill one upper-bound case; exceptions fail the case and are reported.
    void le(const std::string& label, double tolerance, const std::function<void(Batch&)>& fn) {
        run(label, tol(tolerance), Compare::LE, fn);
    }
    // Lower-bound cases witness that a quantity is bounded away from zero; --tol does not apply.
    void ge(const std::string& label, double bound, const std::function<void(Batch&)>& fn) {
        run(label, bound, Compare::GE, fn);
    }
    void diag(const std::string& key, json value) { rep_.diagnostics.push_back({key, std::move(value)}); }

    const Config& cfg() const { return cfg_; }
    SuiteReport finish() {
        rep_.cases = static_cast<int>(rep_.records.size());
        rep_.passed = 0;
        rep_.max_residual = 0.0;
        for (const auto& r : rep_.records) {
            rep_.passed += r.pass;
            if (r.compare == Compare::LE && std::isfinite(r.residual))
                rep_.max_residual = std::max(rep_.max_residual, r.residual);
        }
        return rep_;
    }

    Rng rng;

private:
    void run(const std::string& label, double tolerance, Compare cmp, const std::function<void(Batch&)>& fn) {
        Batch b(label);
        CaseRecord rec;
        rec.label = label;
        rec.tolerance = tolerance;
        rec.compare = cmp;
        try {
            fn(b);
            rec.residual = b.worst();
            rec.pass = std::isfinite(rec.residual) &&
                       (cmp == Compare::LE ? rec.residual <= tolerance : rec.residual >= tolerance);
        } catch (const std::exception& e) {
            rec.residual = std::numeric_limits<double>::quiet_NaN();
            rec.pass = false;
            diag(label + ": error", e.what());
        }
        rec.samples = b.samples();
        rec.digest = b.digest().hex();
        rep_.records.push_back(rec);
    }

    const Config& cfg_;
    SuiteReport rep_;
};

// ---------------------------------------------------------------- group-axioms

void suite_group_axioms(Runner& r) {
    constexpr int N = 100;
    const double t = 1e-10;
    for (auto [n, m] : kShapes) {
        const std::string s = shape(n, m);
        r.le("Sp associativity " + s, t, [&](Batch& b) {
            for (int k = 0; k < N; ++k) {
                auto a = random_symplectic(n, r.rng), c = random_symplectic(n, r.rng), d = random_symplectic(n, r.rng);
                b.digest().add(a).add(c).add(d);
                b.le(rel(((a * c) * d).mat(), (a * (c * d)).mat()));
            }
        });
        r.le("Sp inverse and identity " + s, t, [&](Batch& b) {
            for (int k = 0; k < N; ++k) {
                auto a = random_symplectic(n, r.rng);
                b.digest().add(a);
                const Mat id = Mat::Identity(2 * n, 2 * n);
                b.le(std::max({rel((a * a.inverse()).mat(), id), rel((a.inverse() * a).mat(), id),
                               rel((a * SymplecticMatrix::identity(n)).mat(), a.mat()), symplectic_residual(a.mat())}));
            }
        });
        r.le("Jacobi associativity " + s, t, [&](Batch& b) {
            for (int k = 0; k < N; ++k) {
                auto g = random_jacobi(n, m, r.rng), h = random_jacobi(n, m, r.rng), f = random_jacobi(n, m, r.rng);
                b.digest().add(g).add(h).add(f);
                b.le(elem_diff(jacobi_mul(jacobi_mul(g, h), f), jacobi_mul(g, jacobi_mul(h, f))));
            }
        });
        r.le("Jacobi inverse and identity " + s, t, [&](Batch& b) {
            const JacobiElement e = JacobiElement::identity(n, m);
            for (int k = 0; k < N; ++k) {
                auto g = random_jacobi(n, m, r.rng);
                b.digest().add(g);
                b.le(std::max({elem_diff(jacobi_mul(g, jacobi_inv(g)), e), elem_diff(jacobi_mul(jacobi_inv(g), g), e),
                               elem_diff(jacobi_mul(g, e), g), elem_diff(jacobi_mul(e, g), g)}));
            }
        });
        r.le("Heisenberg symmetry constraint " + s, t, [&](Batch& b) {
            for (int k = 0; k < N; ++k) {
                auto g = random_jacobi(n, m, r.rng), h = random_jacobi(n, m, r.rng);
                b.digest().add(g).add(h);
                const auto p = jacobi_mul(g, h);
                const Mat K = p.h.kappa + p.h.mu * p.h.lambda.transpose();
                b.le(max_norm(Mat(K - K.transpose())));
            }
        });
        r.le("disk group homomorphism " + s, t, [&](Batch& b) {
            for (int k = 0; k < N; ++k) {
                auto g = random_jacobi(n, m, r.rng), h = random_jacobi(n, m, r.rng);
                b.digest().add(g).add(h);
                b.le(elem_diff(to_disk_group(jacobi_mul(g, h)), disk_mul(to_disk_group(g), to_disk_group(h))));
                b.le(elem_diff(from_disk_group(to_disk_group(g)), g));
            }
        });
        r.le("disk group axioms " + s, t, [&](Batch& b) {
            const auto e = to_disk_group(JacobiElement::identity(n, m));
            for (int k = 0; k < N; ++k) {
                auto g = to_disk_group(random_jacobi(n, m, r.rng)), h = to_disk_group(random_jacobi(n, m, r.rng)),
                     f = to_disk_group(random_jacobi(n, m, r.rng));
                b.digest().add(g).add(h).add(f);
                b.le(std::max({elem_diff(disk_mul(disk_mul(g, h), f), disk_mul(g, disk_mul(h, f))),
                               elem_diff(disk_mul(g, disk_inv(g)), e), elem_diff(disk_mul(g, e), g)}));
            }
        });
        r.le("GL(n,m) group axioms " + s, t, [&](Batch& b) {
            const auto e = GLnmElement::identity(n, m);
            for (int k = 0; k < N; ++k) {
                auto a = random_glnm(n, m, r.rng), c = random_glnm(n, m, r.rng), d = random_glnm(n, m, r.rng);
                b.digest().add(a).add(c).add(d);
                b.le(std::max({elem_diff(glnm_mul(glnm_mul(a, c), d), glnm_mul(a, glnm_mul(c, d))),
                               elem_diff(glnm_mul(a, glnm_inv(a)), e), elem_diff(glnm_mul(a, e), a)}));
            }
        });
        r.le("embedding into Sp(m+n) " + s, t, [&](Batch& b) {
            for (int k = 0; k < N; ++k) {
                auto g = random_jacobi(n, m, r.rng), h = random_jacobi(n, m, r.rng);
                b.digest().add(g).add(h);
                const auto eg = embed_sp(g), eh = embed_sp(h);
                b.le(std::max(symplectic_residual(eg.mat()), rel(embed_sp(jacobi_mul(g, h)).mat(), (eg * eh).mat())));
            }
        });
        r.le("pairing invariance " + s, t, [&](Batch& b) {
            for (int k = 0; k < N; ++k) {
                auto M = random_symplectic(n, r.rng);
                Mat l = random_matrix(m, n, r.rng, 1.0), u = random_matrix(m, n, r.rng, 1.0);
                Mat lp = random_matrix(m, n, r.rng, 1.0), up = random_matrix(m, n, r.rng, 1.0);
                b.digest().add(M).add(l).add(u).add(lp).add(up);
                auto [l2, u2] = right_sp_action(l, u, M);
                auto [lp2, up2] = right_sp_action(lp, up, M);
                b.le(rel(heisenberg_pairing(l2, u2, lp2, up2), heisenberg_pairing(l, u, lp, up)));
            }
        });
    }
}

// ---------------------------------------------------------------- actions

void suite_actions(Runner& r) {
    constexpr int N = 100;
    const double t = 1e-10;
    for (auto [n, m] : kShapes) {
        const std::string s = shape(n, m);
        r.le("Sp left action " + s, t, [&](Batch& b) {
            for (int k = 0; k < N; ++k) {
                auto a = random_symplectic(n, r.rng), c = random_symplectic(n, r.rng);
                auto p = random_siegel(n, r.rng);
                b.digest().add(a).add(c).add(p.omega());
                b.le(rel(sp_action(a * c, p).omega(), sp_action(a, sp_action(c, p)).omega()));
                b.le(rel(sp_action(SymplecticMatrix::identity(n), p).omega(), p.omega()));
                b.le(rel(im_pullback(a, p).mat(), sp_action(a, p).Y()));
            }
        });
        r.le("Jacobi left action " + s, t, [&](Batch& b) {
            for (int k = 0; k < N; ++k) {
                auto g = random_jacobi(n, m, r.rng), h = random_jacobi(n, m, r.rng);
                auto p = random_jacobi_point(n, m, r.rng);
                b.digest().add(g).add(h).add(p.omega()).add(p.Z());
                b.le(point_diff(jacobi_action(jacobi_mul(g, h), p), jacobi_action(g, jacobi_action(h, p))));
                b.le(point_diff(jacobi_action(JacobiElement::identity(n, m), p), p));
            }
        });
        r.le("disk Jacobi left action " + s, t, [&](Batch& b) {
            for (int k = 0; k < N; ++k) {
                auto g = to_disk_group(random_jacobi(n, m, r.rng)), h = to_disk_group(random_jacobi(n, m, r.rng));
                auto p = random_disk_jacobi_point(n, m, r.rng);
                b.digest().add(g).add(h).add(p.W()).add(p.eta());
                b.le(point_diff(disk_jacobi_action(disk_mul(g, h), p), disk_jacobi_action(g, disk_jacobi_action(h, p))));
                b.le(rel(disk_action(disk_mul(g, h), p.disk()).W(), disk_action(g, disk_action(h, p.disk())).W()));
            }
        });
        r.ge("disk action keeps I - conj(W)W positive " + s, kDiskMargin, [&](Batch& b) {
            for (int k = 0; k < N; ++k) {
                auto g = to_disk_group(random_jacobi(n, m, r.rng));
                auto p = random_disk_jacobi_point(n, m, r.rng);
                b.digest().add(g).add(p.W());
                b.ge(disk_margin(disk_jacobi_action(g, p).W()));
            }
        });
        r.ge("Sp action keeps Y positive " + s, 0.0, [&](Batch& b) {
            for (int k = 0; k < N; ++k) {
                auto a = random_symplectic(n, r.rng);
                auto p = random_siegel(n, r.rng);
                b.digest().add(a).add(p.omega());
                Eigen::SelfAdjointEigenSolver<Mat> es(sp_action(a, p).Y(), Eigen::EigenvaluesOnly);
                b.ge(es.eigenvalues().minCoeff());
            }
        });
        r.le("GL(n,m) left action " + s, t, [&](Batch& b) {
            for (int k = 0; k < N; ++k) {
                auto a = random_glnm(n, m, r.rng), c = random_glnm(n, m, r.rng);
                Mat y = random_siegel(n, r.rng).Y(), v = random_matrix(m, n, r.rng, 1.0);
                b.digest().add(a).add(c).add(y).add(v);
                auto [y1, v1] = glnm_action(glnm_mul(a, c), y, v);
                auto [yc, vc] = glnm_action(c, y, v);
                auto [y2, v2] = glnm_action(a, yc, vc);
                b.le(std::max(rel(y1, y2), rel(v1, v2)));
            }
        });
    }
}

// ---------------------------------------------------------------- metric-invariance

struct MetricCase {
    MetricId id;
    std::function<GroupElement(Rng&)> element;
    std::function<Vec(Rng&)> point;
};

std::vector<MetricCase> metric_cases(Rng& rng) {
    std::vector<MetricCase> out;
    for (int n : {1, 2}) {
        out.push_back({MetricId::siegel(n), [n](Rng& g) { return GroupElement(random_symplectic(n, g)); },
                       [n](Rng& g) { return siegel_to_chart(random_siegel(n, g)); }});
        out.push_back({MetricId::disk(n), [n](Rng& g) { return GroupElement(to_disk_group(random_jacobi(n, 1, g))); },
                       [n](Rng& g) { return disk_to_chart(random_disk(n, g)); }});
    }
    for (auto [n, m] : kShapes) {
        out.push_back({MetricId::jacobi(n, m), [n, m](Rng& g) { return GroupElement(random_jacobi(n, m, g)); },
                       [n, m](Rng& g) { return jacobi_to_chart(random_jacobi_point(n, m, g)); }});
        out.push_back({MetricId::disk_jacobi(n, m),
                       [n, m](Rng& g) { return GroupElement(to_disk_group(random_jacobi(n, m, g))); },
                       [n, m](Rng& g) { return disk_jacobi_to_chart(random_disk_jacobi_point(n, m, g)); }});
    }
    out.push_back({MetricId::h11(), [](Rng& g) { return GroupElement(random_jacobi(1, 1, g)); },
                   [](Rng& g) { return jacobi_to_chart(random_jacobi_point(1, 1, g)); }});
    for (auto [n, m] : kShapes) {
        const SiegelPoint om = random_siegel(n, rng);
        out.push_back({MetricId::abelian(om, m),
                       [n, m](Rng& g) {
                           return GroupElement(JacobiElement{SymplecticMatrix::identity(n), lattice_translation(m, n, g)});
                       },
                       [n, m](Rng& g) { return torus_chart(random_cmat(m, n, g, 1.0)); }});
    }
    return out;
}

void suite_metric_invariance(Runner& r) {
    for (const auto& mc : metric_cases(r.rng)) {
        const std::string name = metric_name(mc.id);
        r.le("pullback " + name, 1e-6, [&](Batch& b) {
            b.digest().add(mc.id.omega);
            for (int k = 0; k < 20; ++k) {
                GroupElement g = mc.element(r.rng);
                Vec x = mc.point(r.rng);
                b.digest().add(x);
                b.le(pullback_residual(mc.id, g, x));
            }
        });
        r.le("polarization realness " + name, 1e-10, [&](Batch& b) {
            for (int k = 0; k < 50; ++k) {
                Vec x = mc.point(r.rng);
                b.digest().add(x);
                b.le(metric_gram(mc.id, x).imag_residue);
            }
        });
    }
    r.le("H11 equals JACOBI(1,1)", 1e-10, [&](Batch& b) {
        for (int k = 0; k < 50; ++k) {
            Vec x = jacobi_to_chart(random_jacobi_point(1, 1, r.rng));
            b.digest().add(x);
            b.le(rel(metric_gram(MetricId::h11(), x).gram, metric_gram(MetricId::jacobi(1, 1), x).gram));
        }
    });
    for (auto [n, m] : kShapes) {
        const std::string s = shape(n, m);
        r.le("disk transfer through partial Cayley " + s, 1e-8, [&](Batch& b) {
            double closed = 0.0;
            for (int k = 0; k < 50; ++k) {
                Vec x = disk_jacobi_to_chart(random_disk_jacobi_point(n, m, r.rng));
                b.digest().add(x);
                ChartMap phi = [n = n, m = m](const Vec& y) {
                    return jacobi_to_chart(partial_cayley(chart_to_disk_jacobi(y, n, m)));
                };
                const Mat J = jacobian_fd(phi, x);
                const Mat pulled = J.transpose() * metric_gram(MetricId::jacobi(n, m), phi(x)).gram * J;
                const Mat g = metric_gram(MetricId::disk_jacobi(n, m), x).gram;
                b.le(rel(g, pulled));
                closed = std::max(closed, rel(disk_jacobi_closed_form_gram(n, m, x).gram, g));
            }
            r.diag("closed-form disk Jacobi metric vs pullback " + s, closed);
        });
    }
}

// ---------------------------------------------------------------- volume-element

void suite_volume_element(Runner& r) {
    for (const auto& mc : metric_cases(r.rng)) {
        if (mc.id.tag == MetricTag::Abelian || mc.id.tag == MetricTag::H11) continue;
        if (mc.id.tag == MetricTag::DiskJacobi && mc.id.n * mc.id.m > 2) continue;
        const int N = mc.id.tag == MetricTag::Jacobi ? 50 : 20;
        r.le("volume element " + metric_name(mc.id), 1e-6, [&](Batch& b) {
            for (int k = 0; k < N; ++k) {
                GroupElement g = mc.element(r.rng);
                Vec x = mc.point(r.rng);
                b.digest().add(x);
                b.le(volume_invariance_residual(mc.id, g, x));
            }
        });
    }
}

// ---------------------------------------------------------------- operators

OpGroupElement op_element(const OperatorId& op, Rng& rng) {
    const int n = op.n, m = op.m;
    switch (op.tag) {
        case OpTag::DELTA_N: return random_symplectic(n, rng);
        case OpTag::DELTA_STAR: return to_disk_group(random_jacobi(n, 1, rng));
        case OpTag::DELTA_DISK_NM:
        case OpTag::S1:
        case OpTag::S2: return to_disk_group(random_jacobi(n, m, rng));
        case OpTag::M_SING: {
            GLnmElement a = random_glnm(n, m, rng);
            a.h = HeisenbergElement(Mat::Zero(m, n), a.h.mu, Mat::Zero(m, m));
            return a;
        }
        case OpTag::B_J: return random_glnm(n, 0, rng);
        case OpTag::DELTA_OMEGA: return lattice_translation(m, n, rng);
        default: return random_jacobi(n, m, rng);
    }
}

Vec op_point(const OperatorId& op, Rng& rng) {
    const int n = op.n, m = op.m;
    switch (op_chart(op)) {
        case Chart::H: return siegel_to_chart(random_siegel(n, rng));
        case Chart::D: return disk_to_chart(random_disk(n, rng));
        case Chart::HJ: return jacobi_to_chart(random_jacobi_point(n, m, rng));
        case Chart::DJ: return disk_jacobi_to_chart(random_disk_jacobi_point(n, m, rng));
        case Chart::PV: return pv_to_chart(random_siegel(n, rng).Y(), random_matrix(m, n, rng, 1.0));
        case Chart::A: return torus_chart(random_cmat(m, n, rng, 1.0));
    }
    return {};
}

std::string op_label(const OperatorId& op) {
    std::string s = op_name(op.tag);
    if (op.tag == OpTag::B_J) s = "B_" + std::to_string(op.j);
    return s + " " + shape(op.n, op.m);
}

struct OpCase {
    OperatorId op;
    bool asserted = true;  // false: reported as a diagnostic only
};

std::vector<OpCase> operator_cases(Rng& rng) {
    std::vector<OpCase> v;
    for (int n : {1, 2}) {
        v.push_back({OperatorId::make(OpTag::DELTA_N, n)});
        v.push_back({OperatorId::make(OpTag::DELTA_STAR, n)});
    }
    for (auto [n, m] : kShapes) {
        const bool one = n == 1;
        for (OpTag t : {OpTag::DELTA_NM, OpTag::M2, OpTag::DELTA_DISK_NM, OpTag::S2})
            v.push_back({OperatorId::make(t, n, m), one});
        for (OpTag t : {OpTag::M1, OpTag::S1}) v.push_back({OperatorId::make(t, n, m)});
    }
    for (OpTag t : {OpTag::DELTA_11, OpTag::D, OpTag::PSI, OpTag::D1, OpTag::D2})
        v.push_back({OperatorId::make(t, 1, 1)});
    Mat one = Mat::Identity(1, 1), two(2, 2);
    two << 1, 0.5, 0.5, 1;
    v.push_back({OperatorId::m_sing(1, JacobiIndexMatrix(one))});
    v.push_back({OperatorId::m_sing(2, JacobiIndexMatrix(one))});
    v.push_back({OperatorId::m_sing(1, JacobiIndexMatrix(two))});
    for (int n = 1; n <= 3; ++n)
        for (int j = 1; j <= n; ++j) v.push_back({OperatorId::b_j(n, j)});
    for (auto [n, m] : std::vector<std::pair<int, int>>{{1, 1}, {2, 1}, {1, 2}})
        v.push_back({OperatorId::delta_omega(random_siegel(n, rng), m)});
    return v;
}

void suite_laplacian_invariance(Runner& r) {
    for (const auto& oc : operator_cases(r.rng)) {
        const OperatorId& op = oc.op;
        const double tol = op.tag == OpTag::DELTA_OMEGA ? 1e-8 : op_order(op) >= 3 && op.tag != OpTag::B_J ? 1e-4 : 1e-5;
        const std::string label = "invariance " + op_label(op);
        if (!oc.asserted) {
            double worst = 0.0;
            for (int k = 0; k < 3; ++k) {
                Vec x = op_point(op, r.rng);
                ScalarField f = exp_linear(random_coef(int(x.size()), r.rng));
                worst = std::max(worst, invariance_residual(op, op_element(op, r.rng), f, x, r.cfg().fd));
            }
            r.diag(label + " (closed form not invariant)", worst);
            continue;
        }
        r.le(label, tol, [&](Batch& b) {
            b.digest().add(op.omega);
            for (int k = 0; k < 10; ++k) {
                Vec x = op_point(op, r.rng);
                CVec c = random_coef(int(x.size()), r.rng);
                OpGroupElement g = op_element(op, r.rng);
                b.digest().add(x).add(c);
                b.le(invariance_residual(op, g, exp_linear(c), x, r.cfg().fd));
            }
        });
    }
    for (auto [n, m] : kShapes) {
        const std::string s = shape(n, m);
        r.le("M1 + M2 = DELTA_NM " + s, 1e-10, [&](Batch& b) {
            auto full = OperatorId::make(OpTag::DELTA_NM, n, m), a = OperatorId::make(OpTag::M1, n, m),
                 c = OperatorId::make(OpTag::M2, n, m);
            for (int k = 0; k < 10; ++k) {
                Vec x = jacobi_to_chart(random_jacobi_point(n, m, r.rng));
                ScalarField f = exp_linear(random_coef(int(x.size()), r.rng));
                b.digest().add(x);
                cplx lhs = apply(a, f, x) + apply(c, f, x), rhs = apply(full, f, x);
                b.le(rel_diff(lhs, rhs, std::abs(f.eval(x))));
            }
        });
        r.le("S1 + S2 = DELTA_DISK_NM " + s, 1e-10, [&](Batch& b) {
            auto full = OperatorId::make(OpTag::DELTA_DISK_NM, n, m), a = OperatorId::make(OpTag::S1, n, m),
                 c = OperatorId::make(OpTag::S2, n, m);
            for (int k = 0; k < 10; ++k) {
                Vec x = disk_jacobi_to_chart(random_disk_jacobi_point(n, m, r.rng));
                ScalarField f = exp_linear(random_coef(int(x.size()), r.rng));
                b.digest().add(x);
                cplx lhs = apply(a, f, x) + apply(c, f, x), rhs = apply(full, f, x);
                b.le(rel_diff(lhs, rhs, std::abs(f.eval(x))));
            }
        });
    }
    r.le("DELTA_N at n=1 is y^2(dxx + dyy)", 1e-8, [&](Batch& b) {
        auto op = OperatorId::make(OpTag::DELTA_N, 1);
        for (int k = 0; k < 10; ++k) {
            Vec x = siegel_to_chart(random_siegel(1, r.rng));
            ScalarField f = exp_linear(random_coef(2, r.rng, 1.0));
            b.digest().add(x);
            cplx ref = x[1] * x[1] * (derive(f, x, {2, 0}) + derive(f, x, {0, 2}));
            b.le(rel_diff(apply(op, f, x), ref, std::abs(f.eval(x))));
        }
    });

    // Ratio of the numeric Laplace-Beltrami operator of the metric to the closed-form Laplacian.
    auto lb_constant = [&](int n, int m, Batch* b) {
        const OperatorId op = n == 1 && m == 1 ? OperatorId::make(OpTag::DELTA_11) : OperatorId::make(OpTag::DELTA_NM, n, m);
        std::vector<cplx> ratios;
        for (int k = 0; k < 10; ++k) {
            Vec x = jacobi_to_chart(random_jacobi_point(n, m, r.rng));
            CVec c = random_coef(int(x.size()), r.rng, 1.0);
            ScalarField f = exp_linear(c);
            if (b) b->digest().add(x).add(c);
            ratios.push_back(laplace_beltrami(MetricId::jacobi(n, m), f, x, r.cfg().fd) / apply(op, f, x, r.cfg().fd));
        }
        cplx mean = 0.0;
        for (cplx q : ratios) mean += q;
        mean /= double(ratios.size());
        double spread = 0.0;
        for (cplx q : ratios) spread = std::max(spread, std::abs(q - mean));
        return std::pair{mean, spread};
    };
    r.le("Laplace-Beltrami constant spread (1,1)", 1e-4, [&](Batch& b) {
        auto [mean, spread] = lb_constant(1, 1, &b);
        r.diag("Laplace-Beltrami constant (1,1)", json::array({mean.real(), mean.imag()}));
        b.le(spread);
    });
    for (auto [n, m] : std::vector<std::pair<int, int>>{{1, 2}, {2, 1}}) {
        auto [mean, spread] = lb_constant(n, m, nullptr);
        r.diag("Laplace-Beltrami constant " + shape(n, m),
               json{{"constant", json::array({mean.real(), mean.imag()})}, {"spread", spread}});
    }
}

// ---------------------------------------------------------------- cayley

void suite_cayley(Runner& r) {
    for (int n = 1; n <= 3; ++n) {
        r.le("Cayley round trip n=" + std::to_string(n), 1e-12, [&](Batch& b) {
            for (int k = 0; k < 1000; ++k) {
                DiskPoint w = random_disk(n, r.rng);
                SiegelPoint om = random_siegel(n, r.rng);
                b.digest().add(w.W()).add(om.omega());
                b.le(max_norm(CMat(cayley_inv(cayley(w)).W() - w.W())));
                b.le(max_norm(CMat(cayley(cayley_inv(om)).omega() - om.omega())));
            }
        });
    }
    for (auto [n, m] : std::vector<std::pair<int, int>>{{1, 1}, {2, 2}}) {
        const std::string s = shape(n, m);
        r.le("partial Cayley round trip " + s, 1e-12, [&](Batch& b) {
            for (int k = 0; k < 1000; ++k) {
                DiskJacobiPoint p = random_disk_jacobi_point(n, m, r.rng);
                JacobiPoint q = random_jacobi_point(n, m, r.rng);
                b.digest().add(p.W()).add(p.eta()).add(q.omega()).add(q.Z());
                const DiskJacobiPoint p2 = partial_cayley_inv(partial_cayley(p));
                const JacobiPoint q2 = partial_cayley(partial_cayley_inv(q));
                b.le(std::max(max_norm(CMat(p2.W() - p.W())), max_norm(CMat(p2.eta() - p.eta()))));
                b.le(std::max(max_norm(CMat(q2.omega() - q.omega())), max_norm(CMat(q2.Z() - q.Z()))));
            }
        });
        r.le("partial Cayley intertwines the actions " + s, 1e-9, [&](Batch& b) {
            for (int k = 0; k < 100; ++k) {
                JacobiElement g = random_jacobi(n, m, r.rng);
                DiskJacobiPoint p = random_disk_jacobi_point(n, m, r.rng);
                b.digest().add(g).add(p.W()).add(p.eta());
                const JacobiPoint lhs = jacobi_action(g, partial_cayley(p));
                const JacobiPoint rhs = partial_cayley(disk_jacobi_action(to_disk_group(g), p));
                b.le(std::max(max_norm(CMat(lhs.omega() - rhs.omega())), max_norm(CMat(lhs.Z() - rhs.Z()))));
            }
        });
        r.le("Cayley intertwines Sp and the disk group n=" + std::to_string(n), 1e-9, [&](Batch& b) {
            for (int k = 0; k < 100; ++k) {
                JacobiElement g = random_jacobi(n, 1, r.rng);
                DiskPoint w = random_disk(n, r.rng);
                b.digest().add(g).add(w.W());
                b.le(max_norm(CMat(sp_action(g.M, cayley(w)).omega() - cayley(disk_action(to_disk_group(g), w)).omega())));
            }
        });
    }
}

// ---------------------------------------------------------------- curvature

void suite_curvature(Runner& r) {
    for (const MetricId& id : {MetricId::h11(), MetricId::jacobi(1, 1)}) {
        r.le("scalar curvature " + metric_name(id) + " = -3", 1e-3, [&](Batch& b) {
            for (int k = 0; k < 8; ++k) {
                Vec x = jacobi_to_chart(random_jacobi_point(1, 1, r.rng));
                b.digest().add(x);
                CurvatureResult c = scalar_curvature(id, x);
                b.le(std::abs(c.scalar + 3.0));
                for (const auto& w : c.warnings) r.diag("curvature warning", w);
            }
        });
    }
    Vec x = siegel_to_chart(random_siegel(1, r.rng));
    r.diag("scalar curvature SIEGEL(1)", scalar_curvature(MetricId::siegel(1), x).scalar);
}

// ---------------------------------------------------------------- reduction

// Classical reduction of a point of the upper half plane into x in (-1/2, 1/2], |tau| >= 1.
cplx classical_reduce(cplx tau) {
    for (int it = 0; it < 10000; ++it) {
        tau -= std::ceil(tau.real() - 0.5);
        if (std::norm(tau) >= 1.0) return tau;
        tau = -1.0 / tau;
    }
    throw NumericError("classical reduction did not terminate");
}

double sym_margin(const SymplecticMatrix& g) {
    const Mat id = Mat::Identity(2 * g.n(), 2 * g.n());
    return std::min(max_norm(Mat(g.mat() - id)), max_norm(Mat(g.mat() + id)));
}

double failed_conditions(const std::vector<ConditionReport>& cs) {
    double f = 0.0;
    for (const auto& c : cs) f += !c.holds;
    return f;
}

double history_drop(const std::vector<double>& h) {
    double worst = 0.0;
    for (std::size_t k = 1; k < h.size(); ++k) worst = std::max(worst, (h[k - 1] - h[k]) / h[k - 1]);
    return worst;
}

// Brute-force search over unimodular matrices with bounded entries for a Minkowski-reduced form.
std::optional<Mat> brute_force_minkowski(const Mat& y, int bound) {
    for (int a = -bound; a <= bound; ++a)
        for (int b = -bound; b <= bound; ++b)
            for (int c = -bound; c <= bound; ++c)
                for (int d = -bound; d <= bound; ++d) {
                    if (std::abs(a * d - b * c) != 1) continue;
                    Mat u(2, 2);
                    u << a, b, c, d;
                    Mat f = u * y * u.transpose();
                    if (is_minkowski_reduced(f, bound).reduced) return f;
                }
    return std::nullopt;
}

void suite_reduction(Runner& r) {
    const int bound = r.cfg().enumeration_bound;
    std::vector<std::pair<SiegelPoint, SiegelResult>> n1;
    int skipped = 0;
    r.le("n=1 agrees with the classical reduction", 1e-10, [&](Batch& b) {
        for (int k = 0; k < 1000; ++k) {
            const double x = uniform(r.rng, -5.0, 5.0), y = std::exp(uniform(r.rng, std::log(0.01), std::log(3.0)));
            const SiegelPoint p(CMat::Constant(1, 1, cplx(x, y)));
            b.digest().add(p.omega());
            const cplx ref = classical_reduce(cplx(x, y));
            if (std::abs(std::abs(ref.real()) - 0.5) < 1e-6 || std::abs(ref) < 1.0 + 1e-6) {
                ++skipped;
                continue;
            }
            SiegelResult s = siegel_reduce(p);
            b.le(std::abs(s.reduced.omega()(0, 0) - ref));
            n1.push_back({p, s});
        }
    });
    r.diag("n=1 boundary points skipped", skipped);
    r.le("n=1 round trip", 1e-10, [&](Batch& b) {
        for (const auto& [p, s] : n1) b.le(rel(sp_action(s.gamma, p).omega(), s.reduced.omega()));
    });
    r.le("n=1 idempotence", 1e-10, [&](Batch& b) {
        for (const auto& [p, s] : n1) {
            SiegelResult again = siegel_reduce(s.reduced);
            b.le(std::max(rel(again.reduced.omega(), s.reduced.omega()), sym_margin(again.gamma)));
        }
    });
    r.le("n=1 det Im never decreases", 1e-12, [&](Batch& b) {
        for (const auto& [p, s] : n1) b.le(history_drop(s.det_im_history));
    });

    r.le("n=2 reduction", 1e-10, [&](Batch& b) {
        double failed = 0.0, drop = 0.0;
        for (int k = 0; k < 100; ++k) {
            Mat x = random_symmetric(2, r.rng, 3.0), a = random_matrix(2, 2, r.rng, 1.0);
            const SiegelPoint p(x, Mat(0.3 * a * a.transpose() + 0.05 * Mat::Identity(2, 2)));
            b.digest().add(p.omega());
            SiegelResult s = siegel_reduce(p);
            b.le(rel(sp_action(s.gamma, p).omega(), s.reduced.omega()));
            SiegelResult again = siegel_reduce(s.reduced);
            b.le(rel(again.reduced.omega(), s.reduced.omega()));
            failed += failed_conditions(is_siegel_reduced(s.reduced, bound).conditions);
            drop = std::max(drop, history_drop(s.det_im_history));
        }
        r.diag("n=2 failed reduction conditions", failed);
        r.diag("n=2 largest det Im drop", drop);
        b.le(failed);
        b.le(drop);
    });

    for (auto [n, m] : kShapes) {
        r.le("Jacobi reduction lands in the fundamental domain " + shape(n, m), 1e-10, [&](Batch& b) {
            for (int k = 0; k < 50; ++k) {
                Mat a = random_matrix(n, n, r.rng, 1.0);
                const SiegelPoint om(random_symmetric(n, r.rng, 3.0), Mat(0.5 * a * a.transpose() + 0.1 * Mat::Identity(n, n)));
                const JacobiPoint p(om, random_cmat(m, n, r.rng, 4.0));
                b.digest().add(p.omega()).add(p.Z());
                JacobiReduceResult j = jacobi_reduce(p);
                b.le(point_diff(jacobi_action(j.gamma, p), j.reduced));
                b.le(failed_conditions(j.conditions));
                auto [lam, mu] = lattice_coordinates(j.reduced.siegel(), j.reduced.Z());
                for (double c : {lam.minCoeff(), mu.minCoeff()}) b.le(std::max(0.0, -c - 1e-12));
                for (double c : {lam.maxCoeff(), mu.maxCoeff()}) b.le(c < 1.0 ? 0.0 : c);
                JacobiReduceResult again = jacobi_reduce(j.reduced);
                b.le(point_diff(again.reduced, j.reduced));
            }
        });
    }

    r.le("Minkowski reduction example", 1e-12, [&](Batch& b) {
        Mat y(2, 2), want(2, 2);
        y << 5, 4, 4, 5;
        want << 2, 1, 1, 5;
        MinkowskiResult mr = minkowski_reduce(y, bound);
        b.le(max_norm(Mat(mr.reduced - want)));
        Mat bad(2, 2);
        bad << 2, -0.5, -0.5, 3;
        b.le(is_minkowski_reduced(bad, bound).reduced ? 1.0 : 0.0);
    });
    r.le("Minkowski reduction vs brute-force unimodular search", 1e-9, [&](Batch& b) {
        int missing = 0;
        for (int k = 0; k < 50; ++k) {
            Mat a = random_matrix(2, 2, r.rng, 2.0);
            Mat y = a * a.transpose() + 0.05 * Mat::Identity(2, 2);
            b.digest().add(y);
            MinkowskiResult mr = minkowski_reduce(y, bound);
            const Mat U = mr.U.cast<double>();
            b.le(std::abs(std::abs(det(U)) - 1.0));
            b.le(rel(Mat(U * y * U.transpose()), mr.reduced));
            b.le(failed_conditions(mr.conditions));
            auto ref = brute_force_minkowski(y, 4);
            if (!ref) {
                ++missing;
                continue;
            }
            b.le(std::max({std::abs(mr.reduced(0, 0) - (*ref)(0, 0)), std::abs(mr.reduced(1, 1) - (*ref)(1, 1)),
                           std::abs(std::abs(mr.reduced(0, 1)) - std::abs((*ref)(0, 1)))}) /
                 std::max(1.0, max_norm(*ref)));
        }
        r.diag("brute-force search found no reduced form (entries beyond 4)", missing);
    });
    r.le("Minkowski reduction n=3", 1e-9, [&](Batch& b) {
        for (int k = 0; k < 30; ++k) {
            Mat a = random_matrix(3, 3, r.rng, 2.0);
            Mat y = a * a.transpose() + 0.05 * Mat::Identity(3, 3);
            b.digest().add(y);
            MinkowskiResult mr = minkowski_reduce(y, bound);
            const Mat U = mr.U.cast<double>();
            b.le(std::abs(std::abs(det(U)) - 1.0));
            b.le(rel(Mat(U * y * U.transpose()), mr.reduced));
            b.le(failed_conditions(is_minkowski_reduced(mr.reduced, bound).conditions));
        }
    });
}

// ---------------------------------------------------------------- volume-formula

void suite_volume_formula(Runner& r) {
    const double pi = kPi;
    const std::vector<std::pair<double, std::string>> want = {
        {pi / 3.0, "1/3"},
        {std::pow(pi, 3) / 270.0, "1/270"},
        {std::pow(pi, 6) / 127575.0, "1/127575"},
        {std::pow(pi, 10) / 200930625.0, "1/200930625"},
    };
    for (int n = 1; n <= 4; ++n) {
        r.le("volume n=" + std::to_string(n), 1e-12, [&](Batch& b) {
            b.digest().add(double(n));
            VolumeResult v = siegel_volume(n);
            const auto& [value, rational] = want[n - 1];
            double err = std::abs(v.value - value) / value;
            if (v.rational != rational) err = std::max(err, 1.0);
            r.diag("volume n=" + std::to_string(n), v.rational + " pi^" + std::to_string(v.pi_power));
            b.le(err);
        });
    }
}

// ---------------------------------------------------------------- eigenfunctions

void suite_eigenfunctions(Runner& r) {
    const std::vector<cplx> ss = {1.3, 2.5, cplx(0.5, 14.134725)};
    for (const auto& e : eigen_catalog()) {
        for (cplx s : ss) {
            std::ostringstream label;
            label << "item " << e.item << " " << e.id << " s=" << s.real();
            if (s.imag() != 0.0) label << "+" << s.imag() << "i";
            r.le(label.str(), 1e-6, [&](Batch& b) {
                std::vector<Vec> pts;
                for (int k = 0; k < 10; ++k) pts.push_back(jacobi_to_chart(random_jacobi_point(1, 1, r.rng)));
                for (const auto& p : pts) b.digest().add(p);
                b.le(catalog_eigen_residual(e, s, 1.0, pts));
            });
        }
    }
}

// ---------------------------------------------------------------- commutator

void suite_commutator(Runner& r) {
    const DeriveOptions& fd = r.cfg().fd;
    r.le("constant field", 1e-12, [&](Batch& b) {
        Vec x(4);
        x << 0.0, 1.0, 0.0, 0.3;
        b.le(commutator_check_DPsi(monomial(4, {}, 2.0), x, fd));
    });
    r.le("exp(x+2y+3u+4v) at (0,1,0,0.3)", 1e-4, [&](Batch& b) {
        Vec x(4);
        x << 0.0, 1.0, 0.0, 0.3;
        CVec c(4);
        c << 1.0, 2.0, 3.0, 4.0;
        b.le(commutator_check_DPsi(exp_linear(c), x, fd));
    });
    CVec c(4);
    c << cplx(0.3, 0.1), cplx(-0.2, 0.4), cplx(0.5, -0.3), cplx(0.1, 0.2);
    const std::vector<ScalarField> fields = {
        exp_linear(c, "exp"),
        monomial(4, {{1, 2.0}, {3, 1.0}}, 1.0, "y^2 v"),
        monomial(4, {{0, 1.0}, {1, 1.5}, {2, 2.0}, {3, 1.0}}, 1.0, "x y^1.5 u^2 v"),
    };
    for (const auto& f : fields) {
        r.le("identity on " + f.name, 1e-4, [&](Batch& b) {
            for (int k = 0; k < 10; ++k) {
                Vec x = jacobi_to_chart(random_jacobi_point(1, 1, r.rng));
                b.digest().add(x);
                b.le(commutator_check_DPsi(f, x, fd));
            }
        });
    }
    r.ge("D and Psi do not commute", 1e-3, [&](Batch& b) {
        for (int k = 0; k < 10; ++k) {
            Vec x = jacobi_to_chart(random_jacobi_point(1, 1, r.rng));
            b.digest().add(x);
            const ScalarField& f = fields[0];
            b.ge(std::abs(commutator_DPsi().freeze(x).apply(f, x, fd)) / std::abs(f.eval(x)));
        }
    });
}

// ---------------------------------------------------------------- fourier-ode

ScalarField whittaker_field(cplx s, double a) {
    SeparableTerm t;
    t.factors.push_back({0, product({pow_exp(0.5), bessel_k(s - 0.5, a)})});
    return separable_field(2, {t}, "whittaker");
}

void suite_ode(Runner& r) {
    const double a = 2.0 * kPi;
    for (double s : {1.3, 2.5}) {
        for (double y : {0.5, 1.0, 2.0}) {
            std::ostringstream label;
            label << "Whittaker solution s=" << s << " y=" << y;
            r.le(label.str(), 1e-6, [&](Batch& b) {
                b.digest().add(s).add(y);
                ScalarField F = whittaker_field(s, a);
                for (double v : {0.0, 0.7}) b.le(fourier_ode_residual(F, a, 0.0, s * (s - 1.0), y, v, r.cfg().fd));
            });
        }
    }
    r.diag("negative control F=y, lambda=0 at y=1",
           fourier_ode_residual(monomial(2, {{0, 1.0}}), a, 0.0, 0.0, 1.0, 0.0, r.cfg().fd));
}

// ---------------------------------------------------------------- spectral

FourierIndex random_index(int m, int n, Rng& rng, int bound) {
    return {random_int_matrix(m, n, rng, bound).cast<long long>(), random_int_matrix(m, n, rng, bound).cast<long long>()};
}

void suite_spectral(Runner& r) {
    const std::vector<std::pair<int, int>> mn = {{1, 1}, {1, 2}, {2, 1}};
    for (auto [m, n] : mn) {
        const std::string s = "(m,n)=" + shape(m, n);
        const LatticeSpec L{random_siegel(n, r.rng), m};
        r.le("Riemann conditions " + s, 1e-12, [&](Batch& b) {
            b.digest().add(L.omega.omega());
            RiemannCheck rc = riemann_check(L.omega);
            b.le(rc.residual);
            b.le(rc.margin > 0.0 ? 0.0 : 1.0);
        });
        r.le("unit character " + s, 1e-12, [&](Batch& b) {
            for (int k = 0; k < 100; ++k) {
                FourierIndex idx = random_index(m, n, r.rng, 2);
                CMat z = random_cmat(m, n, r.rng, 2.0);
                b.digest().add(idx.A).add(idx.B).add(z);
                b.le(std::abs(std::abs(fourier_eval(L, idx, z)) - 1.0));
            }
        });
        r.le("lattice periodicity " + s, 1e-12, [&](Batch& b) {
            for (int k = 0; k < 100; ++k) {
                FourierIndex idx = random_index(m, n, r.rng, 2);
                CMat z = random_cmat(m, n, r.rng, 2.0);
                Mat l = random_int_matrix(m, n, r.rng, 3), u = random_int_matrix(m, n, r.rng, 3);
                b.digest().add(idx.A).add(idx.B).add(z).add(l).add(u);
                b.le(std::abs(fourier_eval(L, idx, z + from_lattice(L, l, u)) - fourier_eval(L, idx, z)));
            }
        });
        r.le("eigenvalue independent of Z " + s, 1e-6, [&](Batch& b) {
            for (int k = 0; k < 10; ++k) {
                FourierIndex idx = random_index(m, n, r.rng, 2);
                std::vector<CMat> zs;
                for (int j = 0; j < 10; ++j) zs.push_back(random_cmat(m, n, r.rng, 2.0));
                b.digest().add(idx.A).add(idx.B);
                EigenEstimate e = basis_eigen_residual(L, idx, zs);
                const double scale = std::max(1.0, std::abs(e.eigenvalue));
                b.le(e.spread / scale);
                b.le(std::abs(e.eigenvalue - e.closed_form) / scale);
            }
        });
    }
    auto gram_case = [&](int m, int n, int box) {
        const LatticeSpec L{random_siegel(n, r.rng), m};
        const TorusGrid grid{std::max(r.cfg().grid, 2 * box + 1)};
        r.le("orthonormality (m,n)=" + shape(m, n) + " box " + std::to_string(box), 1e-8, [&](Batch& b) {
            b.digest().add(L.omega.omega()).add(double(grid.N));
            const auto idx = index_box(m, n, box);
            const CMat g = torus_gram(L, idx, grid);
            b.le(max_norm(CMat(g - CMat::Identity(g.rows(), g.cols()))));
        });
    };
    gram_case(1, 1, 2);
    gram_case(1, 2, 1);
    r.le("aliasing guard", 0.0, [&](Batch& b) {
        const LatticeSpec L{random_siegel(1, r.rng), 1};
        FourierIndex idx{IMat::Constant(1, 1, 3), IMat::Constant(1, 1, 0)};
        try {
            torus_inner_product(L, idx, idx, TorusGrid{4});
            b.le(1.0);
        } catch (const InputError&) {
            b.le(0.0);
        }
    });
    r.le("K-Bessel half-integer closed forms", 1e-10, [&](Batch& b) {
        for (double z : {0.05, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 50.0}) {
            const double k12 = std::sqrt(kPi / (2.0 * z)) * std::exp(-z);
            const std::vector<std::pair<double, double>> ref = {
                {0.5, k12}, {1.5, k12 * (1.0 + 1.0 / z)}, {2.5, k12 * (1.0 + 3.0 / z + 3.0 / (z * z))}};
            for (auto [nu, want] : ref) {
                b.digest().add(nu).add(z);
                b.le(std::abs(k_bessel(nu, z) - want) / want);
                b.le(std::abs(k_bessel(-nu, z) - want) / want);
            }
        }
    });
}

// ---------------------------------------------------------------- automorphy

void suite_automorphy(Runner& r) {
    Mat two(2, 2);
    two << 1, 0.5, 0.5, 2;
    for (auto [n, m] : kShapes) {
        const JacobiIndexMatrix index(m == 1 ? Mat(Mat::Identity(1, 1)) : two);
        const int k = 2;
        const std::string s = shape(n, m);
        r.le("cocycle " + s, 1e-9, [&](Batch& b) {
            for (int t = 0; t < 100; ++t) {
                JacobiElement g = random_jacobi(n, m, r.rng), h = random_jacobi(n, m, r.rng);
                JacobiPoint p = random_jacobi_point(n, m, r.rng);
                b.digest().add(g).add(h).add(p.omega()).add(p.Z());
                cplx lhs = automorphic_factor(k, index, jacobi_mul(g, h), p);
                cplx rhs = automorphic_factor(k, index, g, jacobi_action(h, p)) * automorphic_factor(k, index, h, p);
                b.le(std::abs(lhs - rhs) / std::abs(lhs));
            }
        });
        r.le("slash is a right action " + s, 1e-9, [&](Batch& b) {
            for (int t = 0; t < 20; ++t) {
                JacobiElement g = random_jacobi(n, m, r.rng), h = random_jacobi(n, m, r.rng);
                JacobiPoint p = random_jacobi_point(n, m, r.rng);
                Vec x = jacobi_to_chart(p);
                ScalarField f = exp_linear(random_coef(int(x.size()), r.rng));
                b.digest().add(g).add(h).add(x);
                cplx lhs = slash(k, index, h, slash(k, index, g, f, n, m), n, m).eval(x);
                cplx rhs = slash(k, index, jacobi_mul(g, h), f, n, m).eval(x);
                b.le(std::abs(lhs - rhs) / std::abs(rhs));
            }
        });
        r.le("central elements and identity " + s, 1e-12, [&](Batch& b) {
            for (int t = 0; t < 20; ++t) {
                Mat kap = random_symmetric(m, r.rng, 1.0);
                JacobiElement g{SymplecticMatrix::identity(n), HeisenbergElement(Mat::Zero(m, n), Mat::Zero(m, n), kap)};
                JacobiPoint p = random_jacobi_point(n, m, r.rng);
                b.digest().add(kap).add(p.omega()).add(p.Z());
                cplx want = std::exp(2.0 * kPi * kI * (index.matrix() * kap).trace());
                b.le(std::abs(automorphic_factor(k, index, g, p) - want));
                b.le(std::abs(automorphic_factor(k, index, JacobiElement::identity(n, m), p) - 1.0));
            }
        });
    }
}

json compare_name(Compare c) { return c == Compare::LE ? "le" : "ge"; }

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {
        "group-axioms", "actions",   "metric-invariance", "volume-element", "laplacian-invariance",
        "cayley",       "curvature", "reduction",         "volume-formula", "eigenfunctions",
        "commutator",   "fourier-ode",   "spectral",          "automorphy"};
    return names;
}

SuiteReport run_suite(const std::string& name, const Config& cfg) {
    static const std::map<std::string, std::function<void(Runner&)>> table = {
        {"group-axioms", suite_group_axioms},
        {"actions", suite_actions},
        {"metric-invariance", suite_metric_invariance},
        {"volume-element", suite_volume_element},
        {"laplacian-invariance", suite_laplacian_invariance},
        {"cayley", suite_cayley},
        {"curvature", suite_curvature},
        {"reduction", suite_reduction},
        {"volume-formula", suite_volume_formula},
        {"eigenfunctions", suite_eigenfunctions},
        {"commutator", suite_commutator},
        {"fourier-ode", suite_ode},
        {"spectral", suite_spectral},
        {"automorphy", suite_automorphy},
    };
    auto it = table.find(name);
    if (it == table.end()) throw InputError("unknown suite '" + name + "'");
    const auto start = std::chrono::steady_clock::now();
    Runner r(name, cfg);
    it->second(r);
    SuiteReport rep = r.finish();
    if (cfg.timing)
        rep.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

json report_json(const SuiteReport& r) {
    json recs = json::array();
    for (const auto& c : r.records)
        recs.push_back({{"label", c.label},
                        {"digest", c.digest},
                        {"residual", number_or_null(c.residual)},
                        {"tolerance", c.tolerance},
                        {"compare", compare_name(c.compare)},
                        {"samples", c.samples},
                        {"pass", c.pass}});
    json diags = json::object();
    for (const auto& [k, v] : r.diagnostics) diags[k] = v;
    json j = {{"suite", r.suite},
              {"cases", r.cases},
              {"passed", r.passed},
              {"max_residual", r.max_residual},
              {"seed", r.seed},
              {"records", recs},
              {"diagnostics", diags}};
    if (r.wall_ms) j["wall_ms"] = *r.wall_ms;
    return j;
}

std::string report_table(const SuiteReport& r) {
    std::ostringstream out;
    out << r.suite << ": " << r.passed << "/" << r.cases << " passed, max residual " << std::setprecision(3)
        << r.max_residual << ", seed " << r.seed;
    if (r.wall_ms) out << ", " << std::fixed << std::setprecision(1) << *r.wall_ms << " ms" << std::defaultfloat;
    out << "\n";
    for (const auto& c : r.records) {
        out << "  " << (c.pass ? "PASS" : "FAIL") << "  " << std::left << std::setw(56) << c.label << std::right
            << std::setw(11) << std::setprecision(3) << c.residual << (c.compare == Compare::LE ? " <= " : " >= ")
            << std::setprecision(3) << c.tolerance << "\n";
    }
    for (const auto& [k, v] : r.diagnostics) out << "  note  " << k << ": " << v.dump() << "\n";
    return out.str();
}

Config load_config(const json& j) {
    Config c;
    if (!j.is_object()) throw InputError("config must be a JSON object");
    for (const auto& [key, v] : j.items()) {
        if (key == "seed") {
            if (!v.is_number_unsigned()) throw InputError("config: seed must be a non-negative integer");
            c.seed = v.get<std::uint64_t>();
        } else if (key == "format") {
            c.format = v.get<std::string>();
            if (c.format != "json" && c.format != "table") throw InputError("config: format must be json or table");
        } else if (key == "timing") {
            c.timing = v.get<bool>();
        } else if (key == "tolerances") {
            for (const auto& [suite, t] : v.items()) {
                if (std::find(suite_names().begin(), suite_names().end(), suite) == suite_names().end())
                    throw InputError("config: unknown suite '" + suite + "' in tolerances");
                if (!t.is_number() || !(t.get<double>() > 0.0))
                    throw InputError("config: tolerance for " + suite + " must be positive");
                c.suite_tol[suite] = t.get<double>();
            }
        } else if (key == "fd_steps") {
            for (const auto& [name, h] : v.items()) {
                if (!h.is_number() || !(h.get<double>() > 0.0)) throw InputError("config: FD steps must be positive");
                if (name == "low") c.fd.step_low = h.get<double>();
                else if (name == "third") c.fd.step_third = h.get<double>();
                else if (name == "fourth") c.fd.step_fourth = h.get<double>();
                else throw InputError("config: unknown FD step '" + name + "'");
            }
        } else if (key == "enumeration_bound") {
            c.enumeration_bound = v.get<int>();
            if (c.enumeration_bound < 1) throw InputError("config: enumeration_bound must be >= 1");
        } else if (key == "grid") {
            c.grid = v.get<int>();
            if (c.grid < 1) throw InputError("config: grid must be >= 1");
        } else {
            throw InputError("config: unknown key '" + key + "'");
        }
    }
    return c;
}

Config load_config_file(const std::string& path) { return load_config(read_json_file(path)); }

json config_json(const Config& c) {
    json tol = json::object();
    for (const auto& [k, v] : c.suite_tol) tol[k] = v;
    return {{"seed", c.seed},
            {"format", c.format},
            {"timing", c.timing},
            {"tolerances", tol},
            {"fd_steps", {{"low", c.fd.step_low}, {"third", c.fd.step_third}, {"fourth", c.fd.step_fourth}}},
            {"enumeration_bound", c.enumeration_bound},
            {"grid", c.grid}};
}

}  // namespace sjl
