#pragma once

#include <optional>
#include <string>
#include <variant>

#include "sjl/diffop.hpp"
#include "sjl/geometry.hpp"

namespace sjl {

enum class OpTag {
    DELTA_N,
    DELTA_STAR,
    DELTA_NM,
    DELTA_DISK_NM,
    DELTA_11,
    M1,
    M2,
    S1,
    S2,
    D,
    PSI,
    D1,
    D2,
    M_SING,
    B_J,
    DELTA_OMEGA,
};

std::string op_name(OpTag t);
OpTag op_from_name(const std::string& s);

// Symmetric half-integral m×m matrix: diagonal integral, 2M integral, positive semi-definite.
class JacobiIndexMatrix {
public:
    explicit JacobiIndexMatrix(const Mat& m, bool require_definite = false);
    const Mat& matrix() const { return m_; }
    int m() const { return static_cast<int>(m_.rows()); }

private:
    Mat m_;
};

struct OperatorId {
    OpTag tag = OpTag::DELTA_11;
    int n = 1;
    int m = 1;
    int j = 1;                               // B_J power
    std::optional<JacobiIndexMatrix> index;  // M_SING
    CMat omega;                              // DELTA_OMEGA

    static OperatorId make(OpTag t, int n = 1, int m = 1);
    static OperatorId b_j(int n, int j);
    static OperatorId m_sing(int n, const JacobiIndexMatrix& idx);
    static OperatorId delta_omega(const SiegelPoint& om, int m);
};

Chart op_chart(const OperatorId& op);
int op_order(const OperatorId& op);
std::string op_group(const OperatorId& op);

// The operator frozen at chart point x.
Symbol op_symbol(const OperatorId& op, const Vec& x);
// Polynomial-coefficient form, available for DELTA_11, D, PSI, D1, D2, B_J and the commutator.
std::optional<PolyOp> op_poly(const OperatorId& op);
PolyOp commutator_DPsi();
PolyOp commutator_rhs();

cplx apply(const OperatorId& op, const ScalarField& f, const Vec& x, const DeriveOptions& opt = {},
           Warnings* w = nullptr);

// Elements under which catalog operators are tested.
using OpGroupElement = std::variant<SymplecticMatrix, JacobiElement, DiskJacobiElement, GLnmElement, HeisenbergElement>;

// Chart map of g on the operator's chart. affine=true when the map is affine in chart coordinates.
struct OpChartAction {
    ChartMap map;
    bool affine = false;
};
OpChartAction op_chart_action(const OperatorId& op, const OpGroupElement& g);

// f∘φ; affine maps keep exact derivative hooks.
ScalarField pull_field(const ScalarField& f, const OpChartAction& act, const Vec& x);

// |apply(op, f∘g, x) − apply(op, f, g·x)| / max(1, |apply(op, f, g·x)|).
double invariance_residual(const OperatorId& op, const OpGroupElement& g, const ScalarField& f, const Vec& x,
                           const DeriveOptions& opt = {});

// |(DΨ − ΨD) f − RHS f| / max(1, |RHS f|) on the H_{1,1} chart.
double commutator_check_DPsi(const ScalarField& f, const Vec& x, const DeriveOptions& opt = {});

// Residual of the Fourier-coefficient ODE for F(y, v) on the two-variable chart (y, v):
// [y²∂_y² + (y+v²)∂_v² + 2yv∂_y∂_v]F = ((ay+bv)² + b²y + λ)F.
double fourier_ode_residual(const ScalarField& F, double a, double b, cplx lambda, double y, double v,
                        const DeriveOptions& opt = {});

// Laplace-Beltrami operator of a metric, from its Gram tensor by finite differences:
// Δ_g f = |g|^{-1/2} ∂_a(|g|^{1/2} g^{ab} ∂_b f).
cplx laplace_beltrami(const MetricId& id, const ScalarField& f, const Vec& x, const DeriveOptions& opt = {});

}  // namespace sjl
