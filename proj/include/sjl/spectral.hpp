#pragma once

#include <string>
#include <vector>

#include "sjl/bessel.hpp"
#include "sjl/operators.hpp"
#include "sjl/reduction.hpp"

namespace sjl {

struct RiemannCheck {
    double residual = 0.0;  // ‖Ω* J tΩ*‖ with Ω* = (I, Ω)
    double margin = 0.0;    // least eigenvalue of -(1/i) Ω* J tΩ̄*
    Mat margin_matrix;
};
RiemannCheck riemann_check(const SiegelPoint& omega);

struct LatticeSpec {
    SiegelPoint omega;
    int m = 1;
    int n() const { return omega.n(); }
};

struct FourierIndex {
    IMat A, B;  // m×n integer matrices
};

cplx fourier_eval(const LatticeSpec& L, const FourierIndex& idx, const CMat& z);
// E_{Ω;A,B} on the torus chart (U then V), with exact derivatives.
ScalarField fourier_field(const LatticeSpec& L, const FourierIndex& idx);
// Point of C^{(m,n)} with lattice coordinates: Z = λΩ + μ.
CMat from_lattice(const LatticeSpec& L, const Mat& lambda, const Mat& mu);
Vec torus_chart(const CMat& z);

struct TorusGrid {
    int N = 8;
};

// Uniform quadrature of E1 conj(E2) over the lattice cell with normalized measure.
cplx torus_inner_product(const LatticeSpec& L, const FourierIndex& a, const FourierIndex& b, const TorusGrid& grid);
// All indices with entries in [-r, r].
std::vector<FourierIndex> index_box(int m, int n, int r);
CMat torus_gram(const LatticeSpec& L, const std::vector<FourierIndex>& idx, const TorusGrid& grid);

struct EigenEstimate {
    cplx eigenvalue = 0.0;     // mean of Δ_Ω E / E over the sample
    double spread = 0.0;       // max deviation from the mean
    double residual = 0.0;     // max |Δ_Ω E - eigenvalue E|
    cplx closed_form = 0.0;    // -π²[tr(A Y tA) + tr((B-AX) Y⁻¹ t(B-AX))]
};
EigenEstimate basis_eigen_residual(const LatticeSpec& L, const FourierIndex& idx, const std::vector<CMat>& zs);
cplx delta_omega_eigenvalue(const LatticeSpec& L, const FourierIndex& idx);

// The Δ_{1,1} eigenfunction catalog on the H_{1,1} chart (x, y, u, v).
struct EigenEntry {
    std::string id;
    int item = 0;
    std::function<ScalarField(cplx s, double a)> make;
    std::function<cplx(cplx s)> eigenvalue;
};
const std::vector<EigenEntry>& eigen_catalog();
const EigenEntry& eigen_entry(const std::string& id);
double catalog_eigen_residual(const EigenEntry& e, cplx s, double a, const std::vector<Vec>& points);

struct MaassReport {
    std::vector<std::pair<std::string, double>> mj1;  // generator -> max invariance residual
    double mj2 = 0.0;                                  // eigen residual against lambda
    std::vector<std::pair<int, double>> mj3_ratios;    // N -> |f| / (det Y)^N at the farthest sample
    double mj3_exponent = 0.0;                         // sampled log-log growth slope
};
// f on the H_{1,1} chart; MJ3 is reported only.
MaassReport maass_jacobi_residual(const ScalarField& f, cplx lambda, const std::vector<Vec>& points);

// Scalar weight det^k automorphic factor and slash action on H_{n,m} chart fields.
cplx automorphic_factor(int k, const JacobiIndexMatrix& index, const JacobiElement& g, const JacobiPoint& p);
ScalarField slash(int k, const JacobiIndexMatrix& index, const JacobiElement& g, const ScalarField& f, int n, int m);

}  // namespace sjl
