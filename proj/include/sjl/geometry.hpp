#pragma once

#include <functional>
#include <string>
#include <variant>

#include "sjl/groups.hpp"

namespace sjl {

// Real coordinate charts.
//   H   : H_n, upper-triangle X row-wise, then upper-triangle Y
//   HJ  : H_{n,m}, as H followed by U row-major, then V row-major
//   D   : D_n, upper-triangle Re W, then upper-triangle Im W
//   DJ  : D_{n,m}, as D followed by Re eta, then Im eta
//   PV  : P_n x R^{(m,n)}, upper-triangle Y, then V row-major
//   A   : the torus chart of A_Omega, U then V
enum class Chart { H, HJ, D, DJ, PV, A };

std::string chart_name(Chart c);
int sym_dim(int n);
int chart_dim(Chart c, int n, int m);

struct ChartVector {
    Chart chart = Chart::H;
    int n = 1;
    int m = 0;
    Vec x;
};

Vec sym_to_vec(const Mat& s);
Mat vec_to_sym(const Vec& v, int n);

Vec siegel_to_chart(const SiegelPoint& p);
SiegelPoint chart_to_siegel(const Vec& x, int n);
Vec jacobi_to_chart(const JacobiPoint& p);
JacobiPoint chart_to_jacobi(const Vec& x, int n, int m);
Vec disk_to_chart(const DiskPoint& p);
DiskPoint chart_to_disk(const Vec& x, int n);
Vec disk_jacobi_to_chart(const DiskJacobiPoint& p);
DiskJacobiPoint chart_to_disk_jacobi(const Vec& x, int n, int m);
Vec pv_to_chart(const Mat& y, const Mat& v);
std::pair<Mat, Mat> chart_to_pv(const Vec& x, int n, int m);

// Cayley transform and its partial version.
SiegelPoint cayley(const DiskPoint& w);
DiskPoint cayley_inv(const SiegelPoint& omega);
JacobiPoint partial_cayley(const DiskJacobiPoint& p);
DiskJacobiPoint partial_cayley_inv(const JacobiPoint& q);

enum class MetricTag { Siegel, Disk, Jacobi, DiskJacobi, H11, Abelian };

struct MetricId {
    MetricTag tag = MetricTag::Siegel;
    int n = 1;
    int m = 0;
    CMat omega;  // only for Abelian

    static MetricId siegel(int n) { return {MetricTag::Siegel, n, 0, {}}; }
    static MetricId disk(int n) { return {MetricTag::Disk, n, 0, {}}; }
    static MetricId jacobi(int n, int m) { return {MetricTag::Jacobi, n, m, {}}; }
    static MetricId disk_jacobi(int n, int m) { return {MetricTag::DiskJacobi, n, m, {}}; }
    static MetricId h11() { return {MetricTag::H11, 1, 1, {}}; }
    static MetricId abelian(const SiegelPoint& om, int m) { return {MetricTag::Abelian, om.n(), m, om.omega()}; }
};

std::string metric_name(const MetricId& id);
Chart metric_chart(const MetricId& id);

struct GramResult {
    Mat gram;
    double imag_residue = 0.0;
};

// Polarization of a real-valued quadratic form given on chart increments.
using QuadForm = std::function<cplx(const Vec& t)>;
GramResult polarize(const QuadForm& q, int d);

// Gram matrix of the metric at chart point x. Throws MetricEvaluationError unless SPD.
GramResult metric_gram(const MetricId& id, const Vec& x);
// The explicit closed-form disk-Jacobi expression, evaluated for comparison with the pullback definition.
GramResult disk_jacobi_closed_form_gram(int n, int m, const Vec& x);

using GroupElement = std::variant<SymplecticMatrix, JacobiElement, DiskJacobiElement>;
using ChartMap = std::function<Vec(const Vec&)>;

// Chart map of the group action relevant to the metric, plus the metric id at the image.
struct ChartAction {
    ChartMap map;
    MetricId target;
};
ChartAction chart_action(const MetricId& id, const GroupElement& g);

// Central differences (step 1e-5, one Richardson level).
Mat jacobian_fd(const ChartMap& f, const Vec& x, double h = 1e-5);

double pullback_residual(const MetricId& id, const GroupElement& g, const Vec& x);

// (det Y)^{-(n+m+1)} for Jacobi; sqrt(det Gram) otherwise.
double volume_density(const MetricId& id, const Vec& x);
double volume_invariance_residual(const MetricId& id, const GroupElement& g, const Vec& x);

struct CurvatureResult {
    double scalar = 0.0;
    Warnings warnings;
};
CurvatureResult scalar_curvature(const MetricId& id, const Vec& x, double h = 1e-4);

// Least eigenvalue of Y, or of I - conj(W) W on disk charts.
double boundary_margin(Chart c, int n, int m, const Vec& x);
inline constexpr double kBoundaryMargin = 1e-6;

// Random interior points for tests and suites.
SiegelPoint random_siegel(int n, Rng& rng);
JacobiPoint random_jacobi_point(int n, int m, Rng& rng);
DiskPoint random_disk(int n, Rng& rng);
DiskJacobiPoint random_disk_jacobi_point(int n, int m, Rng& rng);

}  // namespace sjl
