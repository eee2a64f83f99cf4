#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sjl/groups.hpp"

namespace sjl {

using IMat = Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>;
using IVec = Eigen::Matrix<long long, Eigen::Dynamic, 1>;

inline constexpr double kReduceTol = 1e-12;

struct ConditionReport {
    std::string name;  // "M.1", "M.2", "S.1", "S.2", "S.3", "lattice"
    bool holds = true;
    double margin = 0.0;
};

struct MinkowskiCheck {
    bool reduced = true;
    std::optional<IVec> witness;  // violating vector for M.1
    std::vector<ConditionReport> conditions;
};

// (M.2) exactly and (M.1) over integer vectors with entries in [-bound, bound].
MinkowskiCheck is_minkowski_reduced(const Mat& y, int bound = 5);

struct MinkowskiResult {
    Mat reduced;   // U Y tU
    IMat U;        // unimodular
    int iterations = 0;
    std::vector<ConditionReport> conditions;
};

// Successive minima by exhaustive short-vector enumeration after an LLL pass, then sign fixing.
MinkowskiResult minkowski_reduce(const Mat& y, int check_bound = 5);

struct SiegelCheck {
    bool reduced = true;
    std::vector<ConditionReport> conditions;
};

// (S.1) is tested over the finite candidate family below.
SiegelCheck is_siegel_reduced(const SiegelPoint& omega, int bound = 5);

// Candidate elements for (S.1): C = I with D symmetric in {-1,0,1}, and the coordinate inversions
// C = E_ii, D = I - E_ii + d E_ii with d in {-1,0,1}.
std::vector<SymplecticMatrix> siegel_candidates(int n);

struct SiegelResult {
    SiegelPoint reduced;
    SymplecticMatrix gamma;  // gamma · input = reduced
    int iterations = 0;
    std::vector<double> det_im_history;
    std::vector<ConditionReport> conditions;
};

SiegelResult siegel_reduce(const SiegelPoint& omega, int max_iterations = 1000);

struct JacobiReduceResult {
    JacobiPoint reduced;
    JacobiElement gamma;  // gamma · input = reduced
    Mat lambda_int, mu_int;
    Mat lambda_frac, mu_frac;
    int iterations = 0;
    std::vector<ConditionReport> conditions;
};

// Lattice coordinates of Z with respect to Omega: Z = lambda Omega + mu.
std::pair<Mat, Mat> lattice_coordinates(const SiegelPoint& omega, const CMat& z);

JacobiReduceResult jacobi_reduce(const JacobiPoint& p, int max_iterations = 1000);

struct VolumeResult {
    double value = 0.0;
    std::string rational;  // coefficient of pi^pi_power, as p/q
    int pi_power = 0;
};

VolumeResult siegel_volume(int n);

SymplecticMatrix symplectic_from_unimodular(const IMat& u);

}  // namespace sjl
