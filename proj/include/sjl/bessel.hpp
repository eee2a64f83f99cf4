#pragma once

#include "sjl/errors.hpp"
#include "sjl/matrix.hpp"

namespace sjl {

// K_s(z) = ∫_0^∞ e^{-z cosh u} cosh(s u) du by the trapezoid rule with step halving. For |Im s| >= 1 the
// line of integration is tilted into the complex u-plane to avoid cancellation.
// Validated box: |s| <= 20, 0.05 <= z <= 50.
cplx k_bessel(cplx s, double z, Warnings* warnings = nullptr);

// r-th derivative in z: (-1/2)^r Σ_j C(r,j) K_{s-r+2j}(z).
cplx k_bessel_deriv(cplx s, double z, int r);

}  // namespace sjl
