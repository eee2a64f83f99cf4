#pragma once

#include "sjl/fields.hpp"

namespace sjl {

struct DeriveOptions {
    double step_low = 1e-4;    // orders 1 and 2
    double step_third = 5e-4;  // order 3
    double step_fourth = 2e-3; // order 4
    bool allow_exact = true;
};

// Mixed partial derivative of order <= 4. Uses the exact hook when present, otherwise
// a tensor-product central stencil with one Richardson level. Steps are scaled by (1+|x_k|).
cplx derive(const ScalarField& f, const Vec& x, const MultiIndex& alpha, const DeriveOptions& opt = {},
            Warnings* warnings = nullptr);

}  // namespace sjl
