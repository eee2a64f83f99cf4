#include "sjl/bessel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace sjl {

namespace {

constexpr double kTruncation = 40.0;

// K_s(z) = (1/2) e^{i s θ} ∫_R exp(-z cosh(u + iθ) + s u) du for |θ| < π/2. The integrand peaks near
// e^{-|Im s| |θ| - z cos θ}; sin θ = |Im s| / z minimizes that peak, which keeps the cancellation small.
double contour_angle(cplx s, double z) {
    const double t = std::abs(s.imag());
    if (t < 1.0) return 0.0;
    const double delta = std::max(0.1, std::min(1.0, 2.0 / t));
    const double theta = t < z ? std::asin(t / z) : std::numbers::pi / 2.0;
    return std::copysign(std::min(theta, std::numbers::pi / 2.0 - delta), s.imag());
}

double truncation_point(cplx s, double z, double theta) {
    // smallest U with z cos(θ) cosh U - |Re s| U beyond 80 nats of decay, capped
    const double a = std::abs(s.real()), c = z * std::cos(theta);
    double u = 1.0;
    while (u < kTruncation && c * std::cosh(u) - a * u < 80.0) u += 0.25;
    return std::min(u, kTruncation);
}

struct Sum {
    cplx value;
    double mass;  // Σ |terms|, the scale of the rounding error
};

Sum trapezoid(cplx s, double z, double theta, double upper, int panels) {
    const double h = upper / panels;
    const cplx i(0.0, 1.0);
    Sum r{0.0, 0.0};
    for (int k = -panels; k <= panels; ++k) {
        const double u = k * h;
        const cplx term = std::exp(-z * std::cosh(cplx(u, theta)) + s * u);
        r.value += term;
        r.mass += std::abs(term);
    }
    const cplx pre = 0.5 * h * std::exp(i * s * theta);
    return {r.value * pre, r.mass * std::abs(pre)};
}

}  // namespace

cplx k_bessel(cplx s, double z, Warnings* warnings) {
    if (!(z > 0.0) || !std::isfinite(z)) throw InputError("k_bessel requires z > 0");
    if (warnings && (std::abs(s) > 20.0 || z < 0.05 || z > 50.0))
        warnings->push_back("k_bessel: (s, z) outside the validated box, accuracy not guaranteed");
    const double theta = contour_angle(s, z);
    const double upper = truncation_point(s, z, theta);
    int panels = 64;
    Sum prev = trapezoid(s, z, theta, upper, panels);
    for (int level = 0; level < 12; ++level) {
        panels *= 2;
        Sum next = trapezoid(s, z, theta, upper, panels);
        const double scale = std::max({std::abs(next.value), next.mass, 1e-300});
        if (std::abs(next.value - prev.value) <= 1e-14 * scale) return next.value;
        prev = next;
    }
    if (warnings) warnings->push_back("k_bessel: step halving did not converge");
    return prev.value;
}

cplx k_bessel_deriv(cplx s, double z, int r) {
    if (r == 0) return k_bessel(s, z);
    cplx sum = 0.0;
    double binom = 1.0;
    for (int j = 0; j <= r; ++j) {
        sum += binom * k_bessel(s - double(r) + 2.0 * j, z);
        binom = binom * (r - j) / (j + 1);
    }
    return std::pow(-0.5, r) * sum;
}

}  // namespace sjl
