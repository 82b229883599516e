// homodyne.hpp — Error probability of the projective x-quadrature strategy
// for discriminating the (+-x, p) coherent pair.

#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "gsd/fock.hpp"
#include "gsd/quad.hpp"

namespace gsd {

// Outcome density of an x-quadrature measurement on a coherent state centered
// at x_center: P(m) = sqrt(2/pi) e^{-2 (m - x_center)^2}.
struct QuadratureOutcomeDensity {
    double x_center = 0.0;

    double operator()(double m) const {
        return std::sqrt(2.0 / std::numbers::pi) * std::exp(-2.0 * (m - x_center) * (m - x_center));
    }
};

// Probability of guessing wrong given outcome m when the hypotheses are
// centered at +-x:
//   m > 0: e^{-2(m+x)^2} / (e^{-2(m-x)^2} + e^{-2(m+x)^2})
//   m < 0: mirrored; m = 0: 1/2.
// Evaluated as 1 / (1 + e^{8|m|x}), which is the same ratio with the common
// Gaussian factored out and stays defined where both Gaussians underflow.
inline double conditional_error(double m, double x) {
    detail::require_finite(m, "conditional_error m");
    detail::require_finite(x, "conditional_error x");
    if (x < 0.0) throw std::domain_error("conditional_error: x must be >= 0");
    return 1.0 / (1.0 + std::exp(8.0 * std::abs(m) * x));
}

namespace detail {

constexpr double kHomodyneTol = 1e-10;

// Integrand of sqrt(8/pi) Int_0^inf dm / (e^{2(m+x)^2} + e^{2(m-x)^2}),
// with the smaller exponential factored out: e^{-2(m-x)^2} / (1 + e^{8mx}).
inline double homodyne_integrand(double m, double x) {
    return std::exp(-2.0 * (m - x) * (m - x)) / (1.0 + std::exp(8.0 * m * x));
}

}  // namespace detail

// Error probability of the x-quadrature strategy, integrated over all
// outcomes. The same value applies to the pure and the mixed configuration
// (the projection collapses both onto the x axis identically). x = 0 returns
// exactly 1/2 (the integrand reduces to e^{-2m^2}/2). The integrand is below
// 1e-28 beyond m = x + 8, so the quadrature runs on [0, x+8].
inline double homodyne_error(double x) {
    detail::require_finite(x, "homodyne_error x");
    if (x < 0.0) throw std::domain_error("homodyne_error: x must be >= 0");
    if (x == 0.0) return 0.5;
    const auto q = integrate_adaptive([x](double m) { return detail::homodyne_integrand(m, x); },
                                      0.0, x + 8.0, detail::kHomodyneTol);
    if (!q.converged)
        throw std::runtime_error("homodyne_error: quadrature achieved only " +
                                 std::to_string(q.error_estimate) + " absolute error");
    return std::sqrt(8.0 / std::numbers::pi) * q.value;
}

// Pre-simplification form 2 Int_0^inf p_e(m) P(m | +x) dm, composed from the
// public conditional error and outcome density. Kept as an independent route
// for cross-checking homodyne_error.
inline double homodyne_error_via_conditional(double x) {
    detail::require_finite(x, "homodyne_error_via_conditional x");
    if (x < 0.0) throw std::domain_error("homodyne_error_via_conditional: x must be >= 0");
    if (x == 0.0) return 0.5;
    const QuadratureOutcomeDensity density{x};
    const auto q = integrate_adaptive(
        [x, density](double m) { return conditional_error(m, x) * density(m); }, 0.0, x + 8.0,
        detail::kHomodyneTol);
    if (!q.converged)
        throw std::runtime_error("homodyne_error_via_conditional: quadrature achieved only " +
                                 std::to_string(q.error_estimate) + " absolute error");
    return 2.0 * q.value;
}

}  // namespace gsd
