// quad.hpp — Adaptive Gauss-Kronrod (G7-K15) quadrature on a finite interval.

#pragma once

#include <cmath>
#include <utility>

namespace gsd {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int intervals = 0;
    bool converged = true;
};

namespace detail {

// 15-point Kronrod nodes/weights on [-1, 1] (positive half; symmetric) with
// the embedded 7-point Gauss weights on the odd-indexed nodes.
inline constexpr double kKronrodNodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
inline constexpr double kKronrodWeights[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
inline constexpr double kGaussWeights[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

// One G7/K15 panel on [a, b]; returns (kronrod value, |kronrod - gauss|).
template <typename F>
std::pair<double, double> gauss_kronrod_panel(F&& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double kron = 0.0, gauss = 0.0;
    for (int i = 0; i < 8; ++i) {
        const double x = half * kKronrodNodes[i];
        const double fsum = (i == 7) ? f(mid) : f(mid - x) + f(mid + x);
        kron += kKronrodWeights[i] * fsum;
        if (i % 2 == 1) gauss += kGaussWeights[i / 2] * fsum;
    }
    kron *= half;
    gauss *= half;
    return {kron, std::abs(kron - gauss)};
}

template <typename F>
void integrate_recurse(F&& f, double a, double b, double tol, int depth,
                       QuadratureResult& out) {
    const auto [value, err] = gauss_kronrod_panel(f, a, b);
    if (err <= tol || depth <= 0) {
        out.value += value;
        out.error_estimate += err;
        out.intervals += 1;
        if (err > tol) out.converged = false;
        return;
    }
    const double mid = 0.5 * (a + b);
    integrate_recurse(f, a, mid, 0.5 * tol, depth - 1, out);
    integrate_recurse(f, mid, b, 0.5 * tol, depth - 1, out);
}

}  // namespace detail

// Adaptive bisection to the requested absolute tolerance. `converged` is
// false if the depth budget ran out before every panel met its share of the
// tolerance; the achieved error estimate is always reported.
template <typename F>
QuadratureResult integrate_adaptive(F&& f, double a, double b, double abs_tol,
                                    int max_depth = 48) {
    QuadratureResult out;
    detail::integrate_recurse(f, a, b, abs_tol, max_depth, out);
    return out;
}

}  // namespace gsd
