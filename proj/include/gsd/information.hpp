// information.hpp — Shannon rates for binary discrimination, the Levitin
// accessible-information bound, and information-gain assembly.

#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

#include "gsd/spectra.hpp"

namespace gsd {

// Per-configuration Shannon rates in bits. levitin is present for the
// coherent family only.
struct InformationRates {
    double i_pure = 0.0;
    double i_mixed = 0.0;
    double i_gain = 0.0;
    std::optional<double> levitin;
};

namespace detail {

// u log2(u) with the exact u -> 0 limit.
inline double xlog2(double u) { return u > 0.0 ? u * std::log2(u) : 0.0; }

}  // namespace detail

// Binary-symmetric-channel information 1 + p log2 p + (1-p) log2(1-p) for
// p in [0, 0.5]; the endpoints return exactly 1 and 0.
inline double shannon_bsc(double p_error) {
    if (!std::isfinite(p_error) || p_error < 0.0 || p_error > 0.5)
        throw std::domain_error("shannon_bsc: p_error must be in [0, 0.5], got " +
                                std::to_string(p_error));
    if (p_error == 0.0) return 1.0;
    if (p_error == 0.5) return 0.0;
    // clamp: cancellation near p = 0.5 can land an ulp below zero
    return std::clamp(1.0 + detail::xlog2(p_error) + detail::xlog2(1.0 - p_error), 0.0, 1.0);
}

// Levitin bound on accessible information for two pure coherent states at
// (+-x, p): with s = sqrt(1 - e^{-4x^2}),
//   I = (1+s)/2 log2(1+s) + (1-s)/2 log2(1-s).
// Independent of p (the overlap magnitude only involves x).
inline double levitin_bound(double x, double p) {
    detail::require_finite(x, "levitin_bound x");
    detail::require_finite(p, "levitin_bound p");
    const double s = std::sqrt(1.0 - std::exp(-4.0 * x * x));
    return 0.5 * detail::xlog2(1.0 + s) + 0.5 * detail::xlog2(1.0 - s);
}

// Combine a pure-configuration and a mixed-configuration result at the same
// (point, family, dim) into information rates; i_gain = i_pure - i_mixed.
inline InformationRates information_gain(const DiscriminationResult& pure_result,
                                         const DiscriminationResult& mixed_result) {
    const auto& cp = pure_result.config;
    const auto& cm = mixed_result.config;
    if (cp.mix != Mixedness::Pure || cm.mix != Mixedness::Mixed)
        throw std::domain_error("information_gain: results must be (pure, mixed)");
    if (cp.point.x != cm.point.x || cp.point.p != cm.point.p || cp.dim != cm.dim ||
        cp.family.kind != cm.family.kind || cp.family.sq.r != cm.family.sq.r)
        throw std::domain_error("information_gain: configurations do not match");

    InformationRates rates;
    rates.i_pure = shannon_bsc(pure_result.p_error);
    rates.i_mixed = shannon_bsc(mixed_result.p_error);
    rates.i_gain = rates.i_pure - rates.i_mixed;
    if (cp.family.routes_to_coherent())
        rates.levitin = levitin_bound(cp.point.x, cp.point.p);
    return rates;
}

}  // namespace gsd
