// fock.hpp — Truncated Fock-basis amplitude vectors for coherent and
// displaced squeezed states, plus Hermite polynomial evaluation.

#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace gsd {

using cplx = std::complex<double>;

// Largest truncation size / Hermite degree the library is tested for.
inline constexpr int kMaxDim = 200;

// Below this squeezing magnitude the squeezed formulas dispatch to the
// coherent ones (keeps sinh(2r)^{-1/2} out of the evaluation entirely).
inline constexpr double kCoherentDispatch = 1e-12;

// --------------------------- domain types -----------------------------------

// A displacement (x, p) in phase space, hbar = 1/2 convention: the state
// center is alpha = x + i p.
struct PhasePoint {
    double x = 0.0;
    double p = 0.0;

    cplx alpha() const { return {x, p}; }
};

// Squeezing magnitude r >= 0 along the position quadrature (angle fixed to 0).
// r = 0 denotes a coherent state.
struct SqueezeParameter {
    double r = 0.0;

    bool is_coherent() const { return r < kCoherentDispatch; }

    // Quadrature noise relative to vacuum: 10 log10(e^{-2r}) dB.
    double decibels() const { return 10.0 * std::log10(std::exp(-2.0 * r)); }
};

// Complex amplitudes c_0..c_{dim-1} of a state in the Fock basis, plus the
// probability mass lost to truncation (1 - sum |c_n|^2, never dropped
// silently).
struct TruncatedStateVector {
    int dim = 0;
    std::vector<cplx> amps;
    double tail_mass = 0.0;
};

// --------------------------- validation helpers -----------------------------

namespace detail {

inline void require_finite(double v, const char* what) {
    if (!std::isfinite(v))
        throw std::domain_error(std::string(what) + " must be finite");
}

inline void require_point(const PhasePoint& pt) {
    require_finite(pt.x, "phase-space x");
    require_finite(pt.p, "phase-space p");
}

inline void require_squeeze(const SqueezeParameter& sq) {
    require_finite(sq.r, "squeezing magnitude r");
    if (sq.r < 0.0)
        throw std::domain_error("squeezing magnitude r must be >= 0");
}

inline void require_dim(int dim) {
    if (dim < 1 || dim > kMaxDim)
        throw std::domain_error("truncation dim must be in [1, " +
                                std::to_string(kMaxDim) + "], got " +
                                std::to_string(dim));
}

// Scaled coherent monomials g_n = alpha^n / sqrt(n!), by the recurrence
// g_{n+1} = g_n * alpha / sqrt(n+1). No explicit factorials.
inline std::vector<cplx> coherent_monomials(cplx alpha, int count) {
    std::vector<cplx> g(static_cast<std::size_t>(count));
    g[0] = 1.0;
    for (int n = 0; n + 1 < count; ++n)
        g[static_cast<std::size_t>(n) + 1] =
            g[static_cast<std::size_t>(n)] * alpha / std::sqrt(double(n + 1));
    return g;
}

// Scaled Hermite terms h_n = (tanh(r)/2)^{n/2} / sqrt(n!) * H_n(g / sqrt(sinh 2r))
// for the squeeze-frame displacement g, folded into a single stable recurrence:
//   h_0 = 1,  h_1 = g / cosh r,
//   h_{n+1} = (g / cosh r) h_n / sqrt(n+1) - tanh(r) sqrt(n/(n+1)) h_{n-1}.
// The per-index prefactors are absorbed multiplicatively, so neither the
// Hermite values nor the factorials ever appear in isolation.
inline std::vector<cplx> scaled_hermite_terms(cplx frame_disp, double r, int count) {
    std::vector<cplx> h(static_cast<std::size_t>(count));
    const double sech = 1.0 / std::cosh(r);
    const double t = std::tanh(r);
    const cplx lead = frame_disp * sech;
    h[0] = 1.0;
    if (count > 1) h[1] = lead;
    for (int n = 1; n + 1 < count; ++n)
        h[static_cast<std::size_t>(n) + 1] =
            lead * h[static_cast<std::size_t>(n)] / std::sqrt(double(n + 1)) -
            t * std::sqrt(double(n) / double(n + 1)) * h[static_cast<std::size_t>(n) - 1];
    return h;
}

// Displacement seen in the squeezed frame: alpha cosh r + conj(alpha) sinh r.
inline cplx squeezed_frame_displacement(cplx alpha, double r) {
    return alpha * std::cosh(r) + std::conj(alpha) * std::sinh(r);
}

inline double residual_mass(const std::vector<cplx>& amps) {
    double s = 0.0;
    for (const cplx& a : amps) s += std::norm(a);
    return 1.0 - s;
}

}  // namespace detail

// --------------------------- operations -------------------------------------

// H_n(z) by the three-term recurrence H_{n+1} = 2z H_n - 2n H_{n-1},
// H_0 = 1, H_1 = 2z.
inline cplx hermite_eval(int degree, cplx z) {
    if (degree < 0 || degree > kMaxDim)
        throw std::domain_error("hermite_eval: degree must be in [0, " +
                                std::to_string(kMaxDim) + "]");
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw std::domain_error("hermite_eval: argument must be finite");
    if (degree == 0) return 1.0;
    cplx prev = 1.0;
    cplx cur = 2.0 * z;
    for (int n = 1; n < degree; ++n) {
        cplx next = 2.0 * z * cur - 2.0 * double(n) * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

// Coherent-state amplitudes c_n = e^{-|alpha|^2/2} alpha^n / sqrt(n!) via the
// stable recurrence c_0 = e^{-|alpha|^2/2}, c_{n+1} = c_n alpha / sqrt(n+1).
inline TruncatedStateVector coherent_amplitudes(const PhasePoint& point, int dim) {
    detail::require_point(point);
    detail::require_dim(dim);
    const cplx alpha = point.alpha();
    TruncatedStateVector v;
    v.dim = dim;
    v.amps.resize(static_cast<std::size_t>(dim));
    v.amps[0] = std::exp(-0.5 * std::norm(alpha));
    for (int n = 0; n + 1 < dim; ++n)
        v.amps[static_cast<std::size_t>(n) + 1] =
            v.amps[static_cast<std::size_t>(n)] * alpha / std::sqrt(double(n + 1));
    v.tail_mass = detail::residual_mass(v.amps);
    return v;
}

// Displaced-squeezed-vacuum amplitudes <n|alpha, r> (squeezing angle 0):
//   c_n = cosh(r)^{-1/2} exp(-(|alpha|^2 + conj(alpha)^2 tanh r)/2) h_n
// with h_n the scaled Hermite terms of the squeeze-frame displacement.
// r below the dispatch threshold routes to coherent_amplitudes bit-for-bit.
inline TruncatedStateVector squeezed_amplitudes(const PhasePoint& point,
                                                const SqueezeParameter& sq, int dim) {
    detail::require_point(point);
    detail::require_squeeze(sq);
    if (sq.is_coherent()) return coherent_amplitudes(point, dim);
    detail::require_dim(dim);

    const cplx alpha = point.alpha();
    const cplx frame = detail::squeezed_frame_displacement(alpha, sq.r);
    const cplx pref = std::exp(-0.5 * (cplx(std::norm(alpha)) +
                                       std::conj(alpha) * std::conj(alpha) * std::tanh(sq.r))) /
                      std::sqrt(std::cosh(sq.r));
    const std::vector<cplx> h = detail::scaled_hermite_terms(frame, sq.r, dim);

    TruncatedStateVector v;
    v.dim = dim;
    v.amps.resize(static_cast<std::size_t>(dim));
    for (int n = 0; n < dim; ++n)
        v.amps[static_cast<std::size_t>(n)] = pref * h[static_cast<std::size_t>(n)];
    v.tail_mass = detail::residual_mass(v.amps);
    return v;
}

}  // namespace gsd
