// spectra.hpp — Eigenvalues of Hermitian difference operators, trace distance,
// probability of error, the closed-form Helstrom bound, and an exact low-rank
// Gram oracle.

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "gsd/fock.hpp"
#include "gsd/operators.hpp"

namespace gsd {

// --------------------------- domain types -----------------------------------

struct DiscriminationConfig {
    PhasePoint point{};
    StateFamily family{};
    Mixedness mix = Mixedness::Pure;
    int dim = 0;
};

// Trace distance D, probability of error p_e = (1 - D)/2, and the raw
// half-sum input Sum|lambda_j| (pre-clamp, kept as a quality signal).
struct DiscriminationResult {
    double trace_distance = 0.0;
    double p_error = 0.5;
    double eigen_abs_sum = 0.0;
    DiscriminationConfig config{};
};

// --------------------------- eigensolvers -----------------------------------

// All real eigenvalues of a Hermitian operator, ascending.
inline std::vector<double> hermitian_eigenvalues(const HermitianOperator& op) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(op.matrix(), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("hermitian_eigenvalues: no convergence for dim " +
                                 std::to_string(op.dim()) + " matrix, Frobenius norm " +
                                 std::to_string(op.matrix().norm()));
    const auto& ev = solver.eigenvalues();
    return std::vector<double>(ev.data(), ev.data() + ev.size());
}

struct Eigensystem {
    Eigen::VectorXd values;   // ascending
    Matrix vectors;           // columns match values
};

inline Eigensystem hermitian_eigensystem(const HermitianOperator& op) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(op.matrix());
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("hermitian_eigensystem: no convergence for dim " +
                                 std::to_string(op.dim()) + " matrix");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

// Largest residual ||A v - lambda v|| over all eigenpairs, for verifying the
// reconstruction contract against ||A||.
inline double max_eigen_residual(const HermitianOperator& op, const Eigensystem& es) {
    double worst = 0.0;
    for (Eigen::Index j = 0; j < es.values.size(); ++j) {
        const double res =
            (op.matrix() * es.vectors.col(j) - es.values(j) * es.vectors.col(j)).norm();
        worst = std::max(worst, res);
    }
    return worst;
}

namespace detail {

// Cyclic Jacobi eigensolver for small complex Hermitian matrices (the Gram
// oracle's k <= 4 systems). Independent of the production eigensolver so the
// two computational paths do not share code. Optionally accumulates the
// unitary transform in `vectors`.
inline std::vector<double> jacobi_hermitian(Matrix a, Matrix* vectors = nullptr,
                                            int max_sweeps = 64) {
    const Eigen::Index k = a.rows();
    if (vectors) *vectors = Matrix::Identity(k, k);
    const double scale = std::max(a.cwiseAbs().maxCoeff(), 1e-300);
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (Eigen::Index p = 0; p < k; ++p)
            for (Eigen::Index q = p + 1; q < k; ++q) off += std::norm(a(p, q));
        if (off < 1e-32 * scale * scale) break;
        for (Eigen::Index p = 0; p < k; ++p) {
            for (Eigen::Index q = p + 1; q < k; ++q) {
                const cplx apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag < 1e-300) continue;
                const cplx phase = apq / mag;
                const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * mag);
                const double sgn = tau >= 0.0 ? 1.0 : -1.0;
                const double t = sgn / (std::abs(tau) + std::hypot(1.0, tau));
                const double c = 1.0 / std::hypot(1.0, t);
                const double s = t * c;
                // A <- U^dagger A U with U = [[c, s*phase], [-s*conj(phase), c]]
                for (Eigen::Index i = 0; i < k; ++i) {
                    const cplx aip = a(i, p), aiq = a(i, q);
                    a(i, p) = c * aip - s * std::conj(phase) * aiq;
                    a(i, q) = s * phase * aip + c * aiq;
                }
                for (Eigen::Index i = 0; i < k; ++i) {
                    const cplx api = a(p, i), aqi = a(q, i);
                    a(p, i) = c * api - s * phase * aqi;
                    a(q, i) = s * std::conj(phase) * api + c * aqi;
                }
                if (vectors) {
                    for (Eigen::Index i = 0; i < k; ++i) {
                        const cplx vip = (*vectors)(i, p), viq = (*vectors)(i, q);
                        (*vectors)(i, p) = c * vip - s * std::conj(phase) * viq;
                        (*vectors)(i, q) = s * phase * vip + c * viq;
                    }
                }
            }
        }
    }
    std::vector<double> vals(static_cast<std::size_t>(k));
    for (Eigen::Index i = 0; i < k; ++i) vals[static_cast<std::size_t>(i)] = a(i, i).real();
    return vals;
}

// Closed-form coherent overlap <a|b> = exp(-|a|^2/2 - |b|^2/2 + conj(a) b).
inline cplx coherent_overlap(cplx a, cplx b) {
    return std::exp(-0.5 * std::norm(a) - 0.5 * std::norm(b) + std::conj(a) * b);
}

// Hypothesis components of rho_0 - rho_1 as (weight, displacement) pairs.
inline std::vector<std::pair<double, PhasePoint>> signed_components(const PhasePoint& pt,
                                                                    Mixedness mix) {
    if (mix == Mixedness::Pure)
        return {{+1.0, {pt.x, pt.p}}, {-1.0, {-pt.x, pt.p}}};
    return {{+0.5, {pt.x, pt.p}},
            {+0.5, {pt.x, -pt.p}},
            {-0.5, {-pt.x, pt.p}},
            {-0.5, {-pt.x, -pt.p}}};
}

}  // namespace detail

// --------------------------- trace distance ---------------------------------

// D = (1/2) Sum |lambda_j|, clamped to [0, 1]. Eigenvalues below the
// truncation-noise floor still count toward the sum (zeroing them would bias
// D low); any excess beyond 1 is handled by the clamp.
inline double trace_distance(const HermitianOperator& op) {
    double sum = 0.0;
    for (double ev : hermitian_eigenvalues(op)) sum += std::abs(ev);
    return std::clamp(0.5 * sum, 0.0, 1.0);
}

// Helstrom bound for two pure coherent states at (+-x, p): the overlap
// magnitude is |z|^2 = exp(-4 x^2), so p_e = (1 - sqrt(1 - e^{-4x^2}))/2,
// independent of p.
inline double helstrom_pure_coherent(double x) {
    detail::require_finite(x, "helstrom_pure_coherent x");
    return 0.5 * (1.0 - std::sqrt(1.0 - std::exp(-4.0 * x * x)));
}

// --------------------------- Gram oracle ------------------------------------

// Exact nonzero eigenvalues of rho_0 - rho_1 computed in the span of its
// <= 4 component states: with Gram matrix G of pairwise overlaps and signed
// weight matrix W, the nonzero spectrum of the operator equals that of the
// small Hermitian matrix G^{1/2} W G^{1/2}. Coherent overlaps are closed-form
// (truncation-free); squeezed overlaps use dim-200 truncated inner products.
// A singular Gram matrix (coinciding states) yields a reduced-rank result.
inline std::vector<double> gram_oracle(const PhasePoint& point, const StateFamily& family,
                                       Mixedness mix) {
    detail::require_point(point);
    detail::require_squeeze(family.sq);

    const auto comps = detail::signed_components(point, mix);
    const int k = static_cast<int>(comps.size());
    Matrix gram(k, k);
    if (family.routes_to_coherent()) {
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j)
                gram(i, j) =
                    detail::coherent_overlap(comps[i].second.alpha(), comps[j].second.alpha());
    } else {
        std::vector<TruncatedStateVector> vecs;
        vecs.reserve(comps.size());
        for (const auto& [w, pt] : comps)
            vecs.push_back(squeezed_amplitudes(pt, family.sq, kMaxDim));
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) {
                cplx s = 0.0;
                for (int n = 0; n < kMaxDim; ++n)
                    s += std::conj(vecs[i].amps[n]) * vecs[j].amps[n];
                gram(i, j) = s;
            }
    }
    gram = 0.5 * (gram + gram.adjoint().eval());

    // G^{1/2} from the Gram eigensystem; rank-deficient directions drop out.
    Matrix u;
    std::vector<double> gev = detail::jacobi_hermitian(gram, &u);
    Eigen::VectorXd roots(k);
    for (int i = 0; i < k; ++i) roots(i) = gev[i] > 1e-14 ? std::sqrt(gev[i]) : 0.0;
    const Matrix ghalf = u * roots.asDiagonal() * u.adjoint();

    Eigen::VectorXd w(k);
    for (int i = 0; i < k; ++i) w(i) = comps[i].first;
    const Matrix core = ghalf * w.asDiagonal() * ghalf;

    std::vector<double> vals = detail::jacobi_hermitian(core);
    std::vector<double> nonzero;
    for (double v : vals)
        if (std::abs(v) > 1e-12) nonzero.push_back(v);
    std::sort(nonzero.begin(), nonzero.end());
    return nonzero;
}

// Trace distance implied by the Gram oracle's nonzero spectrum.
inline double gram_trace_distance(const PhasePoint& point, const StateFamily& family,
                                  Mixedness mix) {
    double sum = 0.0;
    for (double v : gram_oracle(point, family, mix)) sum += std::abs(v);
    return std::clamp(0.5 * sum, 0.0, 1.0);
}

// --------------------------- discrimination ---------------------------------

// Full matrix-path discrimination for one configuration: assemble the
// difference operator at the given truncation, eigensolve, and convert to
// trace distance and probability of error.
inline DiscriminationResult discriminate(const PhasePoint& point, const StateFamily& family,
                                         Mixedness mix, int dim) {
    const HermitianOperator op = difference_operator(point, family, mix, dim);
    double sum = 0.0;
    for (double ev : hermitian_eigenvalues(op)) sum += std::abs(ev);
    DiscriminationResult r;
    r.eigen_abs_sum = sum;
    r.trace_distance = std::clamp(0.5 * sum, 0.0, 1.0);
    r.p_error = 0.5 * (1.0 - r.trace_distance);
    r.config = {point, family, mix, dim};
    return r;
}

}  // namespace gsd
