// operators.hpp — Hermitian difference operators rho_0 - rho_1 for the four
// configurations (pure/mixed x coherent/squeezed), assembled from the
// closed-form Fock matrix elements.

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gsd/fock.hpp"

namespace gsd {

using Matrix = Eigen::MatrixXcd;

// --------------------------- domain types -----------------------------------

enum class StateKind { Coherent, Squeezed };
enum class Mixedness { Pure, Mixed };

// Which Gaussian family the two hypothesis states belong to. Coherent is
// identical to Squeezed with r = 0.
struct StateFamily {
    StateKind kind = StateKind::Coherent;
    SqueezeParameter sq{};

    static StateFamily coherent() { return {StateKind::Coherent, {}}; }
    static StateFamily squeezed(double r) { return {StateKind::Squeezed, {r}}; }

    double effective_r() const { return kind == StateKind::Coherent ? 0.0 : sq.r; }
    bool routes_to_coherent() const { return effective_r() < kCoherentDispatch; }
};

// Dense N x N complex Hermitian matrix. Construction symmetrizes
// (A <- (A + A^dagger)/2) and records the pre-symmetrization deviation.
class HermitianOperator {
  public:
    static HermitianOperator from_matrix(Matrix m) {
        if (m.rows() != m.cols())
            throw std::invalid_argument("HermitianOperator: matrix must be square");
        const double defect = (m - m.adjoint()).cwiseAbs().maxCoeff();
        if (defect > kHermiticityTol)
            throw std::invalid_argument(
                "HermitianOperator: input deviates from Hermitian by " +
                std::to_string(defect));
        Matrix sym = 0.5 * (m + m.adjoint().eval());
        return HermitianOperator(std::move(sym), defect);
    }

    int dim() const { return static_cast<int>(m_.rows()); }
    const Matrix& matrix() const { return m_; }
    cplx entry(int n, int m) const { return m_(n, m); }
    cplx trace() const { return m_.trace(); }
    double hermiticity_defect() const { return defect_; }

    static constexpr double kHermiticityTol = 1e-12;

  private:
    HermitianOperator(Matrix m, double defect) : m_(std::move(m)), defect_(defect) {}

    Matrix m_;
    double defect_;
};

// --------------------------- assembly ---------------------------------------

namespace detail {

inline void check_entries_finite(const Matrix& m, const char* what) {
    for (Eigen::Index n = 0; n < m.rows(); ++n)
        for (Eigen::Index mm = 0; mm < m.cols(); ++mm) {
            const cplx e = m(n, mm);
            if (!std::isfinite(e.real()) || !std::isfinite(e.imag()))
                throw std::runtime_error(std::string(what) + ": non-finite entry at (" +
                                         std::to_string(n) + ", " + std::to_string(mm) + ")");
        }
}

// <n|A|m> for two pure coherent states at (+-x, p):
//   e^{-x^2-p^2} [ u_n conj(u_m) - v_n conj(v_m) ]
// with u = monomials of alpha = x+ip and v = monomials of -conj(alpha) = -x+ip.
inline Matrix coherent_elements(const PhasePoint& pt, Mixedness mix, int dim) {
    const cplx alpha = pt.alpha();
    const double env = std::exp(-std::norm(alpha));
    Matrix a(dim, dim);
    if (mix == Mixedness::Pure) {
        const auto u = coherent_monomials(alpha, dim);
        const auto v = coherent_monomials(-std::conj(alpha), dim);
        for (int n = 0; n < dim; ++n)
            for (int m = 0; m < dim; ++m)
                a(n, m) = env * (u[n] * std::conj(u[m]) - v[n] * std::conj(v[m]));
    } else {
        // Each hypothesis is an equal mixture of the +-p displaced states.
        const auto u1 = coherent_monomials(alpha, dim);
        const auto u2 = coherent_monomials(std::conj(alpha), dim);
        const auto u3 = coherent_monomials(-std::conj(alpha), dim);
        const auto u4 = coherent_monomials(-alpha, dim);
        for (int n = 0; n < dim; ++n)
            for (int m = 0; m < dim; ++m)
                a(n, m) = 0.5 * env *
                          (u1[n] * std::conj(u1[m]) + u2[n] * std::conj(u2[m]) -
                           u3[n] * std::conj(u3[m]) - u4[n] * std::conj(u4[m]));
    }
    return a;
}

// <n|A|m> for two displaced squeezed states (angle 0), using the scaled
// Hermite terms h of the squeeze-frame displacements g and g' = -conj(g):
//   pure:  E [ h_n(g) conj(h_m(g)) - h_n(g') conj(h_m(g')) ]
//   mixed: E/2 [ h_n(g) conj(h_m(g)) + conj(h_n(g)) h_m(g)
//              - h_n(g') conj(h_m(g')) - conj(h_n(g')) h_m(g') ]
// with E = exp(-(x^2 + p^2 + (x^2 - p^2) tanh r)) / cosh r. The mixed form
// uses the conjugate identities relating the four mixture displacements, and
// h_n(conj(g)) = conj(h_n(g)) because the recurrence coefficients are real.
inline Matrix squeezed_elements(const PhasePoint& pt, double r, Mixedness mix, int dim) {
    const cplx alpha = pt.alpha();
    const cplx g = squeezed_frame_displacement(alpha, r);
    const cplx gp = -std::conj(g);
    const double env =
        std::exp(-(pt.x * pt.x + pt.p * pt.p + (pt.x * pt.x - pt.p * pt.p) * std::tanh(r))) /
        std::cosh(r);
    const auto h = scaled_hermite_terms(g, r, dim);
    const auto hp = scaled_hermite_terms(gp, r, dim);
    Matrix a(dim, dim);
    if (mix == Mixedness::Pure) {
        for (int n = 0; n < dim; ++n)
            for (int m = 0; m < dim; ++m)
                a(n, m) = env * (h[n] * std::conj(h[m]) - hp[n] * std::conj(hp[m]));
    } else {
        for (int n = 0; n < dim; ++n)
            for (int m = 0; m < dim; ++m)
                a(n, m) = 0.5 * env *
                          (h[n] * std::conj(h[m]) + std::conj(h[n]) * h[m] -
                           hp[n] * std::conj(hp[m]) - std::conj(hp[n]) * hp[m]);
    }
    return a;
}

}  // namespace detail

// Difference operator A = rho_0 - rho_1 for the requested configuration.
// Families with r below the dispatch threshold route to the coherent
// formulas. The result is Hermitian and traceless up to the stated
// tolerances; violations raise an assembly error.
inline HermitianOperator difference_operator(const PhasePoint& point,
                                             const StateFamily& family, Mixedness mix,
                                             int dim) {
    detail::require_point(point);
    detail::require_squeeze(family.sq);
    detail::require_dim(dim);

    Matrix a = family.routes_to_coherent()
                   ? detail::coherent_elements(point, mix, dim)
                   : detail::squeezed_elements(point, family.effective_r(), mix, dim);
    detail::check_entries_finite(a, "difference_operator");

    HermitianOperator op = HermitianOperator::from_matrix(std::move(a));
    const double tr = std::abs(op.trace());
    if (tr > 1e-10)
        throw std::runtime_error("difference_operator: |trace| = " + std::to_string(tr) +
                                 " exceeds 1e-10");
    return op;
}

// Sum_i w_i |v_i><v_i| from explicit state vectors. This is the independent
// outer-product construction used to cross-check the closed-form assembly;
// it is not the production path for difference operators.
inline HermitianOperator density_operator_from_vectors(
    const std::vector<std::pair<double, TruncatedStateVector>>& components) {
    if (components.empty())
        throw std::domain_error("density_operator_from_vectors: no components");
    const int dim = components.front().second.dim;
    double wsum = 0.0;
    for (const auto& [w, v] : components) {
        if (!std::isfinite(w) || w < 0.0)
            throw std::domain_error("density_operator_from_vectors: weights must be >= 0");
        if (v.dim != dim || static_cast<int>(v.amps.size()) != dim)
            throw std::domain_error("density_operator_from_vectors: mixed dimensions");
        wsum += w;
    }
    if (std::abs(wsum - 1.0) > 1e-12)
        throw std::domain_error("density_operator_from_vectors: weights sum to " +
                                std::to_string(wsum) + ", expected 1");

    Matrix rho = Matrix::Zero(dim, dim);
    for (const auto& [w, v] : components) {
        Eigen::Map<const Eigen::VectorXcd> vec(v.amps.data(), dim);
        rho.noalias() += w * (vec * vec.adjoint());
    }
    detail::check_entries_finite(rho, "density_operator_from_vectors");
    return HermitianOperator::from_matrix(std::move(rho));
}

}  // namespace gsd
