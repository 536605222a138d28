#pragma once

#include <algorithm>
#include <functional>

#include "states.hpp"

namespace qsep {

/// Binary entropy h(p) = -p log2 p - (1-p) log2(1-p), with 0 log 0 = 0.
/// Accepts p in [0, 1] up to 1e-12 slack and clamps.
inline double binary_entropy(double p) {
    if (!std::isfinite(p) || p < -kNormalizationTol || p > 1.0 + kNormalizationTol)
        throw std::invalid_argument("binary_entropy: p must lie in [0, 1], got " +
                                    std::to_string(p));
    p = std::clamp(p, 0.0, 1.0);
    double h = 0.0;
    if (p > 0.0) h -= p * std::log2(p);
    if (p < 1.0) h -= (1.0 - p) * std::log2(1.0 - p);
    return h;
}

/// Pure-state concurrence C = 2 |c00 c11 - c01 c10|.
inline double concurrence_pure(const PureState& psi) {
    return 2.0 * std::abs(psi.amplitude(0) * psi.amplitude(3) -
                          psi.amplitude(1) * psi.amplitude(2));
}

/// E(C) = h((1 + sqrt(1 - C^2)) / 2). Monotone from E(0) = 0 to E(1) = 1.
inline double entanglement_from_concurrence(double c) {
    if (!std::isfinite(c) || c < -kNormalizationTol || c > 1.0 + kNormalizationTol)
        throw std::invalid_argument("entanglement_from_concurrence: C must lie in [0, 1], got " +
                                    std::to_string(c));
    c = std::clamp(c, 0.0, 1.0);
    return binary_entropy(0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - c * c))));
}

/// Entanglement of a pure state as the von Neumann entropy (base 2) of the
/// reduced state on subsystem A.
inline double entanglement_pure_entropy(const PureState& psi) {
    const ComplexMatrix reduced = partial_trace(detail::projector(psi), Subsystem::B);
    const EigenResult eig = hermitian_eigenvalues(reduced);
    double s = 0.0;
    for (double lambda : eig.eigenvalues)
        if (lambda > 0.0) s -= lambda * std::log2(lambda);
    return s;
}

/// Smallest eigenvalue of the partial transpose. Negative iff the state is
/// entangled (Peres-Horodecki, exact in 2x2).
inline double ppt_min_eigenvalue(const DensityMatrix& rho) {
    return min_eigenvalue(partial_transpose_b(rho.matrix()));
}

inline bool is_separable(const DensityMatrix& rho, double tol = kDefaultPsdTol) {
    if (!(tol >= 0.0))
        throw std::invalid_argument("is_separable: tolerance must be non-negative");
    return ppt_min_eigenvalue(rho) >= -tol;
}

namespace detail {

// Rank-revealing Cholesky with diagonal pivoting for a PSD matrix within
// tolerance: P A P^T = L L^dagger. Returns the permutation and the number of
// accepted pivots; trailing columns of l are zero.
struct SemidefCholesky {
    std::array<int, 4> perm;
    ComplexMatrix l;
    int rank;
};

inline SemidefCholesky semidef_cholesky(const ComplexMatrix& a0) {
    const int n = a0.dim();
    ComplexMatrix a = a0;
    SemidefCholesky out{{0, 1, 2, 3}, ComplexMatrix(n), 0};

    double max_diag = 0.0;
    for (int i = 0; i < n; ++i) max_diag = std::max(max_diag, std::abs(a(i, i).real()));
    const double cut = 64.0 * 2.220446049250313e-16 * std::max(max_diag, 1e-300);

    for (int k = 0; k < n; ++k) {
        int p = k;
        for (int j = k + 1; j < n; ++j)
            if (a(j, j).real() > a(p, p).real()) p = j;
        if (p != k) {
            std::swap(out.perm[static_cast<size_t>(k)], out.perm[static_cast<size_t>(p)]);
            for (int j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
            for (int j = 0; j < n; ++j) std::swap(a(j, k), a(j, p));
            for (int j = 0; j < n; ++j) std::swap(out.l(k, j), out.l(p, j));
        }
        const double d = a(k, k).real();
        if (d <= cut) break;
        const double root = std::sqrt(d);
        out.l(k, k) = root;
        for (int j = k + 1; j < n; ++j) out.l(j, k) = a(j, k) / root;
        for (int j = k + 1; j < n; ++j)
            for (int i = k + 1; i < n; ++i)
                a(j, i) -= out.l(j, k) * std::conj(out.l(i, k));
        out.rank = k + 1;
    }
    return out;
}

}  // namespace detail

/// Wootters concurrence of a mixed two-qubit state,
/// C = max(0, l1 - l2 - l3 - l4) with l_k the descending square roots of the
/// eigenvalues of rho * rho_tilde, rho_tilde = (sy x sy) conj(rho) (sy x sy).
/// The product is not Hermitian, so its spectrum is taken from the similar
/// Hermitian matrix L^dagger rho_tilde L built from a pivoted Cholesky factor
/// of rho; this keeps degenerate spectra at full accuracy with no matrix
/// square root.
inline double wootters_concurrence_mixed(const DensityMatrix& rho) {
    const ComplexMatrix spin_flip = kron(pauli(2), pauli(2));
    const ComplexMatrix tilde = spin_flip * conjugate(rho.matrix()) * spin_flip;

    const detail::SemidefCholesky ch = detail::semidef_cholesky(rho.matrix());
    ComplexMatrix tilde_p(4);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            tilde_p(r, c) = tilde(ch.perm[static_cast<size_t>(r)], ch.perm[static_cast<size_t>(c)]);
    const ComplexMatrix b = adjoint(ch.l) * tilde_p * ch.l;

    EigenResult eig = hermitian_eigenvalues(b);
    std::array<double, 4> lam{};
    for (int i = 0; i < 4; ++i)
        lam[static_cast<size_t>(i)] = std::sqrt(std::max(0.0, eig.eigenvalues[static_cast<size_t>(i)]));
    std::sort(lam.begin(), lam.end(), std::greater<>());
    return std::max(0.0, lam[0] - lam[1] - lam[2] - lam[3]);
}

/// Entanglement assigned by a separable-plus-pure decomposition with
/// separable weight lambda and pure entangled part psi: (1 - lambda) E(C(psi)).
inline double ls_entanglement_measure(double lambda, const PureState& psi) {
    if (!std::isfinite(lambda) || lambda < 0.0 || lambda > 1.0)
        throw std::invalid_argument("ls_entanglement_measure: lambda must lie in [0, 1], got " +
                                    std::to_string(lambda));
    return (1.0 - lambda) * entanglement_from_concurrence(concurrence_pure(psi));
}

}  // namespace qsep
