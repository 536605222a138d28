#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "complex_matrix.hpp"

namespace qsep {

inline constexpr double kHermiticityTol = 1e-12;
inline constexpr double kDefaultPsdTol = 1e-9;
inline constexpr double kEigenResidualBound = 1e-10;

/// Thrown when an operation requires a Hermitian matrix and the input is not
/// one within kHermiticityTol. Carries the measured asymmetry.
class NotHermitianError : public std::invalid_argument {
public:
    explicit NotHermitianError(double asymmetry)
        : std::invalid_argument("matrix is not Hermitian: max |M - adjoint(M)| = " +
                                std::to_string(asymmetry)),
          asymmetry_(asymmetry) {}

    double asymmetry() const noexcept { return asymmetry_; }

private:
    double asymmetry_;
};

struct EigenResult {
    std::vector<double> eigenvalues;  ///< ascending
    double residual;                  ///< max_k ||M v_k - lambda_k v_k||_2
};

namespace detail {

// Cyclic Jacobi on a real symmetric matrix of dimension m <= 8, row-major in s.
// Sweep order is fixed (p ascending, q ascending), so results are fully
// deterministic. When v is non-null it must hold the identity on entry and
// receives the accumulated rotations (eigenvectors as columns).
inline void jacobi_symmetric(double* s, int m, double* v) {
    auto a = [&](int r, int c) -> double& { return s[r * m + c]; };

    double scale2 = 0.0;
    for (int i = 0; i < m * m; ++i) scale2 += s[i] * s[i];
    const double stop = scale2 * 1e-30 + 1e-300;

    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < m; ++p)
            for (int q = p + 1; q < m; ++q) off += a(p, q) * a(p, q);
        if (off <= stop) return;

        for (int p = 0; p < m; ++p) {
            for (int q = p + 1; q < m; ++q) {
                const double apq = a(p, q);
                if (std::abs(apq) == 0.0) continue;
                const double tau = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double sn = t * c;

                const double app = a(p, p), aqq = a(q, q);
                a(p, p) = app - t * apq;
                a(q, q) = aqq + t * apq;
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                for (int k = 0; k < m; ++k) {
                    if (k == p || k == q) continue;
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - sn * akq;
                    a(p, k) = a(k, p);
                    a(k, q) = sn * akp + c * akq;
                    a(q, k) = a(k, q);
                }
                if (v != nullptr) {
                    for (int k = 0; k < m; ++k) {
                        const double vkp = v[k * m + p], vkq = v[k * m + q];
                        v[k * m + p] = c * vkp - sn * vkq;
                        v[k * m + q] = sn * vkp + c * vkq;
                    }
                }
            }
        }
    }
}

// Real symmetric embedding of a Hermitian M = A + iB: E = [[A, -B], [B, A]].
// Each eigenvalue of M appears twice in E; an embedded eigenvector (x; y)
// maps back to the complex eigenvector x + iy. The blocks are symmetrized so
// that asymmetry within the Hermiticity tolerance cannot upset Jacobi.
inline void embed_hermitian(const ComplexMatrix& m, double* e, int n) {
    const int dim = 2 * n;
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            const double re = 0.5 * (m(r, c).real() + m(c, r).real());
            const double im = 0.5 * (m(r, c).imag() - m(c, r).imag());
            e[r * dim + c] = re;
            e[(n + r) * dim + (n + c)] = re;
            e[r * dim + (n + c)] = -im;
            e[(n + r) * dim + c] = im;
        }
    }
}

}  // namespace detail

/// Eigenvalues of a Hermitian matrix, ascending, with the worst eigenpair
/// residual. Implemented as cyclic Jacobi on the 2n x 2n real symmetric
/// embedding; the doubled spectrum is deduplicated by taking every second
/// sorted value. Throws NotHermitianError when the input fails the 1e-12
/// Hermiticity check, std::runtime_error if the residual bound is missed.
inline EigenResult hermitian_eigenvalues(const ComplexMatrix& m) {
    const double asym = hermitian_asymmetry(m);
    if (asym > kHermiticityTol) throw NotHermitianError(asym);

    const int n = m.dim();
    const int dim = 2 * n;
    std::array<double, 64> e{};
    std::array<double, 64> v{};
    detail::embed_hermitian(m, e.data(), n);
    for (int i = 0; i < dim; ++i) v[static_cast<size_t>(i) * dim + i] = 1.0;
    detail::jacobi_symmetric(e.data(), dim, v.data());

    std::array<int, 8> order{};
    std::iota(order.begin(), order.begin() + dim, 0);
    std::sort(order.begin(), order.begin() + dim, [&](int i, int j) {
        return e[static_cast<size_t>(i) * dim + i] < e[static_cast<size_t>(j) * dim + j];
    });

    EigenResult out;
    out.eigenvalues.reserve(static_cast<size_t>(n));
    out.residual = 0.0;
    for (int k = 0; k < dim; k += 2) {
        const int col = order[static_cast<size_t>(k)];
        const double lambda = e[static_cast<size_t>(col) * dim + col];
        out.eigenvalues.push_back(lambda);

        // Complex eigenvector from the embedded column, residual ||Mv - lambda v||.
        std::array<Complex, 4> vec{};
        for (int r = 0; r < n; ++r)
            vec[static_cast<size_t>(r)] =
                Complex(v[static_cast<size_t>(r) * dim + col],
                        v[static_cast<size_t>(n + r) * dim + col]);
        double r2 = 0.0;
        for (int r = 0; r < n; ++r) {
            Complex acc{0.0, 0.0};
            for (int c = 0; c < n; ++c) acc += m(r, c) * vec[static_cast<size_t>(c)];
            acc -= lambda * vec[static_cast<size_t>(r)];
            r2 += std::norm(acc);
        }
        out.residual = std::max(out.residual, std::sqrt(r2));
    }
    if (out.residual > kEigenResidualBound)
        throw std::runtime_error("hermitian_eigenvalues: residual " +
                                 std::to_string(out.residual) + " exceeds bound");
    return out;
}

/// Smallest eigenvalue only. Same Jacobi pipeline without eigenvector
/// accumulation, which matters in the inner loop of the feasibility solver.
inline double min_eigenvalue(const ComplexMatrix& m) {
    const double asym = hermitian_asymmetry(m);
    if (asym > kHermiticityTol) throw NotHermitianError(asym);

    const int n = m.dim();
    const int dim = 2 * n;
    std::array<double, 64> e{};
    detail::embed_hermitian(m, e.data(), n);
    detail::jacobi_symmetric(e.data(), dim, nullptr);

    double lo = e[0];
    for (int i = 1; i < dim; ++i) lo = std::min(lo, e[static_cast<size_t>(i) * dim + i]);
    return lo;
}

inline bool is_psd(const ComplexMatrix& m, double tol = kDefaultPsdTol) {
    if (!(tol >= 0.0))
        throw std::invalid_argument("is_psd: tolerance must be non-negative");
    return min_eigenvalue(m) >= -tol;
}

}  // namespace qsep
