#pragma once

#include <numbers>

#include "complex_matrix.hpp"
#include "hermitian_eig.hpp"

namespace qsep {

inline constexpr double kNormalizationTol = 1e-12;

/// Pauli basis accessor: pauli(0) = I, pauli(1) = sigma_x, pauli(2) = sigma_y,
/// pauli(3) = sigma_z.
inline const ComplexMatrix& pauli(int i) {
    static const std::array<ComplexMatrix, 4> basis = [] {
        std::array<ComplexMatrix, 4> b{ComplexMatrix(2), ComplexMatrix(2), ComplexMatrix(2),
                                       ComplexMatrix(2)};
        b[0] = ComplexMatrix::identity(2);
        b[1](0, 1) = 1.0;
        b[1](1, 0) = 1.0;
        b[2](0, 1) = Complex(0.0, -1.0);
        b[2](1, 0) = Complex(0.0, 1.0);
        b[3](0, 0) = 1.0;
        b[3](1, 1) = -1.0;
        return b;
    }();
    if (i < 0 || i > 3) throw std::invalid_argument("pauli: index must be 0..3");
    return basis[static_cast<size_t>(i)];
}

/// Normalized two-qubit pure state, amplitudes ordered |00>, |01>, |10>, |11>
/// with subsystem A the left tensor factor. Construction rejects amplitudes
/// whose norm deviates from 1 by more than 1e-12, or non-finite entries.
class PureState {
public:
    explicit PureState(const std::array<Complex, 4>& amplitudes) : amps_(amplitudes) {
        double n2 = 0.0;
        for (const Complex& c : amps_) {
            if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
                throw std::invalid_argument("PureState: non-finite amplitude");
            n2 += std::norm(c);
        }
        if (std::abs(n2 - 1.0) > kNormalizationTol)
            throw std::invalid_argument("PureState: amplitudes not normalized, <psi|psi> = " +
                                        std::to_string(n2));
    }

    const std::array<Complex, 4>& amplitudes() const { return amps_; }
    Complex amplitude(int i) const { return amps_[static_cast<size_t>(i)]; }

    double norm_squared() const {
        double n2 = 0.0;
        for (const Complex& c : amps_) n2 += std::norm(c);
        return n2;
    }

private:
    std::array<Complex, 4> amps_;
};

enum class BellState { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

inline PureState bell_state(BellState which) {
    const double r = 1.0 / std::numbers::sqrt2;
    switch (which) {
        case BellState::PhiPlus: return PureState({Complex(r), 0.0, 0.0, Complex(r)});
        case BellState::PhiMinus: return PureState({Complex(r), 0.0, 0.0, Complex(-r)});
        case BellState::PsiPlus: return PureState({0.0, Complex(r), Complex(r), 0.0});
        case BellState::PsiMinus: return PureState({0.0, Complex(r), Complex(-r), 0.0});
    }
    throw std::invalid_argument("bell_state: unknown state");
}

/// Werner mixing weight epsilon in [0, 1].
class WernerParam {
public:
    explicit WernerParam(double epsilon) : epsilon_(epsilon) {
        if (!std::isfinite(epsilon) || epsilon < 0.0 || epsilon > 1.0)
            throw std::invalid_argument("WernerParam: epsilon must lie in [0, 1], got " +
                                        std::to_string(epsilon));
    }
    double epsilon() const { return epsilon_; }

private:
    double epsilon_;
};

/// Angle parameter theta in [0, pi/2] with a cached sin(2 theta). Constructing
/// from sin 2theta picks the branch theta <= pi/4 and caches the given value
/// exactly; mirrored() yields the pi/2 - theta branch, which shares sin 2theta
/// and flips the sign of cos 2theta.
class ThetaParam {
public:
    explicit ThetaParam(double theta) : ThetaParam(theta, std::sin(2.0 * theta)) {}

    static ThetaParam from_sin2theta(double s) {
        if (!std::isfinite(s) || s < 0.0 || s > 1.0)
            throw std::invalid_argument("ThetaParam: sin 2theta must lie in [0, 1], got " +
                                        std::to_string(s));
        return ThetaParam(0.5 * std::asin(s), s);
    }

    double theta() const { return theta_; }
    double sin2theta() const { return sin2theta_; }

    ThetaParam mirrored() const { return ThetaParam(std::numbers::pi / 2.0 - theta_, sin2theta_); }

private:
    ThetaParam(double theta, double s2) : theta_(theta), sin2theta_(s2) {
        if (!std::isfinite(theta) || theta < 0.0 || theta > std::numbers::pi / 2.0)
            throw std::invalid_argument("ThetaParam: theta must lie in [0, pi/2], got " +
                                        std::to_string(theta));
    }

    double theta_;
    double sin2theta_;
};

/// |Psi(theta)> = cos(theta)|01> - sin(theta)|10>.
inline PureState psi_theta(const ThetaParam& p) {
    return PureState({0.0, Complex(std::cos(p.theta())), Complex(-std::sin(p.theta())), 0.0});
}

/// Validated two-qubit density matrix: Hermitian within 1e-12, unit trace
/// within 1e-12, and positive semidefinite within psd_tolerance (default
/// 1e-9). The tolerance used at construction is retained for later checks.
class DensityMatrix {
public:
    explicit DensityMatrix(const ComplexMatrix& m, double psd_tolerance = kDefaultPsdTol)
        : matrix_(m), psd_tolerance_(psd_tolerance) {
        if (m.dim() != 4)
            throw std::invalid_argument("DensityMatrix: expected a 4x4 matrix, got dim " +
                                        std::to_string(m.dim()));
        if (!(psd_tolerance >= 0.0))
            throw std::invalid_argument("DensityMatrix: psd tolerance must be non-negative");
        if (!m.is_finite()) throw std::invalid_argument("DensityMatrix: non-finite entry");
        const double asym = hermitian_asymmetry(m);
        if (asym > kHermiticityTol) throw NotHermitianError(asym);
        const double tr_err = std::abs(trace(m) - Complex(1.0));
        if (tr_err > kHermiticityTol)
            throw std::invalid_argument("DensityMatrix: trace deviates from 1 by " +
                                        std::to_string(tr_err));
        const double lo = min_eigenvalue(m);
        if (lo < -psd_tolerance_)
            throw std::invalid_argument("DensityMatrix: not positive semidefinite, min eigenvalue " +
                                        std::to_string(lo));
    }

    const ComplexMatrix& matrix() const { return matrix_; }
    double psd_tolerance() const { return psd_tolerance_; }

private:
    ComplexMatrix matrix_;
    double psd_tolerance_;
};

namespace detail {

inline ComplexMatrix projector(const PureState& psi) {
    ComplexMatrix m(4);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) m(r, c) = psi.amplitude(r) * std::conj(psi.amplitude(c));
    return m;
}

}  // namespace detail

inline DensityMatrix pure_to_density(const PureState& psi) {
    return DensityMatrix(detail::projector(psi));
}

inline DensityMatrix maximally_mixed() {
    return DensityMatrix(ComplexMatrix::identity(4) * Complex(0.25));
}

/// Werner family (1 - eps) I/4 + eps |Psi-><Psi-|. Inseparable iff eps > 1/3.
inline DensityMatrix werner(const WernerParam& p) {
    const double e = p.epsilon();
    const ComplexMatrix m = ComplexMatrix::identity(4) * Complex((1.0 - e) / 4.0) +
                            pure_to_density(bell_state(BellState::PsiMinus)).matrix() * Complex(e);
    return DensityMatrix(m);
}

/// The epsilon = 1/2 Werner state, the target of every decomposition here.
inline DensityMatrix rho_half() { return werner(WernerParam(0.5)); }

/// Pseudo-mixture (1 + x) rho_half - x |Psi(theta)><Psi(theta)|. For x > 0
/// this is generally not a state; its positivity and PPT margins define the
/// feasibility problem. Requires x >= 0.
inline ComplexMatrix pseudo_mixture(const ThetaParam& p, double x) {
    if (!std::isfinite(x) || x < 0.0)
        throw std::invalid_argument("pseudo_mixture: x must be non-negative, got " +
                                    std::to_string(x));
    static const ComplexMatrix half = rho_half().matrix();
    return half * Complex(1.0 + x) - detail::projector(psi_theta(p)) * Complex(x);
}

/// Partial transpose on subsystem B: out[(a,b'),(a',b)] = in[(a,b),(a',b')].
/// An involution; the A-side variant has the identical spectrum.
inline ComplexMatrix partial_transpose_b(const ComplexMatrix& m) {
    if (m.dim() != 4)
        throw std::invalid_argument("partial_transpose_b: expected a 4x4 matrix");
    ComplexMatrix out(4);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int a2 = 0; a2 < 2; ++a2)
                for (int b2 = 0; b2 < 2; ++b2)
                    out(2 * a + b2, 2 * a2 + b) = m(2 * a + b, 2 * a2 + b2);
    return out;
}

enum class Subsystem { A, B };

/// Trace out one subsystem of a 4x4 operator, leaving a 2x2 operator on the
/// other. Tracing B keeps A (the left factor) and vice versa.
inline ComplexMatrix partial_trace(const ComplexMatrix& m, Subsystem traced_out) {
    if (m.dim() != 4) throw std::invalid_argument("partial_trace: expected a 4x4 matrix");
    ComplexMatrix out(2);
    if (traced_out == Subsystem::B) {
        for (int a = 0; a < 2; ++a)
            for (int a2 = 0; a2 < 2; ++a2)
                out(a, a2) = m(2 * a + 0, 2 * a2 + 0) + m(2 * a + 1, 2 * a2 + 1);
    } else {
        for (int b = 0; b < 2; ++b)
            for (int b2 = 0; b2 < 2; ++b2)
                out(b, b2) = m(0 + b, 0 + b2) + m(2 + b, 2 + b2);
    }
    return out;
}

/// Bloch-basis coefficients of a Hermitian unit-trace 4x4 operator rho:
/// rho = (1/4)[I + sum_i a_i s_i x I + sum_i b_i I x s_i + sum_ij t_ij s_i x s_j].
struct PauliForm {
    std::array<double, 3> a;
    std::array<double, 3> b;
    std::array<std::array<double, 3>, 3> t;
};

/// Extract the Pauli form. Input must be Hermitian within 1e-12 with unit
/// trace within 1e-12 (positivity is not required; pseudo-mixtures qualify).
/// Coefficient imaginary parts are checked to vanish and discarded.
inline PauliForm to_pauli_form(const ComplexMatrix& m) {
    if (m.dim() != 4) throw std::invalid_argument("to_pauli_form: expected a 4x4 matrix");
    const double asym = hermitian_asymmetry(m);
    if (asym > kHermiticityTol) throw NotHermitianError(asym);
    const double tr_err = std::abs(trace(m) - Complex(1.0));
    if (tr_err > kHermiticityTol)
        throw std::invalid_argument("to_pauli_form: trace deviates from 1 by " +
                                    std::to_string(tr_err));

    auto coeff = [&](const ComplexMatrix& op) {
        const Complex t = trace(m * op);
        if (std::abs(t.imag()) > kHermiticityTol)
            throw std::runtime_error("to_pauli_form: coefficient has imaginary part " +
                                     std::to_string(t.imag()));
        return t.real();
    };

    PauliForm f{};
    for (int i = 0; i < 3; ++i) {
        f.a[static_cast<size_t>(i)] = coeff(kron(pauli(i + 1), pauli(0)));
        f.b[static_cast<size_t>(i)] = coeff(kron(pauli(0), pauli(i + 1)));
        for (int j = 0; j < 3; ++j)
            f.t[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                coeff(kron(pauli(i + 1), pauli(j + 1)));
    }
    return f;
}

inline ComplexMatrix from_pauli_form(const PauliForm& f) {
    for (int i = 0; i < 3; ++i) {
        if (!std::isfinite(f.a[static_cast<size_t>(i)]) || !std::isfinite(f.b[static_cast<size_t>(i)]))
            throw std::invalid_argument("from_pauli_form: non-finite coefficient");
        for (int j = 0; j < 3; ++j)
            if (!std::isfinite(f.t[static_cast<size_t>(i)][static_cast<size_t>(j)]))
                throw std::invalid_argument("from_pauli_form: non-finite coefficient");
    }
    ComplexMatrix m = ComplexMatrix::identity(4);
    for (int i = 0; i < 3; ++i) {
        m += kron(pauli(i + 1), pauli(0)) * Complex(f.a[static_cast<size_t>(i)]);
        m += kron(pauli(0), pauli(i + 1)) * Complex(f.b[static_cast<size_t>(i)]);
        for (int j = 0; j < 3; ++j)
            m += kron(pauli(i + 1), pauli(j + 1)) *
                 Complex(f.t[static_cast<size_t>(i)][static_cast<size_t>(j)]);
    }
    return m * Complex(0.25);
}

}  // namespace qsep
