#include <catch2/catch_amalgamated.hpp>

#include <limits>

#include <qsep/states.hpp>

#include "random_fixtures.hpp"

using qsep::Complex;
using qsep::ComplexMatrix;

namespace {

double dist(const ComplexMatrix& a, const ComplexMatrix& b) {
    return qsep::frobenius_distance(a, b);
}

}  // namespace

TEST_CASE("pauli matrices satisfy the algebra") {
    for (int i = 1; i <= 3; ++i) {
        const ComplexMatrix sq = qsep::pauli(i) * qsep::pauli(i);
        CHECK(dist(sq, ComplexMatrix::identity(2)) <= 1e-15);
        CHECK(std::abs(qsep::trace(qsep::pauli(i))) <= 1e-15);
    }
    // sigma_x sigma_y = i sigma_z
    const ComplexMatrix xy = qsep::pauli(1) * qsep::pauli(2);
    CHECK(dist(xy, qsep::pauli(3) * Complex(0.0, 1.0)) <= 1e-15);
    CHECK_THROWS_AS(qsep::pauli(-1), std::invalid_argument);
    CHECK_THROWS_AS(qsep::pauli(4), std::invalid_argument);
}

TEST_CASE("pure states must be normalized and finite") {
    CHECK_THROWS_AS(qsep::PureState({0.5, 0.5, 0.0, 0.0}), std::invalid_argument);
    const double bad = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(qsep::PureState({Complex(bad), 0.0, 0.0, 0.0}), std::invalid_argument);

    const qsep::PureState psi({1.0, 0.0, 0.0, 0.0});
    CHECK(psi.amplitude(0) == Complex(1.0, 0.0));
    CHECK(psi.norm_squared() == Catch::Approx(1.0).margin(1e-15));
}

TEST_CASE("bell states are orthonormal") {
    const qsep::BellState kinds[] = {qsep::BellState::PhiPlus, qsep::BellState::PhiMinus,
                                     qsep::BellState::PsiPlus, qsep::BellState::PsiMinus};
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            const qsep::PureState a = qsep::bell_state(kinds[i]);
            const qsep::PureState b = qsep::bell_state(kinds[j]);
            Complex inner{0.0, 0.0};
            for (int k = 0; k < 4; ++k) inner += std::conj(a.amplitude(k)) * b.amplitude(k);
            CHECK(std::abs(inner - (i == j ? Complex(1.0) : Complex(0.0))) <= 1e-15);
        }
    }
}

TEST_CASE("parameter domains are validated") {
    CHECK_THROWS_AS(qsep::WernerParam(-0.1), std::invalid_argument);
    CHECK_THROWS_AS(qsep::WernerParam(1.1), std::invalid_argument);
    CHECK_THROWS_AS(qsep::WernerParam(std::numeric_limits<double>::quiet_NaN()),
                    std::invalid_argument);
    CHECK(qsep::WernerParam(0.5).epsilon() == 0.5);

    CHECK_THROWS_AS(qsep::ThetaParam(-0.1), std::invalid_argument);
    CHECK_THROWS_AS(qsep::ThetaParam(1.6), std::invalid_argument);
    CHECK_THROWS_AS(qsep::ThetaParam::from_sin2theta(-0.1), std::invalid_argument);
    CHECK_THROWS_AS(qsep::ThetaParam::from_sin2theta(1.1), std::invalid_argument);
}

TEST_CASE("theta parameter caches sin 2theta consistently") {
    for (double s : {0.1, 2.0 / 3.0, 0.75, 1.0}) {
        const qsep::ThetaParam p = qsep::ThetaParam::from_sin2theta(s);
        CHECK(p.sin2theta() == s);  // cached exactly, no round trip through asin
        CHECK(p.theta() <= std::numbers::pi / 4.0 + 1e-15);
        CHECK(std::sin(2.0 * p.theta()) == Catch::Approx(s).margin(1e-14));

        const qsep::ThetaParam m = p.mirrored();
        CHECK(m.sin2theta() == s);
        CHECK(m.theta() == Catch::Approx(std::numbers::pi / 2.0 - p.theta()).margin(1e-15));
    }
    const qsep::ThetaParam direct(0.2);
    CHECK(direct.sin2theta() == std::sin(0.4));
}

TEST_CASE("psi_theta interpolates between |01> and the singlet shape") {
    const qsep::PureState at0 = qsep::psi_theta(qsep::ThetaParam(0.0));
    CHECK(std::abs(at0.amplitude(1) - Complex(1.0)) <= 1e-15);
    CHECK(std::abs(at0.amplitude(2)) <= 1e-15);

    const qsep::PureState mid = qsep::psi_theta(qsep::ThetaParam(std::numbers::pi / 4.0));
    const double r = 1.0 / std::numbers::sqrt2;
    CHECK(std::abs(mid.amplitude(1) - Complex(r)) <= 1e-15);
    CHECK(std::abs(mid.amplitude(2) - Complex(-r)) <= 1e-15);
}

TEST_CASE("density matrix validation rejects malformed input") {
    CHECK_THROWS_AS(qsep::DensityMatrix(ComplexMatrix::identity(2)), std::invalid_argument);

    ComplexMatrix skew = ComplexMatrix::identity(4) * Complex(0.25);
    skew(0, 1) = Complex(0.0, 1e-6);
    CHECK_THROWS_AS(qsep::DensityMatrix(skew), qsep::NotHermitianError);

    CHECK_THROWS_AS(qsep::DensityMatrix(ComplexMatrix::identity(4)), std::invalid_argument);

    ComplexMatrix indef(4);
    indef(0, 0) = 0.75;
    indef(1, 1) = 0.75;
    indef(2, 2) = -0.25;
    indef(3, 3) = -0.25;
    CHECK_THROWS_AS(qsep::DensityMatrix(indef), std::invalid_argument);

    const qsep::DensityMatrix ok(ComplexMatrix::identity(4) * Complex(0.25), 1e-10);
    CHECK(ok.psd_tolerance() == 1e-10);
    CHECK_THROWS_AS(qsep::DensityMatrix(ok.matrix(), -1.0), std::invalid_argument);
}

TEST_CASE("standard states have the expected entries") {
    const ComplexMatrix mixed = qsep::maximally_mixed().matrix();
    CHECK(dist(mixed, ComplexMatrix::identity(4) * Complex(0.25)) == 0.0);
    CHECK(dist(qsep::werner(qsep::WernerParam(0.0)).matrix(), mixed) <= 1e-15);

    const ComplexMatrix singlet =
        qsep::pure_to_density(qsep::bell_state(qsep::BellState::PsiMinus)).matrix();
    CHECK(dist(qsep::werner(qsep::WernerParam(1.0)).matrix(), singlet) <= 1e-15);
    CHECK(std::abs(singlet(1, 1) - Complex(0.5)) <= 1e-15);
    CHECK(std::abs(singlet(1, 2) - Complex(-0.5)) <= 1e-15);

    const ComplexMatrix half = qsep::rho_half().matrix();
    CHECK(std::abs(half(0, 0) - Complex(0.125)) <= 1e-15);
    CHECK(std::abs(half(1, 1) - Complex(0.375)) <= 1e-15);
    CHECK(std::abs(half(2, 2) - Complex(0.375)) <= 1e-15);
    CHECK(std::abs(half(3, 3) - Complex(0.125)) <= 1e-15);
    CHECK(std::abs(half(1, 2) - Complex(-0.25)) <= 1e-15);
    CHECK(std::abs(half(0, 3)) <= 1e-15);
}

TEST_CASE("rho_half spectrum agrees with its power traces") {
    const ComplexMatrix half = qsep::rho_half().matrix();
    const qsep::EigenResult e = qsep::hermitian_eigenvalues(half);
    REQUIRE(e.eigenvalues.size() == 4);
    CHECK(e.eigenvalues[0] == Catch::Approx(0.125).margin(1e-12));
    CHECK(e.eigenvalues[1] == Catch::Approx(0.125).margin(1e-12));
    CHECK(e.eigenvalues[2] == Catch::Approx(0.125).margin(1e-12));
    CHECK(e.eigenvalues[3] == Catch::Approx(0.625).margin(1e-12));

    // Independent cross-checks by direct multiplication: tr rho^2 = 7/16 and
    // the eigenvalue product must equal det = (1/8)^3 (5/8) = 5/4096.
    CHECK(qsep::trace(half * half).real() == Catch::Approx(0.4375).margin(1e-14));
    double prod = 1.0;
    for (double v : e.eigenvalues) prod *= v;
    CHECK(prod == Catch::Approx(0.001220703125).margin(1e-14));
}

TEST_CASE("pseudo mixture basics") {
    const qsep::ThetaParam p = qsep::ThetaParam::from_sin2theta(0.6);
    CHECK_THROWS_AS(qsep::pseudo_mixture(p, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(qsep::pseudo_mixture(p, std::numeric_limits<double>::quiet_NaN()),
                    std::invalid_argument);
    CHECK(dist(qsep::pseudo_mixture(p, 0.0), qsep::rho_half().matrix()) <= 1e-15);
    CHECK(std::abs(qsep::trace(qsep::pseudo_mixture(p, 0.4)) - Complex(1.0)) <= 1e-14);
}

TEST_CASE("pseudo mixture has the predicted Bloch coefficients") {
    // (1+x) rho_half - x P(theta) in the Pauli basis: a = (0,0,-x cos2t),
    // b = -a, t = diag(x sin2t - (1+x)/2, same, -(1-x)/2).
    const double s = 0.6, x = 0.4;
    const double cos2t = 0.8;  // sqrt(1 - 0.36)
    const qsep::PauliForm f =
        qsep::to_pauli_form(qsep::pseudo_mixture(qsep::ThetaParam::from_sin2theta(s), x));
    CHECK(f.a[0] == Catch::Approx(0.0).margin(1e-12));
    CHECK(f.a[1] == Catch::Approx(0.0).margin(1e-12));
    CHECK(f.a[2] == Catch::Approx(-x * cos2t).margin(1e-12));
    CHECK(f.b[2] == Catch::Approx(x * cos2t).margin(1e-12));
    CHECK(f.t[0][0] == Catch::Approx(x * s - (1.0 + x) / 2.0).margin(1e-12));
    CHECK(f.t[1][1] == Catch::Approx(x * s - (1.0 + x) / 2.0).margin(1e-12));
    CHECK(f.t[2][2] == Catch::Approx(-(1.0 - x) / 2.0).margin(1e-12));
    CHECK(f.t[0][1] == Catch::Approx(0.0).margin(1e-12));
    CHECK(f.t[1][0] == Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("partial transpose shuffles within B blocks and is an involution") {
    ComplexMatrix m(4);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) m(r, c) = Complex(r * 4 + c, r - c);
    const ComplexMatrix pt = qsep::partial_transpose_b(m);
    CHECK(pt(0, 1) == m(1, 0));
    CHECK(pt(1, 0) == m(0, 1));
    CHECK(pt(0, 3) == m(1, 2));
    CHECK(pt(2, 3) == m(3, 2));
    CHECK(pt(0, 0) == m(0, 0));
    CHECK(pt(0, 2) == m(0, 2));

    auto gen = qsep_test::make_rng(41);
    const ComplexMatrix r = qsep_test::random_matrix(gen, 4);
    CHECK(dist(qsep::partial_transpose_b(qsep::partial_transpose_b(r)), r) == 0.0);
    CHECK_THROWS_AS(qsep::partial_transpose_b(ComplexMatrix(2)), std::invalid_argument);
}

TEST_CASE("partially transposed singlet has one negative eigenvalue") {
    const ComplexMatrix pt = qsep::partial_transpose_b(
        qsep::pure_to_density(qsep::bell_state(qsep::BellState::PsiMinus)).matrix());
    const qsep::EigenResult e = qsep::hermitian_eigenvalues(pt);
    CHECK(e.eigenvalues[0] == Catch::Approx(-0.5).margin(1e-12));
    CHECK(e.eigenvalues[1] == Catch::Approx(0.5).margin(1e-12));
    CHECK(e.eigenvalues[2] == Catch::Approx(0.5).margin(1e-12));
    CHECK(e.eigenvalues[3] == Catch::Approx(0.5).margin(1e-12));
}

TEST_CASE("partial trace contracts kronecker factors") {
    auto gen = qsep_test::make_rng(43);
    const ComplexMatrix a = qsep_test::random_matrix(gen, 2);
    const ComplexMatrix b = qsep_test::random_matrix(gen, 2);
    const ComplexMatrix ab = qsep::kron(a, b);
    CHECK(dist(qsep::partial_trace(ab, qsep::Subsystem::B), a * qsep::trace(b)) <= 1e-14);
    CHECK(dist(qsep::partial_trace(ab, qsep::Subsystem::A), b * qsep::trace(a)) <= 1e-14);
    CHECK_THROWS_AS(qsep::partial_trace(a, qsep::Subsystem::B), std::invalid_argument);

    const qsep::ThetaParam p(0.3);
    const ComplexMatrix reduced = qsep::partial_trace(
        qsep::pure_to_density(qsep::psi_theta(p)).matrix(), qsep::Subsystem::B);
    const double c = std::cos(0.3), s = std::sin(0.3);
    CHECK(std::abs(reduced(0, 0) - Complex(c * c)) <= 1e-15);
    CHECK(std::abs(reduced(1, 1) - Complex(s * s)) <= 1e-15);
    CHECK(std::abs(reduced(0, 1)) <= 1e-15);
}

TEST_CASE("pauli form round trips and matches the Werner pattern") {
    const qsep::PauliForm f = qsep::to_pauli_form(qsep::werner(qsep::WernerParam(0.6)).matrix());
    for (int i = 0; i < 3; ++i) {
        CHECK(f.a[static_cast<size_t>(i)] == Catch::Approx(0.0).margin(1e-12));
        CHECK(f.b[static_cast<size_t>(i)] == Catch::Approx(0.0).margin(1e-12));
        for (int j = 0; j < 3; ++j)
            CHECK(f.t[static_cast<size_t>(i)][static_cast<size_t>(j)] ==
                  Catch::Approx(i == j ? -0.6 : 0.0).margin(1e-12));
    }

    for (const ComplexMatrix& m :
         {qsep::werner(qsep::WernerParam(0.8)).matrix(),
          qsep::pseudo_mixture(qsep::ThetaParam::from_sin2theta(0.9), 0.5),
          qsep::maximally_mixed().matrix()}) {
        CHECK(dist(qsep::from_pauli_form(qsep::to_pauli_form(m)), m) <= 1e-12);
    }

    CHECK_THROWS_AS(qsep::to_pauli_form(ComplexMatrix::identity(4)), std::invalid_argument);
    ComplexMatrix skew = qsep::maximally_mixed().matrix();
    skew(0, 1) = Complex(0.0, 1e-3);
    CHECK_THROWS_AS(qsep::to_pauli_form(skew), qsep::NotHermitianError);

    qsep::PauliForm bad{};
    bad.t[1][2] = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(qsep::from_pauli_form(bad), std::invalid_argument);
}
