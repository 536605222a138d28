#pragma once

#include <limits>

#include "scan_io.hpp"

namespace qsep {

enum class CheckKind {
    Near,    ///< pass iff |actual - expected| <= tolerance
    AtLeast, ///< pass iff actual >= expected - tolerance
    Apart    ///< pass iff |actual - expected| > tolerance
};

struct VerificationCheck {
    int criterion;
    std::string name;
    CheckKind kind;
    double expected;
    double actual;
    double tolerance;
    bool pass;
};

struct VerificationReport {
    std::vector<VerificationCheck> checks;
    bool all_pass;
};

namespace detail {

inline void add_check(VerificationReport& rep, int criterion, std::string name, CheckKind kind,
                      double expected, double actual, double tol) {
    bool pass = false;
    switch (kind) {
        case CheckKind::Near: pass = std::abs(actual - expected) <= tol; break;
        case CheckKind::AtLeast: pass = actual >= expected - tol; break;
        case CheckKind::Apart: pass = std::abs(actual - expected) > tol; break;
    }
    rep.checks.push_back({criterion, std::move(name), kind, expected, actual, tol, pass});
    rep.all_pass = rep.all_pass && rep.checks.back().pass;
}

}  // namespace detail

/// Locate the epsilon where the Werner partial-transpose spectrum changes
/// sign, by bisection on the smallest eigenvalue. Exact answer is 1/3.
inline double werner_separability_boundary() {
    double lo = 0.0, hi = 1.0;
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        if (ppt_min_eigenvalue(werner(WernerParam(mid))) >= 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

/// Fixture suite behind the verify command: the optimal decomposition of
/// rho_half, its entanglement value, closed-form agreement of the
/// quasi-optimal solver on a reference grid, both product identities, and the
/// Werner separability boundary. Every check carries expected, actual and
/// tolerance so failures are directly readable.
inline VerificationReport run_verification(const SolverOptions& opts = {}) {
    constexpr double nan_v = std::numeric_limits<double>::quiet_NaN();
    VerificationReport rep{{}, true};

    const LSDecomposition optimal = optimal_for_rho_half();
    const VerificationVerdict verdict = verify_decomposition(rho_half(), optimal, 1e-12);
    detail::add_check(rep, 1, "optimal lambda", CheckKind::Near, 0.75, optimal.lambda, 1e-12);
    detail::add_check(rep, 1, "optimal reconstruction residual", CheckKind::Near, 0.0,
                      verdict.reconstruction_residual, 1e-12);
    detail::add_check(rep, 1, "optimal separable part min eigenvalue", CheckKind::AtLeast, 0.0,
                      verdict.state_margin, 1e-12);
    detail::add_check(rep, 1, "optimal separable part PPT margin", CheckKind::AtLeast, 0.0,
                      verdict.ppt_margin, 1e-12);
    detail::add_check(rep, 1, "optimal decomposition verdict", CheckKind::Near, 1.0,
                      verdict.pass ? 1.0 : 0.0, 0.0);

    detail::add_check(rep, 2, "entanglement at lambda = 3/4", CheckKind::Near, 0.25,
                      ls_entanglement_measure(0.75, bell_state(BellState::PsiMinus)), 1e-12);

    const double grid[] = {0.70, 0.75, 0.80, 0.90, 1.00};
    for (double s : grid) {
        const ThetaParam p = ThetaParam::from_sin2theta(s);
        const FeasibilityResult r = solve_quasi_optimal(p, opts);
        const std::string tag = " at sin2theta = " + format_real(s);

        const double cf_x = 1.0 / (4.0 * s - 1.0);
        const double cf_delta = 1.0 - 1.0 / (4.0 * s);
        const double x = r.feasible ? *r.x_min : nan_v;
        const double delta = r.feasible ? *r.delta_max : nan_v;
        detail::add_check(rep, 3, "x_min vs closed form" + tag, CheckKind::Near, cf_x, x, 1e-6);
        detail::add_check(rep, 3, "delta_max vs closed form" + tag, CheckKind::Near, cf_delta,
                          delta, 1e-6);

        const double c_prod =
            r.feasible ? (1.0 - delta) * concurrence_pure(psi_theta(p)) : nan_v;
        detail::add_check(rep, 4, "concurrence product" + tag, CheckKind::Near, 0.25, c_prod,
                          1e-6);

        const double e_prod =
            r.feasible ? (1.0 - delta) * entanglement_pure_entropy(psi_theta(p)) : nan_v;
        if (s <= 0.9)
            detail::add_check(rep, 5, "entropy product differs from 1/4" + tag, CheckKind::Apart,
                              0.25, e_prod, 1e-3);
        else
            detail::add_check(rep, 5, "entropy product" + tag, CheckKind::Near, 0.25, e_prod,
                              1e-9);
    }

    detail::add_check(rep, 6, "Werner separability boundary", CheckKind::Near, 1.0 / 3.0,
                      werner_separability_boundary(), 1e-9);
    return rep;
}

inline std::string render_check(const VerificationCheck& c) {
    std::string line = c.pass ? "[ OK ] " : "[FAIL] ";
    line += c.name;
    switch (c.kind) {
        case CheckKind::Near:
            line += ": expected " + format_real(c.expected) + ", actual " + format_real(c.actual) +
                    ", tolerance " + format_real(c.tolerance);
            break;
        case CheckKind::AtLeast:
            line += ": actual " + format_real(c.actual) + ", required >= " +
                    format_real(c.expected - c.tolerance);
            break;
        case CheckKind::Apart:
            line += ": actual " + format_real(c.actual) + ", required to differ from " +
                    format_real(c.expected) + " by more than " + format_real(c.tolerance);
            break;
    }
    return line;
}

}  // namespace qsep
