#pragma once

#include <optional>
#include <utility>

#include "entanglement.hpp"

namespace qsep {

/// Weighted split rho = lambda * separable_part + (1 - lambda) * P_entangled.
/// reconstruction_residual records the Frobenius distance to the state the
/// decomposition was assembled for.
struct LSDecomposition {
    double lambda;
    DensityMatrix separable_part;
    PureState entangled_part;
    double reconstruction_residual;
};

struct VerificationVerdict {
    bool pass;
    double reconstruction_residual;  ///< Frobenius distance to the target
    double state_margin;             ///< min eigenvalue of the separable part
    double ppt_margin;               ///< min eigenvalue of its partial transpose
    double normalization_error;      ///< | <psi|psi> - 1 | of the entangled part
};

/// Check a decomposition against a target: reconstruction within tol, the
/// separable part a valid state and PPT-separable (both within its stored psd
/// tolerance), and the entangled part normalized. Malformed inputs (lambda
/// outside [0,1], negative tol) are rejected; a failing verdict is returned,
/// not thrown.
inline VerificationVerdict verify_decomposition(const DensityMatrix& target,
                                                const LSDecomposition& d, double tol) {
    if (!std::isfinite(tol) || tol < 0.0)
        throw std::invalid_argument("verify_decomposition: tolerance must be non-negative");
    if (!std::isfinite(d.lambda) || d.lambda < 0.0 || d.lambda > 1.0)
        throw std::invalid_argument("verify_decomposition: lambda must lie in [0, 1], got " +
                                    std::to_string(d.lambda));

    const ComplexMatrix rebuilt =
        d.separable_part.matrix() * Complex(d.lambda) +
        detail::projector(d.entangled_part) * Complex(1.0 - d.lambda);

    VerificationVerdict v{};
    v.reconstruction_residual = frobenius_distance(rebuilt, target.matrix());
    v.state_margin = min_eigenvalue(d.separable_part.matrix());
    v.ppt_margin = ppt_min_eigenvalue(d.separable_part);
    v.normalization_error = std::abs(d.entangled_part.norm_squared() - 1.0);

    const double psd_tol = d.separable_part.psd_tolerance();
    v.pass = v.reconstruction_residual <= tol && v.state_margin >= -psd_tol &&
             v.ppt_margin >= -psd_tol && v.normalization_error <= kNormalizationTol;
    return v;
}

struct FeasibilityProfile {
    double pos_margin;  ///< min eigenvalue of the pseudo-mixture
    double ppt_margin;  ///< min eigenvalue of its partial transpose
};

/// Both margins of the pseudo-mixture at (theta, x). The decomposition at
/// weight x is admissible when both are (tolerably) non-negative.
inline FeasibilityProfile feasibility_profile(const ThetaParam& p, double x) {
    const ComplexMatrix m = pseudo_mixture(p, x);
    return {min_eigenvalue(m), min_eigenvalue(partial_transpose_b(m))};
}

struct SolverOptions {
    int grid_points = 4096;      ///< x samples on [0, x_cap]
    double x_cap = 3.0;          ///< search cap; positivity forces x <= 3 anyway
    double margin_tol = 1e-9;    ///< eigenvalue slack for feasible/infeasible calls
};

inline constexpr double kXResolution = 1e-10;
inline constexpr double kClosedFormTol = 1e-6;

struct FeasibilityResult {
    ThetaParam theta;
    bool feasible;
    std::optional<double> x_min;
    std::optional<double> delta_max;                 ///< 1 / (1 + x_min)
    std::pair<double, double> x_search_interval;     ///< refined bracket, or [0, x_cap]
    FeasibilityProfile min_eig_at_solution;          ///< margins at x_min, or at the
                                                     ///< most nearly feasible grid point
    std::optional<double> closed_form_x_min;
    std::optional<bool> closed_form_agrees;
};

/// 1 / (4 sin 2theta - 1) where the formula is meaningful (sin 2theta > 1/4).
inline std::optional<double> closed_form_x_min(const ThetaParam& p) {
    const double s = p.sin2theta();
    if (s <= 0.25) return std::nullopt;
    return 1.0 / (4.0 * s - 1.0);
}

/// 1 - 1 / (4 sin 2theta) on the same domain; equals 1/(1 + closed_form_x_min).
inline std::optional<double> closed_form_delta_max(const ThetaParam& p) {
    const double s = p.sin2theta();
    if (s <= 0.25) return std::nullopt;
    return 1.0 - 1.0 / (4.0 * s);
}

namespace detail {

inline void validate_solver_options(const SolverOptions& opts) {
    if (opts.grid_points < 2)
        throw std::invalid_argument("solver options: grid_points must be at least 2");
    if (!std::isfinite(opts.x_cap) || opts.x_cap <= 0.0)
        throw std::invalid_argument("solver options: x_cap must be positive");
    if (!std::isfinite(opts.margin_tol) || opts.margin_tol <= 0.0)
        throw std::invalid_argument("solver options: margin tolerance must be positive");
}

struct BranchSolution {
    bool feasible = false;
    double x_min = 0.0;
    std::pair<double, double> bracket{0.0, 0.0};
    FeasibilityProfile margins{0.0, 0.0};
};

// Grid scan from x = 0 upward for the first point with both margins >= -tol,
// then bisection of the bracketing interval down to kXResolution. Ties at
// exactly -tol count as feasible. When the located endpoint already has raw
// margins >= 0 the bisection refines the zero crossing itself, so the
// reported x_min is not biased low by the slack; the slack only decides
// feasible/infeasible classification.
inline BranchSolution solve_branch(const ThetaParam& p, const SolverOptions& opts) {
    const int n = opts.grid_points;
    const double step = opts.x_cap / (n - 1);
    auto worst_of = [](const FeasibilityProfile& f) {
        return std::min(f.pos_margin, f.ppt_margin);
    };

    BranchSolution sol;
    double best_worst = 0.0;
    bool have_best = false;
    int found = -1;
    FeasibilityProfile found_prof{0.0, 0.0};
    for (int i = 0; i < n; ++i) {
        const FeasibilityProfile prof = feasibility_profile(p, i * step);
        const double w = worst_of(prof);
        if (w >= -opts.margin_tol) {
            found = i;
            found_prof = prof;
            break;
        }
        if (!have_best || w > best_worst) {
            best_worst = w;
            have_best = true;
            sol.margins = prof;
        }
    }
    if (found < 0) return sol;

    sol.feasible = true;
    double hi = found * step;
    double lo = found == 0 ? 0.0 : (found - 1) * step;
    const double level = worst_of(found_prof) >= 0.0 ? 0.0 : -opts.margin_tol;
    while (hi - lo > kXResolution) {
        const double mid = 0.5 * (lo + hi);
        if (worst_of(feasibility_profile(p, mid)) >= level)
            hi = mid;
        else
            lo = mid;
    }
    sol.x_min = hi;
    sol.bracket = {lo, hi};
    sol.margins = feasibility_profile(p, hi);
    return sol;
}

}  // namespace detail

/// Smallest admissible weight x for the pseudo-mixture at theta, searched on a
/// dense grid over [0, x_cap] and refined by bisection. Both theta branches
/// (theta and pi/2 - theta share sin 2theta but flip cos 2theta) are solved
/// and the more permissive result is reported. When feasible, the closed form
/// 1/(4 sin 2theta - 1) is evaluated alongside and compared at 1e-6.
inline FeasibilityResult solve_quasi_optimal(const ThetaParam& p, const SolverOptions& opts = {}) {
    detail::validate_solver_options(opts);

    const detail::BranchSolution primary = detail::solve_branch(p, opts);
    const detail::BranchSolution mirrored = detail::solve_branch(p.mirrored(), opts);
    const detail::BranchSolution* win = &primary;
    if (mirrored.feasible && (!primary.feasible || mirrored.x_min < primary.x_min))
        win = &mirrored;

    FeasibilityResult out{p,           win->feasible, std::nullopt, std::nullopt,
                          {0.0, opts.x_cap}, win->margins,  std::nullopt, std::nullopt};
    if (!win->feasible) return out;

    if (win->x_min > 0.99 * opts.x_cap)
        throw std::runtime_error("solve_quasi_optimal: x_min " + std::to_string(win->x_min) +
                                 " within 1% of x_cap " + std::to_string(opts.x_cap) +
                                 "; raise the cap");

    out.x_min = win->x_min;
    out.delta_max = 1.0 / (1.0 + win->x_min);
    out.x_search_interval = win->bracket;
    out.closed_form_x_min = closed_form_x_min(p);
    if (out.closed_form_x_min)
        out.closed_form_agrees = std::abs(*out.x_min - *out.closed_form_x_min) <= kClosedFormTol;
    return out;
}

/// (1 - delta_max) * C(psi_theta) with the numeric delta_max. The closed form
/// predicts exactly 1/4 wherever it holds.
inline double concurrence_product(const ThetaParam& p, const SolverOptions& opts = {}) {
    const FeasibilityResult r = solve_quasi_optimal(p, opts);
    if (!r.feasible)
        throw std::invalid_argument("concurrence_product: no admissible decomposition at theta = " +
                                    std::to_string(p.theta()));
    return (1.0 - *r.delta_max) * concurrence_pure(psi_theta(p));
}

/// (1 - delta_max) * E(psi_theta) with E the reduced-state entropy. Matches
/// the concurrence product only at sin 2theta = 1.
inline double entropy_product(const ThetaParam& p, const SolverOptions& opts = {}) {
    const FeasibilityResult r = solve_quasi_optimal(p, opts);
    if (!r.feasible)
        throw std::invalid_argument("entropy_product: no admissible decomposition at theta = " +
                                    std::to_string(p.theta()));
    return (1.0 - *r.delta_max) * entanglement_pure_entropy(psi_theta(p));
}

/// Assemble the quasi-optimal decomposition of rho_half at theta:
/// lambda = delta_max, separable part the pseudo-mixture at x_min, entangled
/// part psi_theta. Throws when theta is infeasible.
inline LSDecomposition quasi_optimal_decomposition(const ThetaParam& p,
                                                   const SolverOptions& opts = {}) {
    const FeasibilityResult r = solve_quasi_optimal(p, opts);
    if (!r.feasible)
        throw std::invalid_argument(
            "quasi_optimal_decomposition: no admissible decomposition at theta = " +
            std::to_string(p.theta()));
    const double x = *r.x_min;
    const double delta = *r.delta_max;
    // The pseudo-mixture at the refined x_min can dip a hair below zero; admit
    // it at the solver's own slack.
    DensityMatrix separable(pseudo_mixture(p, x), opts.margin_tol);
    const PureState entangled = psi_theta(p);
    const ComplexMatrix rebuilt = separable.matrix() * Complex(delta) +
                                  detail::projector(entangled) * Complex(1.0 - delta);
    const double residual = frobenius_distance(rebuilt, rho_half().matrix());
    return LSDecomposition{delta, separable, entangled, residual};
}

/// The exact optimal decomposition of rho_half: lambda = 3/4 with separable
/// part (2/3) I/4 + (1/3) |Psi-><Psi-| and entangled part |Psi->.
inline LSDecomposition optimal_for_rho_half() {
    const PureState psi = bell_state(BellState::PsiMinus);
    const ComplexMatrix sep = ComplexMatrix::identity(4) * Complex(2.0 / 3.0 / 4.0) +
                              detail::projector(psi) * Complex(1.0 / 3.0);
    DensityMatrix separable(sep);
    const double lambda = 0.75;
    const ComplexMatrix rebuilt =
        separable.matrix() * Complex(lambda) + detail::projector(psi) * Complex(1.0 - lambda);
    const double residual = frobenius_distance(rebuilt, rho_half().matrix());
    return LSDecomposition{lambda, separable, psi, residual};
}

inline constexpr double kPublishedBoundary = 7.0 / 12.0;  ///< claimed feasibility threshold

struct ThresholdSample {
    double sin2theta;
    bool feasible;
    std::optional<double> x_min;
};

struct ThresholdReport {
    double boundary_sin2theta;  ///< feasible edge of the final bracket
    double resolution;
    double published_claim;     ///< 7/12
    bool agrees_with_published;
    std::vector<ThresholdSample> profile;  ///< every sample probed, in order
};

struct ThresholdScanOptions {
    double resolution = 1e-4;
    double s_min = 0.0;
    double s_max = 1.0;
    double coarse_step = 0.01;
    SolverOptions solver{};
};

/// Locate the feasible/infeasible boundary in sin 2theta: descend from s_max
/// in coarse steps until the first infeasible sample, then bisect the bracket
/// to the requested resolution. The verdict against the published 7/12 claim
/// is descriptive; disagreement is a finding, not an error.
inline ThresholdReport threshold_scan(const ThresholdScanOptions& opts = {}) {
    if (!std::isfinite(opts.resolution) || opts.resolution <= 0.0)
        throw std::invalid_argument("threshold_scan: resolution must be positive");
    if (!(opts.s_min >= 0.0) || !(opts.s_max <= 1.0) || !(opts.s_min < opts.s_max))
        throw std::invalid_argument("threshold_scan: need 0 <= s_min < s_max <= 1");
    if (!std::isfinite(opts.coarse_step) || opts.coarse_step <= 0.0)
        throw std::invalid_argument("threshold_scan: coarse step must be positive");
    detail::validate_solver_options(opts.solver);

    ThresholdReport report{0.0, opts.resolution, kPublishedBoundary, false, {}};
    auto probe = [&](double s) {
        const FeasibilityResult r =
            solve_quasi_optimal(ThetaParam::from_sin2theta(s), opts.solver);
        report.profile.push_back({s, r.feasible, r.x_min});
        return r.feasible;
    };

    double hi = 0.0;
    double lo = 0.0;
    bool have_feasible = false;
    bool bracketed = false;
    for (double s = opts.s_max;; s = std::max(s - opts.coarse_step, opts.s_min)) {
        if (probe(s)) {
            have_feasible = true;
            hi = s;
        } else {
            if (!have_feasible)
                throw std::runtime_error(
                    "threshold_scan: no feasible sample in range; raise s_max");
            lo = s;
            bracketed = true;
            break;
        }
        if (s == opts.s_min) break;
    }
    if (!bracketed)
        throw std::runtime_error(
            "threshold_scan: every sample in range is feasible; lower s_min");

    while (hi - lo > opts.resolution) {
        const double mid = 0.5 * (lo + hi);
        if (probe(mid))
            hi = mid;
        else
            lo = mid;
    }
    report.boundary_sin2theta = hi;
    report.agrees_with_published = std::abs(hi - kPublishedBoundary) <= opts.resolution;
    return report;
}

}  // namespace qsep
