#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <qsep/scan_io.hpp>
#include <qsep/serialize.hpp>
#include <qsep/verification.hpp>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitBadArgs = 2;
constexpr int kExitInfeasible = 3;

struct SolverFlags {
    int grid = 4096;
    double x_cap = 3.0;
    double tol = 1e-9;
};

void attach_solver_flags(CLI::App* cmd, SolverFlags& f) {
    cmd->add_option("--grid", f.grid, "x grid points on [0, x-cap]")->capture_default_str();
    cmd->add_option("--x-cap", f.x_cap, "upper end of the x search range")->capture_default_str();
    cmd->add_option("--tol", f.tol, "eigenvalue slack for feasibility classification")
        ->capture_default_str();
}

qsep::SolverOptions to_options(const SolverFlags& f) { return {f.grid, f.x_cap, f.tol}; }

/// Write to --out when given, standard output otherwise.
int emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return kExitOk;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot open --out path '" << out_path << "'\n";
        return kExitBadArgs;
    }
    out << text;
    return out.good() ? kExitOk : kExitBadArgs;
}

std::string render_rows(const std::vector<qsep::ScanRow>& rows, const std::string& format) {
    return format == "json" ? qsep::to_json_text(rows) : qsep::to_csv(rows);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Two-qubit entanglement toolkit: Werner-state separability, quasi-optimal\n"
        "separable-plus-pure decompositions of the epsilon = 1/2 Werner state, and\n"
        "feasibility threshold scans over sin 2theta."};
    app.require_subcommand(1);
    const double half_pi = std::numbers::pi / 2.0;

    auto* verify = app.add_subcommand("verify", "run the built-in fixture checks");
    SolverFlags verify_flags;
    attach_solver_flags(verify, verify_flags);

    auto* decompose =
        app.add_subcommand("decompose", "solve the quasi-optimal decomposition at one angle");
    SolverFlags dec_flags;
    double dec_theta = 0.0, dec_s2 = 0.0;
    std::string dec_format = "csv", dec_out;
    auto* dec_theta_opt = decompose->add_option("--theta", dec_theta, "angle in radians")
                              ->check(CLI::Range(0.0, half_pi));
    auto* dec_s2_opt = decompose->add_option("--sin2theta", dec_s2, "sin 2theta in [0, 1]")
                           ->check(CLI::Range(0.0, 1.0));
    dec_theta_opt->excludes(dec_s2_opt);
    decompose->add_option("--format", dec_format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    decompose->add_option("--out", dec_out, "output path (default standard output)");
    attach_solver_flags(decompose, dec_flags);

    auto* scan = app.add_subcommand("scan", "tabulate rows over a sin 2theta range");
    SolverFlags scan_flags;
    double s_min = 0.0, s_max = 1.0;
    int steps = 16;
    std::string scan_format = "csv", scan_out;
    scan->add_option("--s-min", s_min, "lower sin 2theta")->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    scan->add_option("--s-max", s_max, "upper sin 2theta")->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    scan->add_option("--steps", steps, "uniform samples, endpoints included")
        ->capture_default_str();
    scan->add_option("--format", scan_format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    scan->add_option("--out", scan_out, "output path (default standard output)");
    attach_solver_flags(scan, scan_flags);

    auto* threshold =
        app.add_subcommand("threshold", "locate the feasibility boundary in sin 2theta");
    SolverFlags thr_flags;
    double resolution = 1e-4;
    std::string thr_out;
    threshold->add_option("--resolution", resolution, "bisection resolution, in (0, 0.01]")
        ->capture_default_str();
    threshold->add_option("--out", thr_out, "output path (default standard output)");
    attach_solver_flags(threshold, thr_flags);

    auto* state = app.add_subcommand("state", "emit a named state as JSON");
    std::string state_kind, bell_which = "psi-minus", state_out;
    double state_eps = 0.5, state_theta = -1.0, state_s2 = -1.0, state_x = 0.0;
    bool with_pauli = false;
    state->add_option("--kind", state_kind,
                      "werner | bell | psi-theta | pseudo-mixture | rho-half | maximally-mixed")
        ->required()
        ->check(CLI::IsMember(
            {"werner", "bell", "psi-theta", "pseudo-mixture", "rho-half", "maximally-mixed"}));
    state->add_option("--epsilon", state_eps, "Werner weight")->check(CLI::Range(0.0, 1.0));
    state->add_option("--which", bell_which, "Bell state name")
        ->check(CLI::IsMember({"phi-plus", "phi-minus", "psi-plus", "psi-minus"}));
    state->add_option("--theta", state_theta, "angle in radians")
        ->check(CLI::Range(0.0, half_pi));
    state->add_option("--sin2theta", state_s2, "sin 2theta in [0, 1]")
        ->check(CLI::Range(0.0, 1.0));
    state->add_option("--x", state_x, "pseudo-mixture weight, x >= 0")
        ->check(CLI::NonNegativeNumber);
    state->add_flag("--pauli", with_pauli, "include the Pauli form");
    state->add_option("--out", state_out, "output path (default standard output)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitBadArgs;
    }

    try {
        if (*verify) {
            const qsep::VerificationReport rep = qsep::run_verification(to_options(verify_flags));
            int failures = 0;
            for (const qsep::VerificationCheck& c : rep.checks) {
                std::cout << qsep::render_check(c) << "\n";
                if (!c.pass) ++failures;
            }
            std::cout << (rep.all_pass ? "all checks passed"
                                       : std::to_string(failures) + " check(s) failed")
                      << " (" << rep.checks.size() << " total)\n";
            return rep.all_pass ? kExitOk : kExitVerifyFail;
        }

        if (*decompose) {
            if (static_cast<int>(dec_theta_opt->count()) + static_cast<int>(dec_s2_opt->count()) !=
                1) {
                std::cerr << "error: give exactly one of --theta or --sin2theta\n";
                return kExitBadArgs;
            }
            const qsep::ThetaParam p = dec_theta_opt->count() > 0
                                           ? qsep::ThetaParam(dec_theta)
                                           : qsep::ThetaParam::from_sin2theta(dec_s2);
            const qsep::FeasibilityResult r = qsep::solve_quasi_optimal(p, to_options(dec_flags));
            const int rc = emit(render_rows({qsep::make_scan_row(p, r)}, dec_format), dec_out);
            if (rc != kExitOk) return rc;
            return r.feasible ? kExitOk : kExitInfeasible;
        }

        if (*scan) {
            if (!(s_min < s_max)) {
                std::cerr << "error: --s-min must be strictly below --s-max\n";
                return kExitBadArgs;
            }
            if (steps < 2) {
                std::cerr << "error: --steps must be at least 2\n";
                return kExitBadArgs;
            }
            std::vector<qsep::ScanRow> rows;
            rows.reserve(static_cast<size_t>(steps));
            for (int i = 0; i < steps; ++i) {
                const double s =
                    i + 1 == steps ? s_max : s_min + (s_max - s_min) * i / (steps - 1);
                const qsep::ThetaParam p = qsep::ThetaParam::from_sin2theta(s);
                rows.push_back(qsep::make_scan_row(p, qsep::solve_quasi_optimal(p, to_options(scan_flags))));
            }
            return emit(render_rows(rows, scan_format), scan_out);
        }

        if (*threshold) {
            if (!(resolution > 0.0) || resolution > 0.01) {
                std::cerr << "error: --resolution must lie in (0, 0.01]\n";
                return kExitBadArgs;
            }
            qsep::ThresholdScanOptions topts;
            topts.resolution = resolution;
            topts.solver = to_options(thr_flags);
            qsep::ThresholdReport rep;
            try {
                rep = qsep::threshold_scan(topts);
            } catch (const std::runtime_error& e) {
                std::cerr << "error: " << e.what() << "\n";
                return kExitInfeasible;
            }
            std::string text;
            text += "boundary sin2theta = " + qsep::format_real(rep.boundary_sin2theta) + "\n";
            text += "resolution = " + qsep::format_real(rep.resolution) + "\n";
            text += "published claim = " + qsep::format_real(rep.published_claim) + "\n";
            text += std::string("verdict: ") +
                    (rep.agrees_with_published ? "AGREES" : "DISAGREES") +
                    " with the published claim at this resolution\n";
            text += "samples probed = " + std::to_string(rep.profile.size()) + "\n";
            for (const qsep::ThresholdSample& s : rep.profile) {
                text += "  sin2theta " + qsep::format_real(s.sin2theta) + ": ";
                text += s.feasible ? "feasible, x_min = " + qsep::format_real(*s.x_min)
                                   : std::string("infeasible");
                text += "\n";
            }
            return emit(text, thr_out);
        }

        if (*state) {
            const bool has_theta = state_theta >= 0.0;
            const bool has_s2 = state_s2 >= 0.0;
            auto theta_param = [&]() {
                if (static_cast<int>(has_theta) + static_cast<int>(has_s2) != 1)
                    throw std::invalid_argument("give exactly one of --theta or --sin2theta");
                return has_theta ? qsep::ThetaParam(state_theta)
                                 : qsep::ThetaParam::from_sin2theta(state_s2);
            };

            qsep::ComplexMatrix m(4);
            if (state_kind == "werner") {
                m = qsep::werner(qsep::WernerParam(state_eps)).matrix();
            } else if (state_kind == "bell") {
                qsep::BellState which = qsep::BellState::PsiMinus;
                if (bell_which == "phi-plus") which = qsep::BellState::PhiPlus;
                else if (bell_which == "phi-minus") which = qsep::BellState::PhiMinus;
                else if (bell_which == "psi-plus") which = qsep::BellState::PsiPlus;
                m = qsep::pure_to_density(qsep::bell_state(which)).matrix();
            } else if (state_kind == "psi-theta") {
                m = qsep::pure_to_density(qsep::psi_theta(theta_param())).matrix();
            } else if (state_kind == "pseudo-mixture") {
                m = qsep::pseudo_mixture(theta_param(), state_x);
            } else if (state_kind == "rho-half") {
                m = qsep::rho_half().matrix();
            } else {
                m = qsep::maximally_mixed().matrix();
            }

            nlohmann::json out{{"kind", state_kind}, {"matrix", qsep::matrix_to_json(m)}};
            if (with_pauli) out["pauli"] = qsep::pauli_form_to_json(qsep::to_pauli_form(m));
            return emit(out.dump(2) + "\n", state_out);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadArgs;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadArgs;
    }
    return kExitOk;
}
