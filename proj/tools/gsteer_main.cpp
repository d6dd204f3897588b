// gsteer — steady-state Gaussian steering for a two-cavity optomechanical
// system driven by two-mode squeezed light.
//
// Subcommands:
//   sweep    run a squeezing sweep, emit CSV + gnuplot script
//   steer    steering of one partition of a covariance-matrix file
//   check    diagnostics: physicality, symplectic spectrum, stability
//   windows  intervals of r where a named predicate holds
//
// Exit codes: 0 ok, 2 config/parse error, 3 numerical failure, 4 I/O error.

#include <complex>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gsteer/errors.hpp"
#include "gsteer/io.hpp"
#include "gsteer/linalg.hpp"
#include "gsteer/model.hpp"
#include "gsteer/steering.hpp"
#include "gsteer/sweep.hpp"
#include "gsteer/tolerances.hpp"

namespace {

using namespace gsteer;

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void print_warnings(const std::vector<std::string>& warnings) {
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
}

struct GlobalOptions {
    std::string config_path;
    std::string noise_convention;
    std::string out_path;
    double r_min = 0.0;
    double r_max = 2.0;
    int steps = 401;
    bool r_min_set = false, r_max_set = false, steps_set = false;
};

io::Config load_config(const GlobalOptions& opt) {
    io::Config cfg;
    if (!opt.config_path.empty()) cfg = io::read_config(opt.config_path);
    if (!opt.noise_convention.empty())
        cfg.convention = model::noise_convention_from_string(opt.noise_convention);
    return cfg;
}

std::string plot_script_path(const std::string& csv_path) {
    const auto dot = csv_path.rfind('.');
    const auto slash = csv_path.find_last_of('/');
    if (dot != std::string::npos && (slash == std::string::npos || dot > slash))
        return csv_path.substr(0, dot) + ".gp";
    return csv_path + ".gp";
}

std::string file_name_of(const std::string& path) {
    const auto slash = path.find_last_of('/');
    return slash == std::string::npos ? path : path.substr(slash + 1);
}

sweep::SweepConfig make_sweep_config(const GlobalOptions& opt) {
    const io::Config cfg = load_config(opt);
    sweep::SweepConfig sc;
    sc.physical = cfg.physical;
    sc.convention = cfg.convention;
    if (opt.r_min_set) sc.r_min = opt.r_min;
    if (opt.r_max_set) sc.r_max = opt.r_max;
    if (opt.steps_set) sc.steps = opt.steps;
    sc.output_path = opt.out_path.empty() ? "sweep.csv" : opt.out_path;
    return sc;
}

int cmd_sweep(const GlobalOptions& opt) {
    const sweep::SweepConfig sc = make_sweep_config(opt);
    std::vector<std::string> warnings;
    model::derive_params(sc.physical, &warnings);
    print_warnings(warnings);

    const auto rows = sweep::run_sweep(sc);
    sweep::emit_csv(rows, sc.output_path);
    const std::string script = plot_script_path(sc.output_path);
    sweep::emit_plot_script(rows, script, file_name_of(sc.output_path));

    int unstable = 0;
    for (const auto& row : rows)
        if (!row.stable) ++unstable;
    std::cout << "wrote " << rows.size() << " rows to " << sc.output_path << "\n";
    std::cout << "wrote plot script " << script << "\n";
    if (unstable) std::cout << unstable << " rows flagged NotStable\n";
    return 0;
}

int cmd_steer(const std::string& cm_path, const std::vector<int>& x_modes,
              const std::vector<int>& y_modes) {
    const CovarianceMatrix cm = io::read_cm(cm_path);
    const Partition part{x_modes, y_modes};
    part.validate(cm.n_modes);

    const auto forward = steering::gaussian_steering(cm, part);
    const auto backward = steering::gaussian_steering(cm, part.swapped());

    const auto show = [](const char* label, const steering::SteeringValue& v) {
        std::cout << label << " = " << num(v.value) << "  nu_bar:";
        for (double nu : v.nu_bar) std::cout << " " << num(nu);
        std::cout << "\n";
    };
    show("G[X->Y]", forward);
    show("G[Y->X]", backward);
    std::cout << "class: "
              << steering::to_string(
                     steering::classify_values(forward.value, backward.value))
              << "\n";
    return 0;
}

void print_cm_diagnostics(const CovarianceMatrix& cm) {
    const Eigen::MatrixXd omega = linalg::SymplecticForm(cm.n_modes).mat;
    const Eigen::MatrixXcd heisenberg =
        cm.mat.cast<std::complex<double>>() +
        std::complex<double>(0.0, 0.5) * omega.cast<std::complex<double>>();
    const double margin = linalg::min_eigenvalue_hermitian(heisenberg);
    std::cout << "physicality margin (min eig of sigma + i Omega/2): " << num(margin)
              << "\n";
    const auto nu = linalg::symplectic_eigenvalues(
        cm.vacuum_normalized().mat, cm.n_modes);
    std::cout << "symplectic eigenvalues of 2 sigma:";
    for (double v : nu) std::cout << " " << num(v);
    std::cout << "\n";
    if (margin < -tol::physicality_slack)
        throw Unphysical("covariance matrix violates sigma + i Omega/2 >= 0 "
                         "(margin " + num(margin) + ")");
    std::cout << "physicality: OK\n";
}

int cmd_check(const GlobalOptions& opt, const std::string& cm_path) {
    if (!cm_path.empty()) {
        print_cm_diagnostics(io::read_cm(cm_path));
        return 0;
    }
    const io::Config cfg = load_config(opt);
    std::vector<std::string> warnings;
    const model::DerivedParams d = model::derive_params(cfg.physical, &warnings);
    print_warnings(warnings);

    const Eigen::MatrixXd drift = model::build_drift(d, cfg.physical.kappa,
                                                     cfg.physical.alpha);
    const model::StabilityReport stab = model::check_stability(drift);
    std::cout << "stability: " << (stab.stable ? "stable" : "UNSTABLE")
              << " (max Re eig = " << num(stab.max_real_part) << ")\n";
    if (!stab.stable) throw NotStable("drift matrix is not Hurwitz");

    const Eigen::MatrixXd noise =
        model::build_noise(cfg.physical.r, model::effective_n_bar(cfg.physical),
                           cfg.physical.kappa, cfg.physical.alpha, cfg.convention);
    const Eigen::MatrixXd sigma = linalg::solve_lyapunov(drift, noise);
    const double residual =
        (drift * sigma + sigma * drift.transpose() + noise).norm() / noise.norm();
    std::cout << "lyapunov relative residual: " << num(residual) << "\n";

    CovarianceMatrix cm;
    cm.n_modes = 3;
    cm.units = QuadratureUnits::VacuumHalf;
    cm.mat = sigma;
    print_cm_diagnostics(cm);
    return 0;
}

int cmd_windows(const GlobalOptions& opt, const std::string& in_csv,
                const std::vector<std::string>& predicates) {
    std::vector<sweep::SweepRow> rows;
    if (!in_csv.empty()) {
        rows = sweep::parse_csv(in_csv);
    } else {
        rows = sweep::run_sweep(make_sweep_config(opt));
    }
    for (const auto& predicate : predicates) {
        const sweep::Window w = sweep::find_windows(rows, predicate);
        std::cout << w.quantity << ":";
        if (w.intervals.empty()) std::cout << " (none)";
        for (const auto& iv : w.intervals)
            std::cout << " [" << num(iv[0]) << ", " << num(iv[1]) << "]";
        std::cout << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gaussian steering of a squeezed-light-driven optomechanical system"};
    app.require_subcommand(1);

    GlobalOptions opt;
    app.add_option("--config", opt.config_path, "config file (key = value)");
    app.add_option("--noise-convention", opt.noise_convention,
                   "physical | paper-literal")
        ->check(CLI::IsMember({"physical", "paper-literal"}));
    app.add_option("--out", opt.out_path, "output path (sweep CSV)");
    app.add_option("--r-min", opt.r_min, "sweep start")->trigger_on_parse()
        ->each([&](const std::string&) { opt.r_min_set = true; });
    app.add_option("--r-max", opt.r_max, "sweep end")->trigger_on_parse()
        ->each([&](const std::string&) { opt.r_max_set = true; });
    app.add_option("--steps", opt.steps, "sweep grid points")->trigger_on_parse()
        ->each([&](const std::string&) { opt.steps_set = true; });

    auto* sweep_cmd = app.add_subcommand("sweep", "run a squeezing sweep");

    auto* steer_cmd = app.add_subcommand("steer", "steering of a partition");
    std::string steer_cm;
    std::vector<int> x_modes, y_modes;
    steer_cmd->add_option("--cm", steer_cm, "covariance-matrix file")->required();
    steer_cmd->add_option("--x", x_modes, "steering-party mode indices")->required();
    steer_cmd->add_option("--y", y_modes, "steered-party mode indices")->required();

    auto* check_cmd = app.add_subcommand("check", "model / state diagnostics");
    std::string check_cm;
    check_cmd->add_option("--cm", check_cm, "covariance-matrix file to check");

    auto* windows_cmd = app.add_subcommand("windows", "predicate windows over r");
    std::string windows_in;
    std::vector<std::string> predicates;
    windows_cmd->add_option("--in", windows_in, "existing sweep CSV");
    windows_cmd->add_option("--predicate", predicates, "predicate name(s)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (sweep_cmd->parsed()) return cmd_sweep(opt);
        if (steer_cmd->parsed()) return cmd_steer(steer_cm, x_modes, y_modes);
        if (check_cmd->parsed()) return cmd_check(opt, check_cm);
        if (windows_cmd->parsed()) return cmd_windows(opt, windows_in, predicates);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const NumericError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
