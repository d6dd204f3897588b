#include "gsteer/model.hpp"

#include <cmath>
#include <stdexcept>

#include "gsteer/errors.hpp"
#include "gsteer/linalg.hpp"
#include "gsteer/tolerances.hpp"

namespace gsteer::model {

NoiseConvention noise_convention_from_string(const std::string& s) {
    if (s == "physical") return NoiseConvention::Physical;
    if (s == "paper-literal") return NoiseConvention::PaperLiteral;
    throw ParseError("unknown noise convention '" + s +
                     "' (expected 'physical' or 'paper-literal')");
}

std::string to_string(NoiseConvention conv) {
    return conv == NoiseConvention::Physical ? "physical" : "paper-literal";
}

void PhysicalParams::validate() const {
    const auto positive = [](double v, const char* name) {
        if (!(v > 0.0) || !std::isfinite(v))
            throw std::invalid_argument(std::string("params: ") + name +
                                        " must be strictly positive and finite");
    };
    positive(cavity_length, "l");
    positive(kappa, "kappa");
    positive(omega_cavity, "omega_c");
    positive(omega_laser, "omega_L");
    positive(mass, "mu");
    positive(omega_m, "omega_m");
    positive(alpha, "alpha");
    if (!(power_1 >= 0.0) || !(power_2 >= 0.0) || !std::isfinite(power_1) ||
        !std::isfinite(power_2))
        throw std::invalid_argument("params: laser powers must be finite and >= 0");
    if (!(r >= 0.0) || !std::isfinite(r))
        throw std::invalid_argument("params: squeezing r must be finite and >= 0");
    if (!n_bar && !temperature)
        throw std::invalid_argument("params: one of n_bar / temperature is required");
    if (n_bar && (!(*n_bar >= 0.0) || !std::isfinite(*n_bar)))
        throw std::invalid_argument("params: n_bar must be finite and >= 0");
    if (temperature && (!(*temperature > 0.0) || !std::isfinite(*temperature)))
        throw std::invalid_argument("params: temperature must be finite and > 0");
}

double thermal_occupation(double omega_m, double temperature) {
    if (!(omega_m > 0.0) || !(temperature > 0.0))
        throw std::invalid_argument("thermal_occupation: omega_m and T must be positive");
    return 1.0 / std::expm1(hbar * omega_m / (boltzmann_k * temperature));
}

double effective_n_bar(const PhysicalParams& p, std::vector<std::string>* warnings) {
    if (p.n_bar) {
        if (p.temperature && warnings)
            warnings->push_back("both n_bar and temperature given; using n_bar = " +
                                std::to_string(*p.n_bar));
        return *p.n_bar;
    }
    return thermal_occupation(p.omega_m, *p.temperature);
}

DerivedParams derive_params(const PhysicalParams& p,
                            std::vector<std::string>* warnings) {
    p.validate();
    if (!p.resolved_sideband() && warnings)
        warnings->push_back("kappa/omega_m >= 1: outside the resolved-sideband regime, "
                            "the rotating-wave model is not valid here");

    DerivedParams d;
    d.drive_1 = std::sqrt(2.0 * p.kappa * p.power_1 / (hbar * p.omega_laser));
    d.drive_2 = std::sqrt(2.0 * p.kappa * p.power_2 / (hbar * p.omega_laser));
    d.vacuum_coupling =
        (p.omega_cavity / p.cavity_length) * std::sqrt(hbar / (p.mass * p.omega_m));
    const double lorentz = std::sqrt(4.0 * p.omega_m * p.omega_m + p.kappa * p.kappa);
    d.amplitude_1 = 2.0 * d.drive_1 / lorentz;
    d.amplitude_2 = 2.0 * d.drive_2 / lorentz;
    d.coupling_1 = d.vacuum_coupling * d.amplitude_1;
    d.coupling_2 = d.vacuum_coupling * d.amplitude_2;
    d.gamma_m = p.alpha * p.kappa;
    d.cooperativity_1 = 4.0 * d.coupling_1 * d.coupling_1 / (d.gamma_m * p.kappa);
    d.cooperativity_2 = 4.0 * d.coupling_2 * d.coupling_2 / (d.gamma_m * p.kappa);
    d.quality = p.omega_m / d.gamma_m;
    return d;
}

Eigen::MatrixXd build_drift(const DerivedParams& d, double kappa, double alpha) {
    if (d.cooperativity_1 < 0.0 || d.cooperativity_2 < 0.0)
        throw std::invalid_argument("build_drift: cooperativities must be >= 0");
    const double g1 = 0.5 * kappa * std::sqrt(alpha * d.cooperativity_1);
    const double g2 = 0.5 * kappa * std::sqrt(alpha * d.cooperativity_2);

    Eigen::MatrixXd k = Eigen::MatrixXd::Zero(6, 6);
    k.topLeftCorner(4, 4) = -(kappa / 2.0) * Eigen::MatrixXd::Identity(4, 4);
    k.bottomRightCorner(2, 2) = -(alpha * kappa / 2.0) * Eigen::MatrixXd::Identity(2, 2);
    // optical rows, mechanical columns (K_C)
    k(0, 4) = g1;
    k(1, 5) = g1;
    k(2, 4) = -g2;
    k(3, 5) = -g2;
    // mechanical rows, optical columns (-K_C^T)
    k(4, 0) = -g1;
    k(5, 1) = -g1;
    k(4, 2) = g2;
    k(5, 3) = g2;
    return k;
}

Eigen::MatrixXd build_noise(double r, double n_bar, double kappa, double alpha,
                            NoiseConvention conv) {
    if (!(r >= 0.0)) throw std::invalid_argument("build_noise: r must be >= 0");
    if (!(n_bar >= 0.0)) throw std::invalid_argument("build_noise: n_bar must be >= 0");

    const double ch = (kappa / 2.0) * std::cosh(2.0 * r);
    const double sh = (kappa / 2.0) * std::sinh(2.0 * r);
    const double diagonal = (conv == NoiseConvention::Physical) ? ch : sh;
    const double cross = (conv == NoiseConvention::Physical) ? sh : ch;

    Eigen::MatrixXd n = Eigen::MatrixXd::Zero(6, 6);
    n(0, 0) = n(1, 1) = n(2, 2) = n(3, 3) = diagonal;
    n(0, 2) = n(2, 0) = cross;
    n(1, 3) = n(3, 1) = -cross;
    n(4, 4) = n(5, 5) = (alpha * kappa / 2.0) * (2.0 * n_bar + 1.0);
    return n;
}

StabilityReport check_stability(const Eigen::MatrixXd& drift) {
    const Eigen::VectorXcd eig = linalg::eigenvalues(drift);
    StabilityReport report;
    report.max_real_part = eig.real().maxCoeff();
    report.stable = report.max_real_part < 0.0;
    return report;
}

CovarianceMatrix steady_state_cm(const PhysicalParams& p, NoiseConvention conv,
                                 std::vector<std::string>* warnings) {
    const DerivedParams d = derive_params(p, warnings);
    const Eigen::MatrixXd drift = build_drift(d, p.kappa, p.alpha);
    const Eigen::MatrixXd noise =
        build_noise(p.r, effective_n_bar(p, warnings), p.kappa, p.alpha, conv);

    CovarianceMatrix cm;
    cm.n_modes = 3;
    cm.units = QuadratureUnits::VacuumHalf;
    cm.mat = linalg::solve_lyapunov(drift, noise);

    if (conv == NoiseConvention::Physical) {
        const Eigen::MatrixXd omega = linalg::SymplecticForm(3).mat;
        const Eigen::MatrixXcd heisenberg =
            cm.mat.cast<std::complex<double>>() +
            std::complex<double>(0.0, 0.5) * omega.cast<std::complex<double>>();
        const double margin = linalg::min_eigenvalue_hermitian(heisenberg);
        if (margin < -tol::physicality_slack)
            throw Unphysical("steady_state_cm: min eig(sigma + i Omega/2) = " +
                             std::to_string(margin));
    }
    return cm;
}

}  // namespace gsteer::model
