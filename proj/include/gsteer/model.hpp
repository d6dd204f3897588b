// model.hpp — the optomechanical model: two laser-driven optical cavities
// (modes A, B) coupled by radiation pressure to one mechanical oscillator
// (mode C), linearized around the steady state, driven on the red sideband
// (effective detuning -omega_m) in the resolved-sideband / rotating-wave
// regime, with two-mode squeezed light injected into the two cavities.
//
// In the rotating frame the quadrature vector (x_A, y_A, x_B, y_B, x_C, y_C)
// obeys  d u/dt = K u + noise,  and the steady covariance matrix solves
// K sigma + sigma K^T + N = 0.

#pragma once

#include <Eigen/Dense>

#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "gsteer/types.hpp"

namespace gsteer::model {

// CODATA 2018.
inline constexpr double hbar = 1.054571817e-34;         // J s
inline constexpr double boltzmann_k = 1.380649e-23;     // J / K

inline constexpr double two_pi = 2.0 * std::numbers::pi;

// Assignment of the squeezed-input blocks of the diffusion matrix N.
// Physical: optical diagonal blocks (kappa/2) cosh(2r) I_2, cross blocks
// (kappa/2) sinh(2r) diag(1, -1), the form obtained by integrating the
// squeezed-bath correlation functions against the quadrature definitions;
// it reduces to vacuum noise at r = 0.
// PaperLiteral: the alternative literature assignment with sinh(2r) on the
// diagonal blocks and cosh(2r) on the cross block. At small r it produces a
// covariance matrix violating sigma + i Omega / 2 >= 0; it is kept only for
// comparison runs (CLI flag --noise-convention paper-literal).
enum class NoiseConvention { Physical, PaperLiteral };

NoiseConvention noise_convention_from_string(const std::string& s);
std::string to_string(NoiseConvention conv);

// Laboratory-level inputs. Defaults are the reference parameter set used by
// all golden numbers in the test suite: equal cavities of length 25 mm,
// decay 2 pi x 215 kHz, frequency 2 pi x 5.26e14 rad/s, lasers at
// 2 pi x 2.82e14 rad/s with a 100:1 power split, oscillator at
// 2 pi x 947 kHz with damping ratio 0.05 and 1e-4 thermal phonons.
//
// The default mass is 145e-9 kg. With the formulas below that gives
// cooperativities C_1 ~ 15.1, C_2 ~ 0.151, which is the regime where the
// reference steering phenomenology (genuine-tripartite window near
// r in [0.7, 0.98], collective-only steering of the mechanical mode) lives.
struct PhysicalParams {
    double cavity_length = 25e-3;              // l [m], both cavities
    double kappa = two_pi * 215e3;             // optical decay [rad/s]
    double omega_cavity = two_pi * 5.26e14;    // cavity frequency [rad/s]
    double omega_laser = two_pi * 2.82e14;     // laser frequency [rad/s]
    double power_1 = 0.4;                      // input power, cavity A [W]
    double power_2 = 0.004;                    // input power, cavity B [W]
    double mass = 145e-9;                      // effective mirror mass [kg]
    double omega_m = two_pi * 947e3;           // mechanical frequency [rad/s]
    double alpha = 0.05;                       // damping ratio gamma_m / kappa
    std::optional<double> n_bar = 1e-4;        // mean thermal phonons
    std::optional<double> temperature;         // [K]; used when n_bar unset
    double r = 0.0;                            // squeezing parameter

    // Throws std::invalid_argument when any invariant fails (positivity of
    // rates/frequencies/mass/length, powers >= 0, r >= 0, n_bar >= 0,
    // at least one of n_bar / temperature present).
    void validate() const;

    // kappa / omega_m < 1; the rotating-wave construction is flagged invalid
    // (warning, not error) outside this regime.
    bool resolved_sideband() const { return kappa / omega_m < 1.0; }
};

// n_bar = 1 / (exp(hbar omega_m / k_B T) - 1).
double thermal_occupation(double omega_m, double temperature);

// The n_bar actually used: the direct value when present (with a warning if
// a temperature was also given), otherwise derived from the temperature.
double effective_n_bar(const PhysicalParams& p,
                       std::vector<std::string>* warnings = nullptr);

// Quantities derived from PhysicalParams at effective detuning -omega_m:
//   drive strengths      eps_j   = sqrt(2 kappa P_j / (hbar omega_L))
//   vacuum coupling      chi     = (omega_c / l) sqrt(hbar / (mass omega_m))
//   intracavity amps     |<a_j>| = 2 eps_j / sqrt(4 omega_m^2 + kappa^2)
//   effective couplings  chibar_j = chi |<a_j>|
//   cooperativities      C_j     = 4 chibar_j^2 / (gamma_m kappa)
struct DerivedParams {
    double drive_1 = 0.0;             // eps_1 [rad/s]
    double drive_2 = 0.0;             // eps_2 [rad/s]
    double vacuum_coupling = 0.0;     // chi [rad/s]
    double amplitude_1 = 0.0;         // |<a_1>|
    double amplitude_2 = 0.0;         // |<a_2>|
    double coupling_1 = 0.0;          // chibar_1 [rad/s]
    double coupling_2 = 0.0;          // chibar_2 [rad/s]
    double cooperativity_1 = 0.0;     // C_1
    double cooperativity_2 = 0.0;     // C_2
    double gamma_m = 0.0;             // alpha * kappa [rad/s]
    double quality = 0.0;             // Q_m = omega_m / gamma_m
};

DerivedParams derive_params(const PhysicalParams& p,
                            std::vector<std::string>* warnings = nullptr);

// 6x6 drift kernel
//   K = [[ -(kappa/2) I_4,        K_C ],
//        [ -K_C^T,       -(alpha kappa / 2) I_2 ]]
// with the mechanical row coupling to cavity A as -(kappa/2) sqrt(alpha C_1)
// and to cavity B as +(kappa/2) sqrt(alpha C_2) on matching quadratures.
// Note K + K^T = diag(-kappa x4, -alpha kappa x2), so K is always Hurwitz.
Eigen::MatrixXd build_drift(const DerivedParams& d, double kappa,
                            double alpha);

// 6x6 diffusion matrix N = N_kappa (+) N_alpha. The mechanical block is
// (alpha kappa / 2)(2 n_bar + 1) I_2 in both conventions; the optical 4x4
// block depends on the convention (see NoiseConvention).
Eigen::MatrixXd build_noise(double r, double n_bar, double kappa,
                            double alpha, NoiseConvention conv);

struct StabilityReport {
    bool stable = false;
    double max_real_part = 0.0;  // [rad/s]
};

StabilityReport check_stability(const Eigen::MatrixXd& drift);

// Full pipeline: derive_params -> build_drift / build_noise -> Lyapunov
// steady state. The result is tagged vacuum = I/2. Under the Physical
// convention the physicality bound min eig(sigma + i Omega / 2) >= -1e-9 is
// verified (Unphysical on failure); PaperLiteral results are returned as-is.
CovarianceMatrix steady_state_cm(const PhysicalParams& p,
                                 NoiseConvention conv = NoiseConvention::Physical,
                                 std::vector<std::string>* warnings = nullptr);

}  // namespace gsteer::model
