// tolerances.hpp — every numerical threshold used by the library, in one place.

#pragma once

namespace gsteer::tol {

// Lyapunov solver: required relative residual ||K s + s K^T + N||_F / ||N||_F.
inline constexpr double lyapunov_rel_residual = 1e-10;

// Drift stability margin: NotStable when any Re(eig K) >= -stability_eps.
inline constexpr double stability_eps = 1e-12;

// RK4 integrator accuracy guard: StepTooLarge when dt * ||K||_F > this.
inline constexpr double rk4_step_guard = 0.1;

// Symmetry / hermiticity slack, relative to max(1, ||M||_F).
inline constexpr double symmetry_rel = 1e-12;

// Symplectic spectrum: tolerated PSD defect, min eig(M) >= -psd_rel * ||M||_F.
inline constexpr double psd_rel = 1e-9;

// Symplectic spectrum: |Im eig(-(Omega M)^2)| must be <= this * ||M||_F^2.
inline constexpr double symplectic_imag_rel = 1e-8;

// Symplectic spectrum: nu^2 clipped to 0 when above -this * ||M||_F^2.
inline constexpr double symplectic_neg_rel = 1e-9;

// Symplectic spectrum: the doubled eigenvalues must pair within this * ||M||_F^2.
inline constexpr double pairing_rel = 1e-8;

// Schur complement: SingularXBlock when cond(X) exceeds this.
inline constexpr double x_block_max_condition = 1e12;

// Steering classification / exclusion: values below this count as zero [nats].
inline constexpr double steering_zero = 1e-9;

// Physicality: min eig(sigma + i Omega / 2) must be >= -this.
inline constexpr double physicality_slack = 1e-9;

}  // namespace gsteer::tol
