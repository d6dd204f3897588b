// linalg.hpp — small dense-matrix kernel: Lyapunov steady states, eigenvalues,
// symplectic spectra, Schur complements. Everything is a pure function; the
// matrices involved are at most a few dozen rows.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <vector>

#include "gsteer/types.hpp"

namespace gsteer::linalg {

// The canonical antisymmetric form, Omega = direct sum of [[0, 1], [-1, 0]]
// over n modes in (x_1, y_1, ..., x_n, y_n) ordering.
struct SymplecticForm {
    int n_modes;
    Eigen::MatrixXd mat;

    explicit SymplecticForm(int n_modes);
};

// Steady-state solution of K s + s K^T + N = 0 by Kronecker vectorization and
// dense LU. Requires K Hurwitz (throws NotStable otherwise) and N symmetric.
// The result is explicitly symmetrized and certified against
// tol::lyapunov_rel_residual (SingularSystem if the residual cannot be met).
Eigen::MatrixXd solve_lyapunov(const Eigen::MatrixXd& drift,
                               const Eigen::MatrixXd& diffusion);

// Independent cross-check for solve_lyapunov: classical fourth-order
// Runge-Kutta integration of ds/dt = K s + s K^T + N from s(0) = 0.
// Throws StepTooLarge when dt * ||K||_F exceeds tol::rk4_step_guard.
Eigen::MatrixXd integrate_lyapunov(const Eigen::MatrixXd& drift,
                                   const Eigen::MatrixXd& diffusion,
                                   double t_final, double dt);

// Full eigenvalue multiset of a square real matrix, unordered.
Eigen::VectorXcd eigenvalues(const Eigen::MatrixXd& m);

// Symplectic eigenvalues nu_1 >= ... >= nu_n of a symmetric PSD 2n x 2n
// matrix, obtained from the spectrum of -(Omega M)^2 (each nu_j^2 appears
// twice; pairs are matched after sorting). Small negative nu^2 within the
// clip window are set to zero. Throws NotSymmetric / NotPSD /
// SpectrumNotReal as applicable.
std::vector<double> symplectic_eigenvalues(const Eigen::MatrixXd& m,
                                           int n_modes);

// Schur complement of the steering party's block: reorders sigma to
// [[X, Z], [Z^T, Y]] with X = part.steering modes, Y = part.steered modes
// (modes outside the partition are dropped) and returns Y - Z^T X^{-1} Z,
// symmetrized. The X block's condition number is written to *x_condition
// when given; SingularXBlock when it exceeds tol::x_block_max_condition.
Eigen::MatrixXd schur_steered(const Eigen::MatrixXd& sigma,
                              const Partition& part,
                              double* x_condition = nullptr);

// Smallest eigenvalue of a complex Hermitian matrix (NotHermitian if the
// input fails the hermiticity tolerance).
double min_eigenvalue_hermitian(const Eigen::MatrixXcd& m);

}  // namespace gsteer::linalg
