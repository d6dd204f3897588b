// support.hpp — shared helpers for the unit and acceptance suites: canonical
// states, random stable linear systems, random physical covariance matrices
// built by reducing random pure Gaussian states.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <random>

#include "gsteer/linalg.hpp"
#include "gsteer/types.hpp"

namespace gsteer::test {

// Two-mode squeezed vacuum in vacuum = I units: cosh(2r) on the diagonal,
// +/- sinh(2r) on the x/y cross entries.
inline Eigen::MatrixXd tmsv_vacuum_one(double r) {
    const double ch = std::cosh(2.0 * r);
    const double sh = std::sinh(2.0 * r);
    Eigen::MatrixXd m = ch * Eigen::MatrixXd::Identity(4, 4);
    m(0, 2) = m(2, 0) = sh;
    m(1, 3) = m(3, 1) = -sh;
    return m;
}

inline CovarianceMatrix tmsv_state(double r) {
    CovarianceMatrix cm;
    cm.n_modes = 2;
    cm.units = QuadratureUnits::VacuumHalf;
    cm.mat = 0.5 * tmsv_vacuum_one(r);
    return cm;
}

struct LinearSystem {
    Eigen::MatrixXd drift;
    Eigen::MatrixXd diffusion;
    double max_real_part;  // of the drift spectrum
};

// Random Hurwitz drift (spectrum shifted to max Re = -margin) with a random
// PSD diffusion matrix.
inline LinearSystem random_stable_system(std::mt19937& rng, int n = 6,
                                         double margin = 0.5) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Eigen::MatrixXd a(n, n), b(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            a(i, j) = u(rng);
            b(i, j) = u(rng);
        }
    const double max_re = linalg::eigenvalues(a).real().maxCoeff();

    LinearSystem sys;
    sys.drift = a - (max_re + margin) * Eigen::MatrixXd::Identity(n, n);
    Eigen::MatrixXd diffusion = b * b.transpose();
    sys.diffusion = 0.5 * (diffusion + diffusion.transpose());
    sys.max_real_part = -margin;
    return sys;
}

inline Eigen::MatrixXd random_spd(std::mt19937& rng, int n, double ridge = 0.1) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Eigen::MatrixXd a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = u(rng);
    Eigen::MatrixXd m = a * a.transpose() + ridge * Eigen::MatrixXd::Identity(n, n);
    return 0.5 * (m + m.transpose());
}

// Direct sum of independent 2x2 rotations, one per mode: orthogonal and
// symplectic in the interleaved (x, y) ordering.
inline Eigen::MatrixXd rotation_direct_sum(std::mt19937& rng, int n_modes) {
    std::uniform_real_distribution<double> angle(0.0, 2.0 * 3.14159265358979324);
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2 * n_modes, 2 * n_modes);
    for (int j = 0; j < n_modes; ++j) {
        const double t = angle(rng);
        m(2 * j, 2 * j) = std::cos(t);
        m(2 * j, 2 * j + 1) = -std::sin(t);
        m(2 * j + 1, 2 * j) = std::sin(t);
        m(2 * j + 1, 2 * j + 1) = std::cos(t);
    }
    return m;
}

// Haar-ish random unitary embedded as an orthogonal symplectic matrix
// (the standard U(n) -> Sp(2n, R) embedding in interleaved ordering).
inline Eigen::MatrixXd random_orthogonal_symplectic(std::mt19937& rng, int n_modes) {
    std::normal_distribution<double> g(0.0, 1.0);
    Eigen::MatrixXcd z(n_modes, n_modes);
    for (int i = 0; i < n_modes; ++i)
        for (int j = 0; j < n_modes; ++j)
            z(i, j) = std::complex<double>(g(rng), g(rng));
    const Eigen::MatrixXcd q =
        Eigen::HouseholderQR<Eigen::MatrixXcd>(z).householderQ();

    Eigen::MatrixXd o(2 * n_modes, 2 * n_modes);
    for (int i = 0; i < n_modes; ++i)
        for (int j = 0; j < n_modes; ++j) {
            o(2 * i, 2 * j) = q(i, j).real();
            o(2 * i, 2 * j + 1) = -q(i, j).imag();
            o(2 * i + 1, 2 * j) = q(i, j).imag();
            o(2 * i + 1, 2 * j + 1) = q(i, j).real();
        }
    return o;
}

// Random pure Gaussian state of `total` modes (Euler-decomposed symplectic
// applied to the vacuum), reduced to its first `keep` modes. Physical by
// construction.
inline CovarianceMatrix random_physical_cm(std::mt19937& rng, int keep = 3,
                                           int total = 6, double squeeze_max = 1.2) {
    const Eigen::MatrixXd o1 = random_orthogonal_symplectic(rng, total);
    const Eigen::MatrixXd o2 = random_orthogonal_symplectic(rng, total);
    std::uniform_real_distribution<double> s(-squeeze_max, squeeze_max);
    Eigen::VectorXd d(2 * total);
    for (int j = 0; j < total; ++j) {
        const double sj = s(rng);
        d(2 * j) = std::exp(sj);
        d(2 * j + 1) = std::exp(-sj);
    }
    const Eigen::MatrixXd symplectic = o1 * d.asDiagonal() * o2;
    const Eigen::MatrixXd pure = 0.5 * symplectic * symplectic.transpose();

    CovarianceMatrix cm;
    cm.n_modes = keep;
    cm.units = QuadratureUnits::VacuumHalf;
    Eigen::MatrixXd reduced = pure.topLeftCorner(2 * keep, 2 * keep);
    cm.mat = 0.5 * (reduced + reduced.transpose());
    return cm;
}

}  // namespace gsteer::test
