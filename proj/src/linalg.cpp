#include "gsteer/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "gsteer/errors.hpp"
#include "gsteer/tolerances.hpp"

namespace gsteer::linalg {

namespace {

void require_finite(const Eigen::MatrixXd& m, const char* who) {
    if (!m.allFinite())
        throw std::invalid_argument(std::string(who) + ": non-finite entries");
}

void require_square(const Eigen::MatrixXd& m, const char* who) {
    if (m.rows() == 0 || m.rows() != m.cols())
        throw std::invalid_argument(std::string(who) + ": matrix must be square and non-empty");
}

double asymmetry(const Eigen::MatrixXd& m) {
    return (m - m.transpose()).cwiseAbs().maxCoeff();
}

// Kronecker product; the systems here are at most 36x36.
Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    Eigen::MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
}

}  // namespace

SymplecticForm::SymplecticForm(int n) : n_modes(n) {
    if (n <= 0) throw std::invalid_argument("SymplecticForm: n_modes must be positive");
    mat = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    for (int j = 0; j < n; ++j) {
        mat(2 * j, 2 * j + 1) = 1.0;
        mat(2 * j + 1, 2 * j) = -1.0;
    }
}

Eigen::MatrixXd solve_lyapunov(const Eigen::MatrixXd& drift,
                               const Eigen::MatrixXd& diffusion) {
    require_square(drift, "solve_lyapunov");
    require_finite(drift, "solve_lyapunov");
    require_finite(diffusion, "solve_lyapunov");
    const Eigen::Index n = drift.rows();
    if (diffusion.rows() != n || diffusion.cols() != n)
        throw std::invalid_argument("solve_lyapunov: dimension mismatch");
    if (asymmetry(diffusion) > tol::symmetry_rel * std::max(1.0, diffusion.norm()))
        throw std::invalid_argument("solve_lyapunov: diffusion matrix must be symmetric");

    const Eigen::VectorXcd eig = eigenvalues(drift);
    const double max_re = eig.real().maxCoeff();
    if (max_re >= -tol::stability_eps)
        throw NotStable("solve_lyapunov: drift is not Hurwitz (max Re eig = " +
                        fmt(max_re) + ")");

    // vec(K s + s K^T) = (I (x) K + K (x) I) vec(s), same operator for
    // row- and column-major vec.
    const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(n, n);
    const Eigen::MatrixXd system = kron(identity, drift) + kron(drift, identity);
    const Eigen::VectorXd rhs = -Eigen::Map<const Eigen::VectorXd>(diffusion.data(), n * n);

    Eigen::PartialPivLU<Eigen::MatrixXd> lu(system);
    const Eigen::VectorXd vec_sigma = lu.solve(rhs);
    if (!vec_sigma.allFinite())
        throw SingularSystem("solve_lyapunov: vectorized system is numerically singular");

    Eigen::MatrixXd sigma = Eigen::Map<const Eigen::MatrixXd>(vec_sigma.data(), n, n);
    sigma = 0.5 * (sigma + sigma.transpose()).eval();

    const double residual = (drift * sigma + sigma * drift.transpose() + diffusion).norm();
    const double scale = diffusion.norm();
    const bool certified = (scale == 0.0) ? residual <= 1e-30
                                          : residual <= tol::lyapunov_rel_residual * scale;
    if (!certified)
        throw SingularSystem("solve_lyapunov: residual " + fmt(residual) +
                             " exceeds " + fmt(tol::lyapunov_rel_residual) + " * ||N||");
    return sigma;
}

Eigen::MatrixXd integrate_lyapunov(const Eigen::MatrixXd& drift,
                                   const Eigen::MatrixXd& diffusion,
                                   double t_final, double dt) {
    require_square(drift, "integrate_lyapunov");
    require_finite(drift, "integrate_lyapunov");
    require_finite(diffusion, "integrate_lyapunov");
    const Eigen::Index n = drift.rows();
    if (diffusion.rows() != n || diffusion.cols() != n)
        throw std::invalid_argument("integrate_lyapunov: dimension mismatch");
    if (!(dt > 0.0) || !(t_final > 0.0))
        throw std::invalid_argument("integrate_lyapunov: dt and t_final must be positive");
    if (dt * drift.norm() > tol::rk4_step_guard)
        throw StepTooLarge("integrate_lyapunov: dt * ||K||_F = " + fmt(dt * drift.norm()) +
                           " exceeds " + fmt(tol::rk4_step_guard));

    const auto deriv = [&](const Eigen::MatrixXd& s) -> Eigen::MatrixXd {
        return drift * s + s * drift.transpose() + diffusion;
    };

    const long steps = std::max(1L, std::lround(t_final / dt));
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(n, n);
    for (long i = 0; i < steps; ++i) {
        const Eigen::MatrixXd k1 = deriv(s);
        const Eigen::MatrixXd k2 = deriv(s + 0.5 * dt * k1);
        const Eigen::MatrixXd k3 = deriv(s + 0.5 * dt * k2);
        const Eigen::MatrixXd k4 = deriv(s + dt * k3);
        s += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return s;
}

Eigen::VectorXcd eigenvalues(const Eigen::MatrixXd& m) {
    require_square(m, "eigenvalues");
    require_finite(m, "eigenvalues");
    Eigen::EigenSolver<Eigen::MatrixXd> solver(m, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success)
        throw NoConvergence("eigenvalues: QR iteration failed to converge");
    return solver.eigenvalues();
}

std::vector<double> symplectic_eigenvalues(const Eigen::MatrixXd& m, int n_modes) {
    require_square(m, "symplectic_eigenvalues");
    require_finite(m, "symplectic_eigenvalues");
    if (n_modes <= 0 || m.rows() != 2 * n_modes)
        throw std::invalid_argument("symplectic_eigenvalues: matrix must be 2 n_modes square");

    const double scale = m.norm();
    if (asymmetry(m) > tol::symmetry_rel * std::max(1.0, scale))
        throw NotSymmetric("symplectic_eigenvalues: input is not symmetric");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> sym(m, Eigen::EigenvaluesOnly);
    if (sym.info() != Eigen::Success)
        throw NoConvergence("symplectic_eigenvalues: symmetric eigensolver failed");
    if (sym.eigenvalues().minCoeff() < -tol::psd_rel * scale)
        throw NotPSD("symplectic_eigenvalues: min eigenvalue " +
                     fmt(sym.eigenvalues().minCoeff()) + " below PSD tolerance");

    // Spectrum of -(Omega M)^2 holds each nu_j^2 twice and is real
    // non-negative for symmetric PSD M.
    const Eigen::MatrixXd om = SymplecticForm(n_modes).mat * m;
    const Eigen::VectorXcd sq = eigenvalues(-(om * om));

    const double scale2 = std::max(scale * scale, 1e-300);
    std::vector<double> nu_sq;
    nu_sq.reserve(sq.size());
    for (Eigen::Index i = 0; i < sq.size(); ++i) {
        if (std::abs(sq(i).imag()) > tol::symplectic_imag_rel * scale2)
            throw SpectrumNotReal("symplectic_eigenvalues: eigenvalue of -(Omega M)^2 has "
                                  "imaginary part " + fmt(sq(i).imag()));
        double v = sq(i).real();
        if (v < 0.0) {
            if (v < -tol::symplectic_neg_rel * scale2)
                throw NotPSD("symplectic_eigenvalues: nu^2 = " + fmt(v) +
                             " below clip tolerance");
            v = 0.0;
        }
        nu_sq.push_back(v);
    }
    std::sort(nu_sq.begin(), nu_sq.end(), std::greater<>());

    std::vector<double> nu;
    nu.reserve(n_modes);
    for (int j = 0; j < n_modes; ++j) {
        const double a = nu_sq[2 * j];
        const double b = nu_sq[2 * j + 1];
        if (a - b > tol::pairing_rel * scale2)
            throw SpectrumNotReal("symplectic_eigenvalues: spectrum does not pair (" +
                                  fmt(a) + " vs " + fmt(b) + ")");
        nu.push_back(std::sqrt(0.5 * (a + b)));
    }
    return nu;
}

Eigen::MatrixXd schur_steered(const Eigen::MatrixXd& sigma, const Partition& part,
                              double* x_condition) {
    require_square(sigma, "schur_steered");
    require_finite(sigma, "schur_steered");
    if (sigma.rows() % 2 != 0)
        throw std::invalid_argument("schur_steered: matrix must have even dimension");
    const int n_modes = static_cast<int>(sigma.rows() / 2);
    part.validate(n_modes);
    if (asymmetry(sigma) > tol::symmetry_rel * std::max(1.0, sigma.norm()))
        throw NotSymmetric("schur_steered: input is not symmetric");

    // Reorder to (X modes, Y modes); modes outside the partition drop out,
    // which is the Gaussian partial trace.
    std::vector<int> rows;
    for (int mode : part.steering) {
        rows.push_back(2 * mode);
        rows.push_back(2 * mode + 1);
    }
    const int px = static_cast<int>(rows.size());
    for (int mode : part.steered) {
        rows.push_back(2 * mode);
        rows.push_back(2 * mode + 1);
    }
    const int total = static_cast<int>(rows.size());

    Eigen::MatrixXd reordered(total, total);
    for (int i = 0; i < total; ++i)
        for (int j = 0; j < total; ++j) reordered(i, j) = sigma(rows[i], rows[j]);

    const Eigen::MatrixXd x_block = reordered.topLeftCorner(px, px);
    const Eigen::MatrixXd z_block = reordered.topRightCorner(px, total - px);
    const Eigen::MatrixXd y_block = reordered.bottomRightCorner(total - px, total - px);

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(x_block,
                                          Eigen::ComputeThinU | Eigen::ComputeThinV);
    const double smin = svd.singularValues().minCoeff();
    const double smax = svd.singularValues().maxCoeff();
    const double condition =
        (smin > 0.0) ? smax / smin : std::numeric_limits<double>::infinity();
    if (x_condition) *x_condition = condition;
    if (!(condition <= tol::x_block_max_condition))
        throw SingularXBlock("schur_steered: X block condition " + fmt(condition) +
                             " exceeds " + fmt(tol::x_block_max_condition));

    Eigen::MatrixXd complement = y_block - z_block.transpose() * svd.solve(z_block);
    complement = 0.5 * (complement + complement.transpose()).eval();
    return complement;
}

double min_eigenvalue_hermitian(const Eigen::MatrixXcd& m) {
    if (m.rows() == 0 || m.rows() != m.cols())
        throw std::invalid_argument("min_eigenvalue_hermitian: matrix must be square");
    if (!m.allFinite())
        throw std::invalid_argument("min_eigenvalue_hermitian: non-finite entries");
    const double defect = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (defect > tol::symmetry_rel * std::max(1.0, m.norm()))
        throw NotHermitian("min_eigenvalue_hermitian: hermiticity defect " + fmt(defect));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw NoConvergence("min_eigenvalue_hermitian: eigensolver failed");
    return solver.eigenvalues().minCoeff();
}

}  // namespace gsteer::linalg
