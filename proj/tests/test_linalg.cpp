#include <doctest.h>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "gsteer/errors.hpp"
#include "gsteer/linalg.hpp"
#include "gsteer/model.hpp"
#include "gsteer/tolerances.hpp"
#include "support.hpp"

using namespace gsteer;

namespace {

Eigen::MatrixXd diag2(double a, double b) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2, 2);
    m(0, 0) = a;
    m(1, 1) = b;
    return m;
}

// Companion matrix of the monic polynomial with the given roots; the
// coefficients are expanded independently of any eigenvalue code.
Eigen::MatrixXd companion_from_roots(const std::vector<std::complex<double>>& roots) {
    std::vector<std::complex<double>> coeff{1.0};  // leading term
    for (const auto& root : roots) {
        std::vector<std::complex<double>> next(coeff.size() + 1, 0.0);
        for (std::size_t i = 0; i < coeff.size(); ++i) {
            next[i] += coeff[i];
            next[i + 1] -= coeff[i] * root;
        }
        coeff = std::move(next);
    }
    const int n = static_cast<int>(roots.size());
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i < n; ++i) c(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) {
        REQUIRE(std::abs(coeff[static_cast<std::size_t>(i + 1)].imag()) < 1e-12);
        c(0, i) = -coeff[static_cast<std::size_t>(i + 1)].real();
    }
    return c;
}

std::vector<std::complex<double>> sorted_complex(std::vector<std::complex<double>> v) {
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return v;
}

}  // namespace

TEST_CASE("symplectic form invariants") {
    for (int n : {1, 2, 3, 4}) {
        const linalg::SymplecticForm omega(n);
        CHECK((omega.mat + omega.mat.transpose()).norm() == 0.0);
        CHECK((omega.mat * omega.mat + Eigen::MatrixXd::Identity(2 * n, 2 * n)).norm() ==
              0.0);
    }
    CHECK_THROWS_AS(linalg::SymplecticForm(0), std::invalid_argument);
}

TEST_CASE("solve_lyapunov closed-form cases") {
    const Eigen::MatrixXd eye2 = Eigen::MatrixXd::Identity(2, 2);

    SUBCASE("K = -I/2, N = I gives the identity") {
        const Eigen::MatrixXd sigma = linalg::solve_lyapunov(-0.5 * eye2, eye2);
        CHECK((sigma - eye2).norm() < 1e-14);
    }
    SUBCASE("uncoupled scalar balance") {
        const Eigen::MatrixXd sigma = linalg::solve_lyapunov(diag2(-1.0, -2.0), eye2);
        CHECK((sigma - diag2(0.5, 0.25)).norm() < 1e-14);
    }
    SUBCASE("zero diffusion gives zero state") {
        const Eigen::MatrixXd sigma =
            linalg::solve_lyapunov(diag2(-1.0, -2.0), Eigen::MatrixXd::Zero(2, 2));
        CHECK(sigma.norm() == 0.0);
    }
}

TEST_CASE("solve_lyapunov rejects non-Hurwitz and malformed inputs") {
    const Eigen::MatrixXd eye2 = Eigen::MatrixXd::Identity(2, 2);

    Eigen::MatrixXd rotation(2, 2);
    rotation << 0, 1, -1, 0;  // marginal spectrum
    CHECK_THROWS_AS(linalg::solve_lyapunov(rotation, eye2), NotStable);
    CHECK_THROWS_AS(linalg::solve_lyapunov(eye2, eye2), NotStable);

    Eigen::MatrixXd asym(2, 2);
    asym << 1, 2, 3, 4;
    CHECK_THROWS_AS(linalg::solve_lyapunov(-eye2, asym), std::invalid_argument);
    CHECK_THROWS_AS(linalg::solve_lyapunov(-eye2, Eigen::MatrixXd::Identity(3, 3)),
                    std::invalid_argument);

    // stable but so badly conditioned that the residual cannot be certified
    Eigen::MatrixXd stiff(2, 2);
    stiff << -1.0, 1e3, 0.0, -1e-9;
    CHECK_THROWS_AS(linalg::solve_lyapunov(stiff, eye2), SingularSystem);
}

TEST_CASE("solve_lyapunov residual certification on random stable systems") {
    std::mt19937 rng(20240811);
    for (int trial = 0; trial < 50; ++trial) {
        const auto sys = test::random_stable_system(rng);
        const Eigen::MatrixXd sigma = linalg::solve_lyapunov(sys.drift, sys.diffusion);
        CHECK((sigma - sigma.transpose()).norm() == 0.0);
        const double residual =
            (sys.drift * sigma + sigma * sys.drift.transpose() + sys.diffusion).norm();
        CHECK(residual <= tol::lyapunov_rel_residual * sys.diffusion.norm());
    }
}

TEST_CASE("solve_lyapunov matches the RK4 integration oracle") {
    std::mt19937 rng(77001);
    for (int trial = 0; trial < 50; ++trial) {
        const auto sys = test::random_stable_system(rng);
        const Eigen::MatrixXd direct = linalg::solve_lyapunov(sys.drift, sys.diffusion);
        // e^{2 max_re t_final} < 1e-12 for max_re = -0.5, t_final = 30.
        const double dt = 0.09 / sys.drift.norm();
        const Eigen::MatrixXd integrated =
            linalg::integrate_lyapunov(sys.drift, sys.diffusion, 30.0, dt);
        CHECK((direct - integrated).norm() < 1e-8);
    }
}

TEST_CASE("integrate_lyapunov known fixed point and guards") {
    const Eigen::MatrixXd eye2 = Eigen::MatrixXd::Identity(2, 2);

    SUBCASE("relaxation to the identity") {
        const Eigen::MatrixXd sigma =
            linalg::integrate_lyapunov(-0.5 * eye2, eye2, 60.0, 1e-3);
        CHECK((sigma - eye2).norm() < 1e-9);
    }
    SUBCASE("zero source stays zero") {
        const Eigen::MatrixXd sigma = linalg::integrate_lyapunov(
            -0.5 * eye2, Eigen::MatrixXd::Zero(2, 2), 10.0, 1e-3);
        CHECK(sigma.norm() == 0.0);
    }
    SUBCASE("step guard") {
        // ||K||_F = sqrt(0.5), dt = 0.2 puts dt*||K|| above 0.1
        CHECK_THROWS_AS(linalg::integrate_lyapunov(-0.5 * eye2, eye2, 10.0, 0.2),
                        StepTooLarge);
        CHECK_THROWS_AS(linalg::integrate_lyapunov(-0.5 * eye2, eye2, 10.0, -1.0),
                        std::invalid_argument);
    }
}

TEST_CASE("eigenvalues of canonical matrices") {
    SUBCASE("diagonal") {
        const Eigen::VectorXcd raw = linalg::eigenvalues(diag2(-1.0, -2.0));
        const auto eig = sorted_complex({raw.begin(), raw.end()});
        CHECK(std::abs(eig[0] - std::complex<double>(-2.0, 0.0)) < 1e-14);
        CHECK(std::abs(eig[1] - std::complex<double>(-1.0, 0.0)) < 1e-14);
    }
    SUBCASE("rotation generator") {
        Eigen::MatrixXd rotation(2, 2);
        rotation << 0, 1, -1, 0;
        const Eigen::VectorXcd eig = linalg::eigenvalues(rotation);
        auto v = sorted_complex({eig.begin(), eig.end()});
        CHECK(std::abs(v[0] - std::complex<double>(0.0, -1.0)) < 1e-14);
        CHECK(std::abs(v[1] - std::complex<double>(0.0, 1.0)) < 1e-14);
    }
    SUBCASE("companion matrix of chosen roots") {
        const std::vector<std::complex<double>> roots = {
            {-1.0, 0.0}, {-2.0, 0.0}, {3.0, 0.0},
            {0.5, 0.0},  {-0.5, 2.0}, {-0.5, -2.0}};
        const Eigen::MatrixXd companion = companion_from_roots(roots);
        const Eigen::VectorXcd eig = linalg::eigenvalues(companion);
        const auto got = sorted_complex({eig.begin(), eig.end()});
        const auto want = sorted_complex(roots);
        for (std::size_t i = 0; i < want.size(); ++i)
            CHECK(std::abs(got[i] - want[i]) < 1e-9);
    }
}

TEST_CASE("symplectic eigenvalues: thermal, vacuum, squeezed") {
    SUBCASE("uncoupled thermal modes") {
        Eigen::VectorXd d(4);
        d << 3.0, 3.0, 7.0, 7.0;
        const auto nu = linalg::symplectic_eigenvalues(d.asDiagonal(), 2);
        REQUIRE(nu.size() == 2);
        CHECK(nu[0] == doctest::Approx(7.0).epsilon(1e-12));
        CHECK(nu[1] == doctest::Approx(3.0).epsilon(1e-12));
    }
    SUBCASE("identity is vacuum in normalized units") {
        const auto nu =
            linalg::symplectic_eigenvalues(Eigen::MatrixXd::Identity(6, 6), 3);
        for (double v : nu) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("two-mode squeezed state is pure") {
        const Eigen::MatrixXd m = test::tmsv_vacuum_one(0.5);
        const auto nu = linalg::symplectic_eigenvalues(m, 2);
        REQUIRE(nu.size() == 2);
        // independent route: eigenvalues of -(Omega M)^2 directly
        const Eigen::MatrixXd om = linalg::SymplecticForm(2).mat * m;
        const Eigen::VectorXcd sq = linalg::eigenvalues(-(om * om).eval());
        for (Eigen::Index i = 0; i < sq.size(); ++i) {
            CHECK(std::abs(sq(i).imag()) < 1e-10);
            CHECK(std::sqrt(sq(i).real()) == doctest::Approx(1.0).epsilon(1e-10));
        }
        CHECK(nu[0] == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(nu[1] == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("symplectic eigenvalues reject bad inputs") {
    Eigen::MatrixXd asym(2, 2);
    asym << 1, 1, 0, 1;
    CHECK_THROWS_AS(linalg::symplectic_eigenvalues(asym, 1), NotSymmetric);

    Eigen::VectorXd d(4);
    d << 1.0, 1.0, -1.0, -1.0;
    CHECK_THROWS_AS(linalg::symplectic_eigenvalues(Eigen::MatrixXd(d.asDiagonal()), 2),
                    NotPSD);
    CHECK_THROWS_AS(linalg::symplectic_eigenvalues(Eigen::MatrixXd::Identity(3, 3), 1),
                    std::invalid_argument);
}

TEST_CASE("symplectic eigenvalues are invariant under symplectic rotations") {
    std::mt19937 rng(5150);
    for (int trial = 0; trial < 25; ++trial) {
        const Eigen::MatrixXd m = test::random_spd(rng, 6);
        const Eigen::MatrixXd rot = test::rotation_direct_sum(rng, 3);
        const Eigen::MatrixXd rotated = rot * m * rot.transpose();
        const auto nu = linalg::symplectic_eigenvalues(m, 3);
        const auto nu_rot = linalg::symplectic_eigenvalues(
            0.5 * (rotated + rotated.transpose()), 3);
        for (std::size_t i = 0; i < nu.size(); ++i)
            CHECK(std::abs(nu[i] - nu_rot[i]) < 1e-10);
    }
}

TEST_CASE("spectrum of -(Omega M)^2 is real for PSD M") {
    std::mt19937 rng(424242);
    for (int trial = 0; trial < 25; ++trial) {
        const Eigen::MatrixXd m = test::random_spd(rng, 8, 0.0);
        const Eigen::MatrixXd om = linalg::SymplecticForm(4).mat * m;
        const Eigen::VectorXcd sq = linalg::eigenvalues(-(om * om).eval());
        const double scale2 = m.norm() * m.norm();
        for (Eigen::Index i = 0; i < sq.size(); ++i) {
            CHECK(std::abs(sq(i).imag()) <= tol::symplectic_imag_rel * scale2);
            CHECK(sq(i).real() >= -tol::symplectic_neg_rel * scale2);
        }
    }
}

TEST_CASE("schur_steered closed forms") {
    SUBCASE("no correlations returns the steered block") {
        Eigen::VectorXd d(6);
        d << 2, 2, 3, 3, 5, 5;
        const Eigen::MatrixXd sigma = d.asDiagonal();
        const Eigen::MatrixXd out =
            linalg::schur_steered(sigma, Partition{{0}, {2}});
        CHECK((out - 5.0 * Eigen::MatrixXd::Identity(2, 2)).norm() < 1e-14);
    }
    SUBCASE("identity stays identity") {
        const Eigen::MatrixXd out = linalg::schur_steered(
            Eigen::MatrixXd::Identity(8, 8), Partition{{0, 1}, {2, 3}});
        CHECK((out - Eigen::MatrixXd::Identity(4, 4)).norm() < 1e-14);
    }
    SUBCASE("two-mode squeezed analytic complement") {
        const double r = 0.5;
        const Eigen::MatrixXd sigma = test::tmsv_vacuum_one(r);
        const Eigen::MatrixXd out = linalg::schur_steered(sigma, Partition{{0}, {1}});
        const Eigen::MatrixXd want =
            (1.0 / std::cosh(2.0 * r)) * Eigen::MatrixXd::Identity(2, 2);
        CHECK((out - want).norm() < 1e-12);

        // symmetric state: swapping the parties gives the same complement
        const Eigen::MatrixXd swapped =
            linalg::schur_steered(sigma, Partition{{1}, {0}});
        CHECK((out - swapped).norm() < 1e-10);
    }
    SUBCASE("asymmetric state differs under swap") {
        Eigen::MatrixXd sigma = test::tmsv_vacuum_one(0.7);
        sigma(0, 0) += 0.8;
        sigma(1, 1) += 0.8;
        const Eigen::MatrixXd forward =
            linalg::schur_steered(sigma, Partition{{0}, {1}});
        const Eigen::MatrixXd backward =
            linalg::schur_steered(sigma, Partition{{1}, {0}});
        CHECK((forward - backward).norm() > 1e-3);
    }
}

TEST_CASE("schur_steered singular X block and condition reporting") {
    Eigen::VectorXd d(4);
    d << 0.0, 0.0, 1.0, 1.0;
    CHECK_THROWS_AS(
        linalg::schur_steered(Eigen::MatrixXd(d.asDiagonal()), Partition{{0}, {1}}),
        SingularXBlock);

    double condition = 0.0;
    Eigen::VectorXd w(4);
    w << 4.0, 2.0, 1.0, 1.0;
    linalg::schur_steered(Eigen::MatrixXd(w.asDiagonal()), Partition{{0}, {1}},
                          &condition);
    CHECK(condition == doctest::Approx(2.0).epsilon(1e-12));

    CHECK_THROWS_AS(linalg::schur_steered(Eigen::MatrixXd::Identity(4, 4),
                                          Partition{{0}, {0}}),
                    std::invalid_argument);
}

TEST_CASE("min_eigenvalue_hermitian") {
    CHECK(linalg::min_eigenvalue_hermitian(Eigen::MatrixXcd::Identity(3, 3)) ==
          doctest::Approx(1.0).epsilon(1e-14));

    Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(2, 2);
    d(0, 0) = 2.0;
    d(1, 1) = -3.0;
    CHECK(linalg::min_eigenvalue_hermitian(d) == doctest::Approx(-3.0).epsilon(1e-14));

    // vacuum saturates the Heisenberg bound
    const Eigen::MatrixXd omega = linalg::SymplecticForm(1).mat;
    const Eigen::MatrixXcd bound =
        0.5 * Eigen::MatrixXcd::Identity(2, 2) +
        std::complex<double>(0.0, 0.5) * omega.cast<std::complex<double>>();
    CHECK(std::abs(linalg::min_eigenvalue_hermitian(bound)) < 1e-12);

    Eigen::MatrixXcd nh = Eigen::MatrixXcd::Zero(2, 2);
    nh(0, 1) = std::complex<double>(1.0, 0.0);
    CHECK_THROWS_AS(linalg::min_eigenvalue_hermitian(nh), NotHermitian);
}

TEST_CASE("default-model drift certified against the integration oracle") {
    // reference parameter set at r = 0.5
    const model::PhysicalParams params;
    const model::DerivedParams derived = model::derive_params(params);
    const Eigen::MatrixXd drift = model::build_drift(derived, params.kappa, params.alpha);
    const Eigen::MatrixXd noise = model::build_noise(
        0.5, *params.n_bar, params.kappa, params.alpha,
        model::NoiseConvention::Physical);

    const Eigen::MatrixXd direct = linalg::solve_lyapunov(drift, noise);
    const double residual =
        (drift * direct + direct * drift.transpose() + noise).norm();
    CHECK(residual <= tol::lyapunov_rel_residual * noise.norm());

    // slowest decay ~3.5e5 rad/s, so 8e-5 s is far past convergence; the step
    // keeps dt * ||K||_F below the guard.
    const double dt = 0.09 / drift.norm();
    const Eigen::MatrixXd integrated =
        linalg::integrate_lyapunov(drift, noise, 8e-5, dt);
    CHECK((direct - integrated).norm() < 1e-8);
}
