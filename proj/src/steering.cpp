#include "gsteer/steering.hpp"

#include <cmath>
#include <stdexcept>

#include "gsteer/errors.hpp"
#include "gsteer/linalg.hpp"
#include "gsteer/tolerances.hpp"

namespace gsteer::steering {

namespace {

// Heisenberg bound in vacuum = I units: sigma' + i Omega >= 0.
void require_physical(const Eigen::MatrixXd& normalized, int n_modes) {
    const Eigen::MatrixXd omega = linalg::SymplecticForm(n_modes).mat;
    const Eigen::MatrixXcd heisenberg =
        normalized.cast<std::complex<double>>() +
        std::complex<double>(0.0, 1.0) * omega.cast<std::complex<double>>();
    const double margin = linalg::min_eigenvalue_hermitian(heisenberg);
    if (margin < -2.0 * tol::physicality_slack)
        throw Unphysical("gaussian_steering: state violates sigma + i Omega/2 >= 0 "
                         "(scaled margin " + std::to_string(margin) + ")");
}

// Measure evaluation on an already-validated vacuum = I matrix.
SteeringValue steering_value_unchecked(const Eigen::MatrixXd& normalized,
                                       const Partition& part) {
    const Eigen::MatrixXd complement = linalg::schur_steered(normalized, part);
    SteeringValue out;
    out.direction = part;
    out.nu_bar = linalg::symplectic_eigenvalues(
        complement, static_cast<int>(part.steered.size()));

    double sum = 0.0;
    for (double nu : out.nu_bar)
        if (nu < 1.0) sum -= std::log(nu);
    out.value = std::max(0.0, sum);
    return out;
}

}  // namespace

SteeringValue gaussian_steering(const CovarianceMatrix& cm, const Partition& part) {
    part.validate(cm.n_modes);
    const CovarianceMatrix normalized = cm.vacuum_normalized();
    require_physical(normalized.mat, cm.n_modes);
    return steering_value_unchecked(normalized.mat, part);
}

double SteeringMatrix::one_to_one(int x, int y) const {
    if (x == 0 && y == 1) return a_to_b;
    if (x == 1 && y == 0) return b_to_a;
    if (x == 0 && y == 2) return a_to_c;
    if (x == 2 && y == 0) return c_to_a;
    if (x == 1 && y == 2) return b_to_c;
    if (x == 2 && y == 1) return c_to_b;
    throw std::invalid_argument("SteeringMatrix::one_to_one: bad mode pair");
}

double SteeringMatrix::pair_to_single(int k) const {
    switch (k) {
        case 0: return bc_to_a;
        case 1: return ac_to_b;
        case 2: return ab_to_c;
    }
    throw std::invalid_argument("SteeringMatrix::pair_to_single: bad mode");
}

double SteeringMatrix::single_to_pair(int k) const {
    switch (k) {
        case 0: return a_to_bc;
        case 1: return b_to_ac;
        case 2: return c_to_ab;
    }
    throw std::invalid_argument("SteeringMatrix::single_to_pair: bad mode");
}

SteeringMatrix steering_matrix(const CovarianceMatrix& cm) {
    if (cm.n_modes != 3)
        throw std::invalid_argument("steering_matrix: exactly 3 modes required");
    const CovarianceMatrix normalized = cm.vacuum_normalized();
    require_physical(normalized.mat, cm.n_modes);
    const auto g = [&](std::vector<int> x, std::vector<int> y) {
        return steering_value_unchecked(normalized.mat,
                                        Partition{std::move(x), std::move(y)}).value;
    };
    SteeringMatrix m;
    m.a_to_b = g({0}, {1});
    m.b_to_a = g({1}, {0});
    m.a_to_c = g({0}, {2});
    m.c_to_a = g({2}, {0});
    m.b_to_c = g({1}, {2});
    m.c_to_b = g({2}, {1});
    m.ab_to_c = g({0, 1}, {2});
    m.c_to_ab = g({2}, {0, 1});
    m.ac_to_b = g({0, 2}, {1});
    m.b_to_ac = g({1}, {0, 2});
    m.bc_to_a = g({1, 2}, {0});
    m.a_to_bc = g({0}, {1, 2});
    return m;
}

MonogamyReport monogamy_report(const CovarianceMatrix& cm) {
    MonogamyReport report;
    report.g = steering_matrix(cm);

    for (int k = 0; k < 3; ++k) {
        const int i = (k == 0) ? 1 : 0;
        const int j = (k == 2) ? 1 : 2;
        report.collective_to_single[k] = report.g.pair_to_single(k) -
                                         report.g.one_to_one(i, k) -
                                         report.g.one_to_one(j, k);
        report.single_to_collective[k] = report.g.single_to_pair(k) -
                                         report.g.one_to_one(k, i) -
                                         report.g.one_to_one(k, j);
    }

    report.genuine_tripartite = true;
    for (int k = 0; k < 3; ++k) {
        if (report.g.pair_to_single(k) <= tol::steering_zero ||
            report.g.single_to_pair(k) <= tol::steering_zero)
            report.genuine_tripartite = false;
    }
    return report;
}

std::array<bool, 3> joint_exclusion_check(const CovarianceMatrix& cm) {
    const SteeringMatrix g = steering_matrix(cm);
    std::array<bool, 3> ok{};
    for (int k = 0; k < 3; ++k) {
        const int i = (k == 0) ? 1 : 0;
        const int j = (k == 2) ? 1 : 2;
        ok[k] = std::min(g.one_to_one(i, k), g.one_to_one(j, k)) <= tol::steering_zero;
    }
    return ok;
}

std::string to_string(SteeringClass c) {
    switch (c) {
        case SteeringClass::TwoWay: return "two_way";
        case SteeringClass::OneWayXtoY: return "one_way_x_to_y";
        case SteeringClass::OneWayYtoX: return "one_way_y_to_x";
        case SteeringClass::NoWay: return "no_way";
    }
    throw std::invalid_argument("to_string: bad SteeringClass");
}

SteeringClass steering_class_from_string(const std::string& s) {
    if (s == "two_way") return SteeringClass::TwoWay;
    if (s == "one_way_x_to_y") return SteeringClass::OneWayXtoY;
    if (s == "one_way_y_to_x") return SteeringClass::OneWayYtoX;
    if (s == "no_way") return SteeringClass::NoWay;
    throw ParseError("unknown steering class label '" + s + "'");
}

SteeringClass classify_values(double g_x_to_y, double g_y_to_x) {
    const bool xy = g_x_to_y > tol::steering_zero;
    const bool yx = g_y_to_x > tol::steering_zero;
    if (xy && yx) return SteeringClass::TwoWay;
    if (xy) return SteeringClass::OneWayXtoY;
    if (yx) return SteeringClass::OneWayYtoX;
    return SteeringClass::NoWay;
}

SteeringClass classify(const CovarianceMatrix& cm, const Partition& part) {
    const double forward = gaussian_steering(cm, part).value;
    const double backward = gaussian_steering(cm, part.swapped()).value;
    return classify_values(forward, backward);
}

}  // namespace gsteer::steering
