// steering.hpp — Gaussian steering quantification over mode bipartitions,
// monogamy residuals, joint-steering exclusion and directional classification.
//
// The measure: for a bipartite state with (vacuum = I)-normalized covariance
// matrix [[X, Z], [Z^T, Y]],
//
//   G(X -> Y) = max(0, -sum_{nu_j < 1} ln nu_j)
//
// where nu_j are the symplectic eigenvalues of the Schur complement
// Y - Z^T X^{-1} Z. G is asymmetric in X <-> Y, vanishes on nonsteerable
// states, and is reported in nats.

#pragma once

#include <array>
#include <string>
#include <vector>

#include "gsteer/types.hpp"

namespace gsteer::steering {

struct SteeringValue {
    double value = 0.0;           // nats
    Partition direction;          // X -> Y
    std::vector<double> nu_bar;   // vacuum-normalized symplectic eigenvalues
                                  // of the steered party's Schur complement
};

// Directed steerability of part.steering over part.steered. The covariance
// matrix is rescaled to vacuum = I internally when tagged VacuumHalf.
SteeringValue gaussian_steering(const CovarianceMatrix& cm,
                                const Partition& part);

// All twelve directed values on a three-mode state (modes A=0, B=1, C=2):
// six one-vs-one, three pair-vs-one, three one-vs-pair.
struct SteeringMatrix {
    double a_to_b = 0, b_to_a = 0;
    double a_to_c = 0, c_to_a = 0;
    double b_to_c = 0, c_to_b = 0;
    double ab_to_c = 0, c_to_ab = 0;
    double ac_to_b = 0, b_to_ac = 0;
    double bc_to_a = 0, a_to_bc = 0;

    double one_to_one(int x, int y) const;  // G(x -> y), x != y
    double pair_to_single(int k) const;     // G((ij) -> k)
    double single_to_pair(int k) const;     // G(k -> (ij))
};

SteeringMatrix steering_matrix(const CovarianceMatrix& cm);

// Residuals of the two tripartite monogamy inequalities, per mode k:
//   collective_to_single[k] = G((ij) -> k) - G(i -> k) - G(j -> k)
//   single_to_collective[k] = G(k -> (ij)) - G(k -> i) - G(k -> j)
// Both are >= 0 for monogamous states; negative values are reported as-is
// (a violation), never clamped. genuine_tripartite is true when all six
// collective values exceed tol::steering_zero.
struct MonogamyReport {
    SteeringMatrix g;
    std::array<double, 3> collective_to_single{};
    std::array<double, 3> single_to_collective{};
    bool genuine_tripartite = false;
};

MonogamyReport monogamy_report(const CovarianceMatrix& cm);

// Per steered mode k: true iff at most one of the two single-mode parties
// steers k, i.e. min(G(i -> k), G(j -> k)) <= tol::steering_zero.
std::array<bool, 3> joint_exclusion_check(const CovarianceMatrix& cm);

enum class SteeringClass { TwoWay, OneWayXtoY, OneWayYtoX, NoWay };

std::string to_string(SteeringClass c);
SteeringClass steering_class_from_string(const std::string& s);

SteeringClass classify_values(double g_x_to_y, double g_y_to_x);
SteeringClass classify(const CovarianceMatrix& cm, const Partition& part);

}  // namespace gsteer::steering
