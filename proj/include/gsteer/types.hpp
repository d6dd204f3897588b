// types.hpp — covariance matrices and mode partitions.
//
// Conventions used throughout:
//   * one bosonic mode = one (x, y) quadrature pair, interleaved ordering
//     (x_1, y_1, x_2, y_2, ...);
//   * symplectic form Omega = direct sum of [[0, 1], [-1, 0]];
//   * a covariance matrix carries a units tag: VacuumHalf means the vacuum
//     state is I/2 (hbar = 1, x = (a^dag + a)/sqrt(2)), VacuumOne means the
//     same matrix scaled by 2 so the vacuum is the identity.

#pragma once

#include <Eigen/Dense>

#include <vector>

namespace gsteer {

enum class QuadratureUnits { VacuumHalf, VacuumOne };

struct CovarianceMatrix {
    Eigen::MatrixXd mat;  // 2 n_modes x 2 n_modes, symmetric
    int n_modes = 0;
    QuadratureUnits units = QuadratureUnits::VacuumHalf;

    static CovarianceMatrix vacuum(int n_modes);

    // The same state expressed with vacuum = I (doubles the matrix when the
    // tag is VacuumHalf; already-normalized matrices pass through unchanged).
    CovarianceMatrix vacuum_normalized() const;
};

// An ordered bipartition: party X (`steering`) tries to steer party Y
// (`steered`). Mode index sets must be disjoint, non-empty and in range.
struct Partition {
    std::vector<int> steering;
    std::vector<int> steered;

    Partition swapped() const { return Partition{steered, steering}; }

    // Throws std::invalid_argument on overlap, emptiness or range violation.
    void validate(int n_modes) const;
};

}  // namespace gsteer
