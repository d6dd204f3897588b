#include "gsteer/types.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

namespace gsteer {

CovarianceMatrix CovarianceMatrix::vacuum(int n_modes) {
    if (n_modes <= 0) throw std::invalid_argument("vacuum: n_modes must be positive");
    CovarianceMatrix cm;
    cm.n_modes = n_modes;
    cm.units = QuadratureUnits::VacuumHalf;
    cm.mat = 0.5 * Eigen::MatrixXd::Identity(2 * n_modes, 2 * n_modes);
    return cm;
}

CovarianceMatrix CovarianceMatrix::vacuum_normalized() const {
    if (units == QuadratureUnits::VacuumOne) return *this;
    CovarianceMatrix out;
    out.n_modes = n_modes;
    out.units = QuadratureUnits::VacuumOne;
    out.mat = 2.0 * mat;
    return out;
}

void Partition::validate(int n_modes) const {
    if (steering.empty() || steered.empty())
        throw std::invalid_argument("partition: both parties must be non-empty");
    std::set<int> seen;
    for (const auto& party : {steering, steered}) {
        for (int m : party) {
            if (m < 0 || m >= n_modes)
                throw std::invalid_argument("partition: mode index " + std::to_string(m) +
                                            " out of range for " + std::to_string(n_modes) +
                                            " modes");
            if (!seen.insert(m).second)
                throw std::invalid_argument("partition: mode index " + std::to_string(m) +
                                            " appears twice");
        }
    }
}

}  // namespace gsteer
