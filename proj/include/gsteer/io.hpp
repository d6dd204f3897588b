// io.hpp — text formats: covariance-matrix files and key=value config files.

#pragma once

#include <istream>
#include <string>

#include "gsteer/model.hpp"
#include "gsteer/types.hpp"

namespace gsteer::io {

// Covariance-matrix text format:
//   line 1: integer n_modes
//   then 2n lines of 2n whitespace-separated decimal reals (row-major)
//   '#' starts a comment line anywhere; blank lines are ignored.
// Matrices are written with 17 significant digits so doubles round-trip
// exactly. Parse errors carry 1-based line numbers.
CovarianceMatrix read_cm(const std::string& path);
CovarianceMatrix parse_cm(std::istream& in, const std::string& name);
void write_cm(const CovarianceMatrix& cm, const std::string& path);
std::string cm_string(const CovarianceMatrix& cm);

struct Config {
    model::PhysicalParams physical;
    model::NoiseConvention convention = model::NoiseConvention::Physical;
};

// Flat key = value config, '#' comments. Accepted keys (SI units):
//   l, kappa, omega_c, omega_L, power_1, power_2, mu, omega_m, alpha,
//   n_bar, r, noise_convention   (values: physical | paper-literal)
// Unknown keys and repeated keys are parse errors. Omitted keys keep the
// built-in defaults.
Config read_config(const std::string& path);
Config parse_config(std::istream& in, const std::string& name);

}  // namespace gsteer::io
