#include "gsteer/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "gsteer/errors.hpp"

namespace gsteer::io {

namespace {

std::string location(const std::string& name, int line) {
    return name + ":" + std::to_string(line);
}

bool comment_or_blank(const std::string& line) {
    const auto pos = line.find_first_not_of(" \t\r");
    return pos == std::string::npos || line[pos] == '#';
}

double parse_double(const std::string& token, const std::string& where) {
    const char* begin = token.c_str();
    char* end = nullptr;
    const double value = std::strtod(begin, &end);
    if (end == begin || *end != '\0')
        throw ParseError(where + ": cannot parse '" + token + "' as a number");
    return value;
}

std::string format17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

CovarianceMatrix parse_cm(std::istream& in, const std::string& name) {
    std::string line;
    int line_no = 0;
    int n_modes = -1;
    Eigen::MatrixXd mat;
    int next_row = 0;

    while (std::getline(in, line)) {
        ++line_no;
        if (comment_or_blank(line)) continue;
        std::istringstream fields(line);
        if (n_modes < 0) {
            std::string token;
            fields >> token;
            std::string extra;
            if (fields >> extra)
                throw ParseError(location(name, line_no) +
                                 ": expected a single integer mode count");
            try {
                std::size_t used = 0;
                n_modes = std::stoi(token, &used);
                if (used != token.size()) throw std::invalid_argument("");
            } catch (const std::exception&) {
                throw ParseError(location(name, line_no) + ": bad mode count '" + token + "'");
            }
            if (n_modes <= 0)
                throw ParseError(location(name, line_no) + ": mode count must be positive");
            mat.setZero(2 * n_modes, 2 * n_modes);
            continue;
        }
        if (next_row >= 2 * n_modes)
            throw ParseError(location(name, line_no) + ": more than " +
                             std::to_string(2 * n_modes) + " matrix rows");
        std::string token;
        int col = 0;
        while (fields >> token) {
            if (col >= 2 * n_modes)
                throw ParseError(location(name, line_no) + ": row has more than " +
                                 std::to_string(2 * n_modes) + " entries");
            const double v = parse_double(token, location(name, line_no));
            if (!std::isfinite(v))
                throw ParseError(location(name, line_no) + ": non-finite entry");
            mat(next_row, col++) = v;
        }
        if (col != 2 * n_modes)
            throw ParseError(location(name, line_no) + ": row has " + std::to_string(col) +
                             " entries, expected " + std::to_string(2 * n_modes));
        ++next_row;
    }
    if (n_modes < 0) throw ParseError(name + ": empty covariance-matrix file");
    if (next_row != 2 * n_modes)
        throw ParseError(name + ": got " + std::to_string(next_row) +
                         " matrix rows, expected " + std::to_string(2 * n_modes));

    CovarianceMatrix cm;
    cm.n_modes = n_modes;
    cm.units = QuadratureUnits::VacuumHalf;
    cm.mat = mat;
    return cm;
}

CovarianceMatrix read_cm(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open covariance-matrix file '" + path + "'");
    return parse_cm(in, path);
}

std::string cm_string(const CovarianceMatrix& cm) {
    std::string out = std::to_string(cm.n_modes) + "\n";
    for (Eigen::Index i = 0; i < cm.mat.rows(); ++i) {
        for (Eigen::Index j = 0; j < cm.mat.cols(); ++j) {
            if (j) out += ' ';
            out += format17(cm.mat(i, j));
        }
        out += '\n';
    }
    return out;
}

void write_cm(const CovarianceMatrix& cm, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << cm_string(cm);
    if (!out) throw IoError("write failed for '" + path + "'");
}

Config parse_config(std::istream& in, const std::string& name) {
    Config cfg;
    std::string line;
    int line_no = 0;
    std::set<std::string> seen;

    while (std::getline(in, line)) {
        ++line_no;
        if (comment_or_blank(line)) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError(location(name, line_no) + ": expected 'key = value'");
        const auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            const auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ParseError(location(name, line_no) + ": empty key or value");
        if (!seen.insert(key).second)
            throw ParseError(location(name, line_no) + ": repeated key '" + key + "'");

        const std::string where = location(name, line_no);
        if (key == "l") cfg.physical.cavity_length = parse_double(value, where);
        else if (key == "kappa") cfg.physical.kappa = parse_double(value, where);
        else if (key == "omega_c") cfg.physical.omega_cavity = parse_double(value, where);
        else if (key == "omega_L") cfg.physical.omega_laser = parse_double(value, where);
        else if (key == "power_1") cfg.physical.power_1 = parse_double(value, where);
        else if (key == "power_2") cfg.physical.power_2 = parse_double(value, where);
        else if (key == "mu") cfg.physical.mass = parse_double(value, where);
        else if (key == "omega_m") cfg.physical.omega_m = parse_double(value, where);
        else if (key == "alpha") cfg.physical.alpha = parse_double(value, where);
        else if (key == "n_bar") cfg.physical.n_bar = parse_double(value, where);
        else if (key == "r") cfg.physical.r = parse_double(value, where);
        else if (key == "noise_convention") {
            try {
                cfg.convention = model::noise_convention_from_string(value);
            } catch (const ParseError& e) {
                throw ParseError(where + ": " + e.what());
            }
        } else {
            throw ParseError(where + ": unknown key '" + key + "'");
        }
    }
    return cfg;
}

Config read_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file '" + path + "'");
    return parse_config(in, path);
}

}  // namespace gsteer::io
