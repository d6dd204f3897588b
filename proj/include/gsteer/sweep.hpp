// sweep.hpp — squeezing-parameter sweeps: row evaluation, CSV emission and
// exact re-parsing, window extraction, gnuplot script generation.

#pragma once

#include <array>
#include <string>
#include <vector>

#include "gsteer/model.hpp"
#include "gsteer/steering.hpp"

namespace gsteer::sweep {

struct SweepConfig {
    model::PhysicalParams physical;  // the r field is ignored (swept)
    double r_min = 0.0;
    double r_max = 2.0;
    int steps = 401;
    model::NoiseConvention convention = model::NoiseConvention::Physical;
    std::string output_path;  // CSV destination used by the CLI

    // r_min >= 0, r_max > r_min, steps >= 2.
    void validate() const;
};

// One grid point. `stable` flags rows whose drift matrix failed the
// stability check (steering columns are zero-filled in that case); the
// model at hand is provably always stable, so this is a formal escape
// hatch for non-default parameter sets.
struct SweepRow {
    double r = 0.0;
    steering::SteeringMatrix g;
    std::array<double, 3> res_col{};   // collective -> k residuals (A, B, C)
    std::array<double, 3> res_dist{};  // k -> collective residuals (A, B, C)
    bool genuine = false;
    steering::SteeringClass class_ab = steering::SteeringClass::NoWay;
    steering::SteeringClass class_ab_c = steering::SteeringClass::NoWay;
    steering::SteeringClass class_ac_b = steering::SteeringClass::NoWay;
    steering::SteeringClass class_bc_a = steering::SteeringClass::NoWay;
    bool stable = true;
};

// Uniform grid of cfg.steps points over [r_min, r_max], ascending r.
// Rows are independent; evaluation order never affects the output.
std::vector<SweepRow> run_sweep(const SweepConfig& cfg);

// CSV column names, in emission order.
const std::vector<std::string>& csv_columns();

// 17-significant-digit CSV with LF line endings; byte-deterministic for
// fixed rows. parse_csv(emit_csv(rows)) reproduces rows exactly.
std::string csv_string(const std::vector<SweepRow>& rows);
void emit_csv(const std::vector<SweepRow>& rows, const std::string& path);
std::vector<SweepRow> parse_csv(const std::string& path);
std::vector<SweepRow> parse_csv_text(const std::string& text,
                                     const std::string& name);

struct Window {
    std::string quantity;                          // predicate name
    std::vector<std::array<double, 2>> intervals;  // [r_lo, r_hi], sorted
};

// Maximal grid intervals on which a named predicate holds. Predicates:
//   genuine_tripartite
//   one_way(P), two_way(P), no_way(P)  with P in {ab, ab_c, ac_b, bc_a}
//   positive(column)                   for any steering/residual column
// Unknown names throw UnknownPredicate / UnknownColumn.
Window find_windows(const std::vector<SweepRow>& rows,
                    const std::string& predicate);

// gnuplot script rendering four figure groups from the emitted CSV
// (referenced by relative path): collective vs individual steering onto
// each mode, the same for each mode steering the rest, both monogamy
// residual families, and the four classified directional pairs with
// two-way/one-way/no-way shading.
std::string plot_script_string(const std::vector<SweepRow>& rows,
                               const std::string& csv_relative_path);
void emit_plot_script(const std::vector<SweepRow>& rows,
                      const std::string& script_path,
                      const std::string& csv_relative_path);

}  // namespace gsteer::sweep
