#include "gsteer/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "gsteer/errors.hpp"
#include "gsteer/tolerances.hpp"

namespace gsteer::sweep {

namespace {

std::string format17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double parse_double(const std::string& token, const std::string& where) {
    const char* begin = token.c_str();
    char* end = nullptr;
    const double value = std::strtod(begin, &end);
    if (end == begin || *end != '\0')
        throw ParseError(where + ": cannot parse '" + token + "' as a number");
    return value;
}

using steering::SteeringClass;

// Numeric column accessors, keyed by CSV column name.
const std::map<std::string, std::function<double(const SweepRow&)>>& numeric_columns() {
    static const std::map<std::string, std::function<double(const SweepRow&)>> cols = {
        {"r", [](const SweepRow& w) { return w.r; }},
        {"g_a_b", [](const SweepRow& w) { return w.g.a_to_b; }},
        {"g_b_a", [](const SweepRow& w) { return w.g.b_to_a; }},
        {"g_a_c", [](const SweepRow& w) { return w.g.a_to_c; }},
        {"g_c_a", [](const SweepRow& w) { return w.g.c_to_a; }},
        {"g_b_c", [](const SweepRow& w) { return w.g.b_to_c; }},
        {"g_c_b", [](const SweepRow& w) { return w.g.c_to_b; }},
        {"g_ab_c", [](const SweepRow& w) { return w.g.ab_to_c; }},
        {"g_c_ab", [](const SweepRow& w) { return w.g.c_to_ab; }},
        {"g_ac_b", [](const SweepRow& w) { return w.g.ac_to_b; }},
        {"g_b_ac", [](const SweepRow& w) { return w.g.b_to_ac; }},
        {"g_bc_a", [](const SweepRow& w) { return w.g.bc_to_a; }},
        {"g_a_bc", [](const SweepRow& w) { return w.g.a_to_bc; }},
        {"res_col_a", [](const SweepRow& w) { return w.res_col[0]; }},
        {"res_col_b", [](const SweepRow& w) { return w.res_col[1]; }},
        {"res_col_c", [](const SweepRow& w) { return w.res_col[2]; }},
        {"res_dist_a", [](const SweepRow& w) { return w.res_dist[0]; }},
        {"res_dist_b", [](const SweepRow& w) { return w.res_dist[1]; }},
        {"res_dist_c", [](const SweepRow& w) { return w.res_dist[2]; }},
    };
    return cols;
}

SteeringClass class_column(const SweepRow& row, const std::string& name) {
    if (name == "ab") return row.class_ab;
    if (name == "ab_c") return row.class_ab_c;
    if (name == "ac_b") return row.class_ac_b;
    if (name == "bc_a") return row.class_bc_a;
    throw UnknownColumn("unknown partition '" + name +
                        "' (expected ab, ab_c, ac_b or bc_a)");
}

}  // namespace

void SweepConfig::validate() const {
    if (!(r_min >= 0.0)) throw std::invalid_argument("sweep: r_min must be >= 0");
    if (!(r_max > r_min)) throw std::invalid_argument("sweep: r_max must exceed r_min");
    if (steps < 2) throw std::invalid_argument("sweep: steps must be >= 2");
}

std::vector<SweepRow> run_sweep(const SweepConfig& cfg) {
    cfg.validate();
    cfg.physical.validate();

    std::vector<SweepRow> rows(static_cast<std::size_t>(cfg.steps));
    for (int i = 0; i < cfg.steps; ++i) {
        SweepRow& row = rows[static_cast<std::size_t>(i)];
        row.r = cfg.r_min + (cfg.r_max - cfg.r_min) * i / (cfg.steps - 1);

        model::PhysicalParams p = cfg.physical;
        p.r = row.r;
        try {
            const CovarianceMatrix cm = model::steady_state_cm(p, cfg.convention);
            const steering::MonogamyReport report = steering::monogamy_report(cm);
            row.g = report.g;
            row.res_col = report.collective_to_single;
            row.res_dist = report.single_to_collective;
            row.genuine = report.genuine_tripartite;
            row.class_ab = steering::classify_values(row.g.a_to_b, row.g.b_to_a);
            row.class_ab_c = steering::classify_values(row.g.ab_to_c, row.g.c_to_ab);
            row.class_ac_b = steering::classify_values(row.g.ac_to_b, row.g.b_to_ac);
            row.class_bc_a = steering::classify_values(row.g.bc_to_a, row.g.a_to_bc);
            row.stable = true;
        } catch (const NumericError&) {
            // NotStable drift or (paper-literal runs) Unphysical state:
            // flagged row with zero-valued columns, not a crash.
            row.stable = false;
        }
    }
    return rows;
}

const std::vector<std::string>& csv_columns() {
    static const std::vector<std::string> cols = {
        "r",
        "g_a_b", "g_b_a", "g_a_c", "g_c_a", "g_b_c", "g_c_b",
        "g_ab_c", "g_c_ab", "g_ac_b", "g_b_ac", "g_bc_a", "g_a_bc",
        "res_col_a", "res_col_b", "res_col_c",
        "res_dist_a", "res_dist_b", "res_dist_c",
        "genuine",
        "class_ab", "class_ab_c", "class_ac_b", "class_bc_a",
        "stable",
    };
    return cols;
}

std::string csv_string(const std::vector<SweepRow>& rows) {
    std::string out;
    const auto& cols = csv_columns();
    for (std::size_t i = 0; i < cols.size(); ++i) {
        if (i) out += ',';
        out += cols[i];
    }
    out += '\n';

    for (const SweepRow& row : rows) {
        out += format17(row.r);
        for (const auto& name : {"g_a_b", "g_b_a", "g_a_c", "g_c_a", "g_b_c", "g_c_b",
                                 "g_ab_c", "g_c_ab", "g_ac_b", "g_b_ac", "g_bc_a",
                                 "g_a_bc", "res_col_a", "res_col_b", "res_col_c",
                                 "res_dist_a", "res_dist_b", "res_dist_c"}) {
            out += ',';
            out += format17(numeric_columns().at(name)(row));
        }
        out += row.genuine ? ",1" : ",0";
        for (const SteeringClass c :
             {row.class_ab, row.class_ab_c, row.class_ac_b, row.class_bc_a}) {
            out += ',';
            out += steering::to_string(c);
        }
        out += row.stable ? ",1" : ",0";
        out += '\n';
    }
    return out;
}

void emit_csv(const std::vector<SweepRow>& rows, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << csv_string(rows);
    if (!out) throw IoError("write failed for '" + path + "'");
}

std::vector<SweepRow> parse_csv_text(const std::string& text, const std::string& name) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;

    const auto split = [](const std::string& s) {
        std::vector<std::string> fields;
        std::size_t start = 0;
        while (true) {
            const auto comma = s.find(',', start);
            fields.push_back(s.substr(start, comma - start));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (!fields.empty() && !fields.back().empty() && fields.back().back() == '\r')
            fields.back().pop_back();
        return fields;
    };

    if (!std::getline(in, line)) throw ParseError(name + ": empty CSV");
    ++line_no;
    if (split(line) != csv_columns())
        throw ParseError(name + ":1: unexpected CSV header");

    std::vector<SweepRow> rows;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto fields = split(line);
        const std::string where = name + ":" + std::to_string(line_no);
        if (fields.size() != csv_columns().size())
            throw ParseError(where + ": expected " + std::to_string(csv_columns().size()) +
                             " fields, got " + std::to_string(fields.size()));

        SweepRow row;
        std::size_t f = 0;
        row.r = parse_double(fields[f++], where);
        double* numeric[] = {&row.g.a_to_b, &row.g.b_to_a, &row.g.a_to_c, &row.g.c_to_a,
                             &row.g.b_to_c, &row.g.c_to_b, &row.g.ab_to_c, &row.g.c_to_ab,
                             &row.g.ac_to_b, &row.g.b_to_ac, &row.g.bc_to_a, &row.g.a_to_bc,
                             &row.res_col[0], &row.res_col[1], &row.res_col[2],
                             &row.res_dist[0], &row.res_dist[1], &row.res_dist[2]};
        for (double* slot : numeric) *slot = parse_double(fields[f++], where);

        const auto parse_flag = [&](const std::string& token) {
            if (token == "0") return false;
            if (token == "1") return true;
            throw ParseError(where + ": expected 0/1 flag, got '" + token + "'");
        };
        row.genuine = parse_flag(fields[f++]);
        try {
            row.class_ab = steering::steering_class_from_string(fields[f++]);
            row.class_ab_c = steering::steering_class_from_string(fields[f++]);
            row.class_ac_b = steering::steering_class_from_string(fields[f++]);
            row.class_bc_a = steering::steering_class_from_string(fields[f++]);
        } catch (const ParseError& e) {
            throw ParseError(where + ": " + e.what());
        }
        row.stable = parse_flag(fields[f++]);
        rows.push_back(row);
    }
    return rows;
}

std::vector<SweepRow> parse_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open CSV file '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_csv_text(text.str(), path);
}

Window find_windows(const std::vector<SweepRow>& rows, const std::string& predicate) {
    if (rows.empty()) throw std::invalid_argument("find_windows: no rows");

    std::function<bool(const SweepRow&)> test;
    if (predicate == "genuine_tripartite") {
        test = [](const SweepRow& w) { return w.genuine; };
    } else if (const auto open = predicate.find('('); open != std::string::npos) {
        if (predicate.back() != ')')
            throw UnknownPredicate("malformed predicate '" + predicate + "'");
        const std::string head = predicate.substr(0, open);
        const std::string arg = predicate.substr(open + 1, predicate.size() - open - 2);
        if (head == "positive") {
            const auto it = numeric_columns().find(arg);
            if (it == numeric_columns().end())
                throw UnknownColumn("unknown column '" + arg + "'");
            const auto get = it->second;
            test = [get](const SweepRow& w) { return get(w) > 0.0; };
        } else if (head == "one_way") {
            test = [arg](const SweepRow& w) {
                const SteeringClass c = class_column(w, arg);
                return c == SteeringClass::OneWayXtoY || c == SteeringClass::OneWayYtoX;
            };
        } else if (head == "two_way") {
            test = [arg](const SweepRow& w) {
                return class_column(w, arg) == SteeringClass::TwoWay;
            };
        } else if (head == "no_way") {
            test = [arg](const SweepRow& w) {
                return class_column(w, arg) == SteeringClass::NoWay;
            };
        } else {
            throw UnknownPredicate("unknown predicate '" + head + "'");
        }
    } else {
        throw UnknownPredicate("unknown predicate '" + predicate + "'");
    }

    Window window;
    window.quantity = predicate;
    std::size_t i = 0;
    while (i < rows.size()) {
        if (!test(rows[i])) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j + 1 < rows.size() && test(rows[j + 1])) ++j;
        window.intervals.push_back({rows[i].r, rows[j].r});
        i = j + 1;
    }
    return window;
}

// ---------------------------------- plots -----------------------------------

namespace {

struct Panel {
    std::string title;
    // pairs of (1-based CSV column, legend label)
    std::vector<std::pair<int, std::string>> series;
    const char* class_partition = nullptr;  // shading source, when set
};

std::string shading_objects(const std::vector<SweepRow>& rows, const char* partition) {
    // Background rectangles per classification run: two-way red, one-way
    // green, no-way blue.
    std::string out = "unset object\n";
    std::size_t i = 0;
    int id = 1;
    while (i < rows.size()) {
        const SteeringClass c = class_column(rows[i], partition);
        std::size_t j = i;
        while (j + 1 < rows.size() && class_column(rows[j + 1], partition) == c) ++j;
        const char* color = nullptr;
        switch (c) {
            case SteeringClass::TwoWay: color = "#f6c8c8"; break;
            case SteeringClass::NoWay: color = "#c8d6f6"; break;
            default: color = "#c8ecc8"; break;
        }
        out += "set object " + std::to_string(id++) + " rectangle from " +
               format17(rows[i].r) + ", graph 0 to " + format17(rows[j].r) +
               ", graph 1 fillcolor rgb '" + color +
               "' fillstyle solid 0.6 noborder behind\n";
        i = j + 1;
    }
    return out;
}

std::string panel_block(const std::vector<SweepRow>& rows, const Panel& panel) {
    std::string out;
    out += panel.class_partition ? shading_objects(rows, panel.class_partition)
                                 : std::string("unset object\n");
    out += "set title '" + panel.title + "'\n";
    if (rows.empty()) {
        out += "plot NaN notitle\n";
        return out;
    }
    out += "plot ";
    bool first = true;
    for (const auto& [column, label] : panel.series) {
        if (!first) out += ", \\\n     ";
        out += "csv using 1:" + std::to_string(column) + " with lines lw 2 title '" +
               label + "'";
        first = false;
    }
    out += "\n";
    return out;
}

std::string figure_group(const std::vector<SweepRow>& rows, const std::string& png,
                         int layout_rows, int layout_cols,
                         const std::vector<Panel>& panels) {
    std::string out;
    out += "set output '" + png + "'\n";
    out += "set multiplot layout " + std::to_string(layout_rows) + "," +
           std::to_string(layout_cols) + "\n";
    for (const Panel& panel : panels) out += panel_block(rows, panel);
    out += "unset multiplot\n\n";
    return out;
}

}  // namespace

std::string plot_script_string(const std::vector<SweepRow>& rows,
                               const std::string& csv_relative_path) {
    std::string stem = csv_relative_path;
    if (const auto dot = stem.rfind('.'); dot != std::string::npos && dot > 0)
        stem = stem.substr(0, dot);

    std::string out;
    out += "# steering sweep figures; run:  gnuplot <this file>\n";
    out += "csv = '" + csv_relative_path + "'\n";
    out += "set datafile separator ','\n";
    out += "set terminal pngcairo size 1280,960 enhanced\n";
    out += "set grid\n";
    out += "set xlabel 'squeezing r'\n";
    out += "set ylabel 'steering [nats]'\n";
    if (!rows.empty()) {
        out += "set xrange [" + format17(rows.front().r) + ":" +
               format17(rows.back().r) + "]\n";
    } else {
        out += "set xrange [0:1]\nset yrange [0:1]\n";
    }
    out += "\n";

    out += figure_group(rows, stem + "_collective_to_mode.png", 2, 2,
        {{"steering onto A", {{12, "(BC)->A"}, {3, "B->A"}, {5, "C->A"}}, nullptr},
         {"steering onto B", {{10, "(AC)->B"}, {2, "A->B"}, {7, "C->B"}}, nullptr},
         {"steering onto C", {{8, "(AB)->C"}, {4, "A->C"}, {6, "B->C"}}, nullptr},
         {"monogamy residuals, collective steering party",
          {{14, "res (BC)->A"}, {15, "res (AC)->B"}, {16, "res (AB)->C"}}, nullptr}});

    out += figure_group(rows, stem + "_mode_to_collective.png", 2, 2,
        {{"A steering the rest", {{13, "A->(BC)"}, {2, "A->B"}, {4, "A->C"}}, nullptr},
         {"B steering the rest", {{11, "B->(AC)"}, {3, "B->A"}, {6, "B->C"}}, nullptr},
         {"C steering the rest", {{9, "C->(AB)"}, {5, "C->A"}, {7, "C->B"}}, nullptr},
         {"monogamy residuals, collective steered party",
          {{17, "res A->(BC)"}, {18, "res B->(AC)"}, {19, "res C->(AB)"}}, nullptr}});

    out += figure_group(rows, stem + "_monogamy.png", 1, 2,
        {{"collective-steering-party residuals",
          {{14, "(BC)/A"}, {15, "(AC)/B"}, {16, "(AB)/C"}}, nullptr},
         {"collective-steered-party residuals",
          {{17, "A/(BC)"}, {18, "B/(AC)"}, {19, "C/(AB)"}}, nullptr}});

    out += figure_group(rows, stem + "_directional.png", 2, 2,
        {{"(BC) <-> A", {{12, "(BC)->A"}, {13, "A->(BC)"}}, "bc_a"},
         {"(AC) <-> B", {{10, "(AC)->B"}, {11, "B->(AC)"}}, "ac_b"},
         {"(AB) <-> C", {{8, "(AB)->C"}, {9, "C->(AB)"}}, "ab_c"},
         {"A <-> B", {{2, "A->B"}, {3, "B->A"}}, "ab"}});

    out += "unset output\n";
    return out;
}

void emit_plot_script(const std::vector<SweepRow>& rows, const std::string& script_path,
                      const std::string& csv_relative_path) {
    std::ofstream out(script_path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + script_path + "' for writing");
    out << plot_script_string(rows, csv_relative_path);
    if (!out) throw IoError("write failed for '" + script_path + "'");
}

}  // namespace gsteer::sweep
