#pragma once

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "decomposition.hpp"

namespace qsep {

/// One line of scan output. Optional fields are empty in CSV and null in JSON
/// when the angle is infeasible.
struct ScanRow {
    double theta;
    double sin2theta;
    bool feasible;
    std::optional<double> x_min_numeric;
    std::optional<double> x_min_closed;
    std::optional<double> delta_max;
    double concurrence;
    std::optional<double> concurrence_product;
    double entanglement_pure;
    std::optional<double> entropy_product;
    double pos_margin;
    double ppt_margin;
};

inline constexpr const char* kScanCsvHeader =
    "theta,sin2theta,feasible,x_min_numeric,x_min_closed,delta_max,concurrence,"
    "concurrence_product,entanglement_pure,entropy_product,pos_margin,ppt_margin";

/// Fixed 12-significant-digit formatting; the output contract depends on this
/// being locale independent and reproducible byte for byte.
inline std::string format_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

inline ScanRow make_scan_row(const ThetaParam& p, const FeasibilityResult& r) {
    ScanRow row{};
    row.theta = p.theta();
    row.sin2theta = p.sin2theta();
    row.feasible = r.feasible;
    row.concurrence = concurrence_pure(psi_theta(p));
    row.entanglement_pure = entanglement_pure_entropy(psi_theta(p));
    row.pos_margin = r.min_eig_at_solution.pos_margin;
    row.ppt_margin = r.min_eig_at_solution.ppt_margin;
    if (r.feasible) {
        row.x_min_numeric = r.x_min;
        row.x_min_closed = r.closed_form_x_min;
        row.delta_max = r.delta_max;
        row.concurrence_product = (1.0 - *r.delta_max) * row.concurrence;
        row.entropy_product = (1.0 - *r.delta_max) * row.entanglement_pure;
    }
    return row;
}

inline std::string to_csv(const ScanRow& row) {
    auto opt = [](const std::optional<double>& v) { return v ? format_real(*v) : std::string(); };
    std::string out;
    out += format_real(row.theta);
    out += ',';
    out += format_real(row.sin2theta);
    out += ',';
    out += row.feasible ? "true" : "false";
    out += ',';
    out += opt(row.x_min_numeric);
    out += ',';
    out += opt(row.x_min_closed);
    out += ',';
    out += opt(row.delta_max);
    out += ',';
    out += format_real(row.concurrence);
    out += ',';
    out += opt(row.concurrence_product);
    out += ',';
    out += format_real(row.entanglement_pure);
    out += ',';
    out += opt(row.entropy_product);
    out += ',';
    out += format_real(row.pos_margin);
    out += ',';
    out += format_real(row.ppt_margin);
    return out;
}

inline std::string to_csv(const std::vector<ScanRow>& rows) {
    std::string out = kScanCsvHeader;
    out += '\n';
    for (const ScanRow& r : rows) {
        out += to_csv(r);
        out += '\n';
    }
    return out;
}

/// JSON mirror of the CSV: an array of objects with the same keys in the same
/// order, null for empty fields. Assembled textually so the number formatting
/// is identical to the CSV output.
inline std::string to_json_text(const std::vector<ScanRow>& rows) {
    auto opt = [](const std::optional<double>& v) {
        return v ? format_real(*v) : std::string("null");
    };
    std::string out = "[\n";
    for (size_t i = 0; i < rows.size(); ++i) {
        const ScanRow& r = rows[i];
        out += "  {";
        out += "\"theta\": " + format_real(r.theta);
        out += ", \"sin2theta\": " + format_real(r.sin2theta);
        out += std::string(", \"feasible\": ") + (r.feasible ? "true" : "false");
        out += ", \"x_min_numeric\": " + opt(r.x_min_numeric);
        out += ", \"x_min_closed\": " + opt(r.x_min_closed);
        out += ", \"delta_max\": " + opt(r.delta_max);
        out += ", \"concurrence\": " + format_real(r.concurrence);
        out += ", \"concurrence_product\": " + opt(r.concurrence_product);
        out += ", \"entanglement_pure\": " + format_real(r.entanglement_pure);
        out += ", \"entropy_product\": " + opt(r.entropy_product);
        out += ", \"pos_margin\": " + format_real(r.pos_margin);
        out += ", \"ppt_margin\": " + format_real(r.ppt_margin);
        out += i + 1 < rows.size() ? "},\n" : "}\n";
    }
    out += "]\n";
    return out;
}

/// Parse CSV produced by to_csv back into rows. The header must match
/// kScanCsvHeader exactly; malformed fields are rejected.
inline std::vector<ScanRow> parse_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != kScanCsvHeader)
        throw std::invalid_argument("parse_csv: missing or mismatched header");

    std::vector<ScanRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) fields.push_back(cell);
        if (line.back() == ',') fields.push_back("");
        if (fields.size() != 12)
            throw std::invalid_argument("parse_csv: expected 12 fields, got " +
                                        std::to_string(fields.size()));

        auto num = [&](size_t i) {
            size_t pos = 0;
            const double v = std::stod(fields[i], &pos);
            if (pos != fields[i].size())
                throw std::invalid_argument("parse_csv: bad number '" + fields[i] + "'");
            return v;
        };
        auto opt = [&](size_t i) -> std::optional<double> {
            if (fields[i].empty()) return std::nullopt;
            return num(i);
        };
        auto flag = [&](size_t i) {
            if (fields[i] == "true") return true;
            if (fields[i] == "false") return false;
            throw std::invalid_argument("parse_csv: bad boolean '" + fields[i] + "'");
        };

        ScanRow r{};
        r.theta = num(0);
        r.sin2theta = num(1);
        r.feasible = flag(2);
        r.x_min_numeric = opt(3);
        r.x_min_closed = opt(4);
        r.delta_max = opt(5);
        r.concurrence = num(6);
        r.concurrence_product = opt(7);
        r.entanglement_pure = num(8);
        r.entropy_product = opt(9);
        r.pos_margin = num(10);
        r.ppt_margin = num(11);
        rows.push_back(r);
    }
    return rows;
}

}  // namespace qsep
