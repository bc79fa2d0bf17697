#include "slicevol/report.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace slicevol {

namespace {

const char* kCsvHeader = "label,command,n,d,value,std_error,samples,seed,verdict";

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::vector<std::array<std::string, 9>> render_cells(const Report& report) {
    std::vector<std::array<std::string, 9>> cells;
    cells.reserve(report.rows.size());
    for (const ReportRow& r : report.rows) {
        cells.push_back({r.label, r.command, std::to_string(r.n), std::to_string(r.d),
                         format_number(r.value), format_number(r.std_error),
                         std::to_string(r.samples), std::to_string(r.seed), r.verdict});
    }
    return cells;
}

} // namespace

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

ReportFormat report_format_from_name(const std::string& name) {
    if (name == "table") return ReportFormat::Table;
    if (name == "csv") return ReportFormat::Csv;
    if (name == "json") return ReportFormat::Json;
    throw std::invalid_argument("unknown format '" + name + "' (expected table, csv or json)");
}

std::string emit_report(const Report& report, ReportFormat format) {
    if (format == ReportFormat::Csv) {
        std::ostringstream out;
        out << kCsvHeader << '\n';
        for (const auto& row : render_cells(report)) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                if (i) out << ',';
                out << csv_escape(row[i]);
            }
            out << '\n';
        }
        return out.str();
    }

    if (format == ReportFormat::Json) {
        nlohmann::ordered_json j;
        j["rows"] = nlohmann::ordered_json::array();
        for (const ReportRow& r : report.rows) {
            j["rows"].push_back({{"label", r.label},
                                 {"command", r.command},
                                 {"n", r.n},
                                 {"d", r.d},
                                 {"value", r.value},
                                 {"std_error", r.std_error},
                                 {"samples", r.samples},
                                 {"seed", r.seed},
                                 {"verdict", r.verdict}});
        }
        j["notes"] = report.notes;
        return j.dump(2) + "\n";
    }

    // Aligned table.
    static const std::array<const char*, 9> headers = {"label",     "command", "n",    "d",
                                                       "value",     "std_error", "samples",
                                                       "seed",      "verdict"};
    auto cells = render_cells(report);
    std::array<std::size_t, 9> widths{};
    for (std::size_t i = 0; i < headers.size(); ++i) widths[i] = std::string(headers[i]).size();
    for (const auto& row : cells)
        for (std::size_t i = 0; i < row.size(); ++i) widths[i] = std::max(widths[i], row[i].size());

    std::ostringstream out;
    auto emit_line = [&](const auto& row) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << "  ";
            out << row[i];
            for (std::size_t p = std::string(row[i]).size(); p < widths[i]; ++p) out << ' ';
        }
        out << '\n';
    };
    emit_line(headers);
    for (const auto& row : cells) emit_line(row);
    for (const std::string& note : report.notes) out << "# " << note << '\n';
    return out.str();
}

} // namespace slicevol
