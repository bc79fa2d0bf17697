#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace slicevol {

enum class ReportFormat { Table, Csv, Json };

ReportFormat report_format_from_name(const std::string& name); // throws std::invalid_argument

/// One reported quantity. Stochastic values always carry std_error, sample
/// count and seed.
struct ReportRow {
    std::string label;
    std::string command;
    int n = 0;
    int d = 0;
    double value = 0.0;
    double std_error = 0.0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    std::string verdict;
};

struct Report {
    std::vector<ReportRow> rows;
    std::vector<std::string> notes; // caveats (table / json output only)
};

/// CSV columns are fixed: label,command,n,d,value,std_error,samples,seed,verdict.
/// Numbers are printed with 12 significant digits, so equal inputs give
/// byte-identical output.
std::string emit_report(const Report& report, ReportFormat format);

/// %.12g rendering used by every emitter.
std::string format_number(double v);

} // namespace slicevol
