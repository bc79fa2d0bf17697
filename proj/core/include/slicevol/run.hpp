#pragma once

#include "slicevol/report.hpp"
#include "slicevol/sampling.hpp"
#include "slicevol/starbody.hpp"

#include <optional>
#include <string>
#include <vector>

namespace slicevol {

enum class Command { Volume, Slice, Functional, Defect, Circularity, Compare, DemoNecessity,
                     Selfcheck };

Command command_from_name(const std::string& name); // throws std::invalid_argument
std::string command_name(Command c);

struct RunConfig {
    Command command = Command::Volume;
    QuadratureSpec quad;
    double tol = 1e-9;
    ReportFormat format = ReportFormat::Table;
    std::size_t lines = 1;                       // sampled lines for `slice`
    std::optional<std::vector<double>> direction; // explicit line for `slice`
    std::size_t validation_probes = 2000;
    int grid_n = 512;                            // selfcheck grid oracle
};

/// Dispatches a command over the given bodies and assembles the report.
/// Commands taking one body run once per body; `compare` requires exactly
/// two (A then B). Throws on misuse; selfcheck failures are reported in the
/// rows (verdict "fail") and by selfcheck_passed().
Report run_command(const RunConfig& config, const std::vector<StarBody>& bodies);

bool selfcheck_passed(const Report& report);

} // namespace slicevol
