#include "slicevol/bodyspec.hpp"
#include "slicevol/errors.hpp"
#include "slicevol/report.hpp"
#include "slicevol/run.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;
constexpr int kExitSelfcheck = 3;

struct CliOptions {
    std::vector<std::string> spec_paths;
    std::string format = "table";
    std::string out_path;
    std::string direction;
    slicevol::RunConfig config;
    bool seed_given = false;
};

std::vector<double> parse_direction(const std::string& text) {
    std::vector<double> coords;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        coords.push_back(std::stod(item, &used));
        if (used != item.size()) throw std::invalid_argument("bad coordinate '" + item + "'");
    }
    if (coords.empty()) throw std::invalid_argument("empty direction");
    return coords;
}

int run(const CliOptions& opts, slicevol::Command command) {
    slicevol::RunConfig config = opts.config;
    config.command = command;
    config.format = slicevol::report_format_from_name(opts.format);

    const bool deterministic_slice =
        command == slicevol::Command::Slice && !opts.direction.empty();
    if (!opts.seed_given && !deterministic_slice) {
        std::cerr << "slicevol: --seed is required for stochastic commands\n";
        return kExitUsage;
    }
    if (!opts.direction.empty()) {
        try {
            config.direction = parse_direction(opts.direction);
        } catch (const std::exception& e) {
            std::cerr << "slicevol: --direction: " << e.what() << "\n";
            return kExitUsage;
        }
    }

    std::vector<slicevol::StarBody> bodies;
    for (const std::string& path : opts.spec_paths) {
        try {
            bodies.push_back(slicevol::parse_body_spec_file(path));
        } catch (const slicevol::ValidationError& e) {
            std::cerr << "slicevol: " << e.what() << "\n";
            return kExitValidation;
        } catch (const slicevol::ParseError& e) {
            std::cerr << "slicevol: " << e.what() << "\n";
            return kExitUsage;
        }
    }
    if (bodies.empty() && command != slicevol::Command::Selfcheck) {
        std::cerr << "slicevol: at least one --spec is required\n";
        return kExitUsage;
    }
    if (deterministic_slice && !opts.seed_given) {
        // The circle rule needs no seed, but quaternionic phase averages do.
        for (const slicevol::StarBody& body : bodies) {
            if (body.algebra() == slicevol::AlgebraKind::Quaternion) {
                std::cerr << "slicevol: --seed is required for quaternionic slices\n";
                return kExitUsage;
            }
        }
    }

    slicevol::Report report;
    try {
        report = slicevol::run_command(config, bodies);
    } catch (const slicevol::InvalidBodyError& e) {
        std::cerr << "slicevol: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::invalid_argument& e) {
        std::cerr << "slicevol: " << e.what() << "\n";
        return kExitUsage;
    }

    const std::string text = slicevol::emit_report(report, config.format);
    if (!opts.out_path.empty()) {
        std::ofstream out(opts.out_path, std::ios::binary);
        if (!out) {
            std::cerr << "slicevol: cannot write " << opts.out_path << "\n";
            return kExitUsage;
        }
        out << text;
    } else {
        std::cout << text;
    }

    if (command == slicevol::Command::Selfcheck && !slicevol::selfcheck_passed(report))
        return kExitSelfcheck;
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"slicevol: volumes, line cross-sections and circularity analysis of star "
                 "bodies in C^n and H^n"};
    app.require_subcommand(1);

    CliOptions opts;

    const auto add_common = [&](CLI::App* cmd, bool needs_spec) {
        auto* spec = cmd->add_option("--spec", opts.spec_paths, "body spec file (JSON)");
        if (needs_spec) spec->required();
        cmd->add_option("--samples", opts.config.quad.sphere_samples,
                        "sphere sample count N (default 200000)");
        cmd->add_option("--circle-nodes", opts.config.quad.circle_nodes,
                        "circle rule nodes K, even, >= 4 (default 64)");
        cmd->add_option("--phase-samples", opts.config.quad.phase_samples,
                        "quaternion phase samples Q (default 512)");
        cmd->add_option("--seed", opts.config.quad.seed, "master seed (required; no clock default)")
            ->each([&](const std::string&) { opts.seed_given = true; });
        cmd->add_option("--chunk-size", opts.config.quad.chunk_size,
                        "reduction chunk size (default 4096)");
        cmd->add_option("--threads", opts.config.quad.threads,
                        "evaluation threads; 0 = hardware (results identical for any value)");
        cmd->add_option("--tol", opts.config.tol, "relative tolerance (default 1e-9)");
        cmd->add_option("--format", opts.format, "output format: table, csv or json");
        cmd->add_option("--out", opts.out_path, "write the report to a file instead of stdout");
    };

    struct Sub {
        const char* name;
        const char* help;
        slicevol::Command command;
        bool needs_spec;
    };
    const Sub subs[] = {
        {"volume", "Monte Carlo volume with standard error", slicevol::Command::Volume, true},
        {"slice", "cross-section measure along a line", slicevol::Command::Slice, true},
        {"functional", "mean n-th power of cross-section measures",
         slicevol::Command::Functional, true},
        {"defect", "volume minus functional, with significance", slicevol::Command::Defect, true},
        {"circularity", "phase-invariance test with witness", slicevol::Command::Circularity,
         true},
        {"compare", "slicewise volume comparison (A then B)", slicevol::Command::Compare, true},
        {"demo-necessity", "why the circularity hypothesis is needed",
         slicevol::Command::DemoNecessity, true},
        {"selfcheck", "constant checks and oracle agreement", slicevol::Command::Selfcheck,
         false},
    };

    for (const Sub& sub : subs) {
        CLI::App* cmd = app.add_subcommand(sub.name, sub.help);
        add_common(cmd, sub.needs_spec);
        if (sub.command == slicevol::Command::Slice) {
            cmd->add_option("--direction", opts.direction,
                            "explicit line direction, comma-separated coordinates");
            cmd->add_option("--lines", opts.config.lines,
                            "number of sampled lines when no direction is given");
        }
        if (sub.command == slicevol::Command::Selfcheck)
            cmd->add_option("--grid", opts.config.grid_n, "grid oracle resolution (default 512)");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    for (const auto& sub : subs)
        if (app.get_subcommand(sub.name)->parsed()) return run(opts, sub.command);

    std::cerr << "slicevol: a subcommand is required (see --help)\n";
    return kExitUsage;
}
