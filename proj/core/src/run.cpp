#include "slicevol/run.hpp"

#include "slicevol/comparator.hpp"
#include "slicevol/errors.hpp"
#include "slicevol/functionals.hpp"
#include "slicevol/oracle.hpp"
#include "slicevol/rng.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace slicevol {

namespace {

std::string coords_to_string(const std::vector<double>& coords) {
    std::ostringstream oss;
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (i) oss << ", ";
        oss << format_number(coords[i]);
    }
    return oss.str();
}

ReportRow make_row(const StarBody& body, std::string command, const RunConfig& config,
                   double value, double std_error = 0.0, std::uint64_t samples = 0,
                   std::string verdict = "") {
    return ReportRow{body.label(), std::move(command), body.blocks(),
                     block_dim(body.algebra()), value, std_error, samples,
                     config.quad.seed, std::move(verdict)};
}

std::string defect_verdict(double significance) {
    if (significance > 5.0) return "not circular";
    if (significance <= 3.0) return "circular (defect ~ 0)";
    return "inconclusive";
}

void run_volume(const RunConfig& config, const StarBody& body, Report& report) {
    const Estimate est = volume_polar(body, config.quad);
    report.rows.push_back(
        make_row(body, "volume", config, est.value, est.std_error, est.samples));
    if (auto exact = closed_form_volume(body))
        report.rows.push_back(make_row(body, "volume/closed-form", config, *exact, 0.0, 0,
                                       "exact"));
}

void run_slice(const RunConfig& config, const StarBody& body, Report& report) {
    std::vector<Direction> lines;
    if (config.direction) {
        lines.push_back(Direction::unit(body.algebra(), *config.direction));
    } else {
        lines = sample_sphere(body.algebra(), body.blocks(), config.lines,
                              substream_seed(config.quad.seed, "cli/slice/lines"));
    }
    for (const Direction& omega : lines) {
        const SliceMeasure slice = slice_measure(body, omega, config.quad);
        report.rows.push_back(make_row(body, "slice", config, slice.value, slice.std_error,
                                       slice.phase_count));
        report.notes.push_back("slice line (canonical): " +
                               coords_to_string(slice.line.coords()));
    }
}

void run_functional(const RunConfig& config, const StarBody& body, Report& report) {
    const Estimate est = slice_functional(body, config.quad);
    report.rows.push_back(
        make_row(body, "functional", config, est.value, est.std_error, est.samples));
}

void run_defect(const RunConfig& config, const StarBody& body, Report& report) {
    const DefectReport defect = circularity_defect(body, config.quad);
    report.rows.push_back(make_row(body, "defect/volume", config, defect.volume.value,
                                   defect.volume.std_error, defect.volume.samples));
    report.rows.push_back(make_row(body, "defect/functional", config, defect.functional.value,
                                   defect.functional.std_error, defect.functional.samples));
    report.rows.push_back(make_row(body, "defect", config, defect.defect.value,
                                   defect.defect.std_error, defect.defect.samples,
                                   defect_verdict(defect.defect_significance)));
    report.rows.push_back(
        make_row(body, "defect/significance", config, defect.defect_significance));
    report.rows.push_back(
        make_row(body, "defect/max-jensen-gap", config, defect.max_rel_jensen_gap));
}

void run_circularity(const RunConfig& config, const StarBody& body, Report& report) {
    const CircularityResult result = circularity_test(body, config.quad, config.tol);
    report.rows.push_back(make_row(body, "circularity/worst-gap", config, result.worst_gap, 0.0,
                                   result.pairs,
                                   result.circular ? "circular within tol" : "witness found"));
    report.rows.push_back(make_row(body, "circularity/defect-significance", config,
                                   result.defect_significance));
    if (result.witness) {
        report.notes.push_back("witness direction: " +
                               coords_to_string(result.witness->omega.coords()));
        report.notes.push_back(
            "witness phase: " +
            coords_to_string({result.witness->phase.q.begin(),
                              result.witness->phase.q.begin() +
                                  block_dim(result.witness->phase.algebra)}));
    }
    report.notes.push_back("circularity verified on sampled (direction, phase) pairs only");
}

void run_compare(const RunConfig& config, const StarBody& a, const StarBody& b, Report& report) {
    const ComparisonReport cmp = compare_by_slices(a, b, config.quad, config.tol);
    const std::string pair = a.label() + " vs " + b.label();
    auto row = [&](std::string command, double value, double se = 0.0, std::uint64_t samples = 0,
                   std::string verdict = "") {
        report.rows.push_back(ReportRow{pair, std::move(command), a.blocks(),
                                        block_dim(a.algebra()), value, se, samples,
                                        config.quad.seed, std::move(verdict)});
    };
    row("compare/volume-a", cmp.volume_a.value, cmp.volume_a.std_error, cmp.volume_a.samples);
    row("compare/volume-b", cmp.volume_b.value, cmp.volume_b.std_error, cmp.volume_b.samples);
    row("compare/slice-domination", cmp.slice_domination ? 1.0 : 0.0, 0.0, cmp.lines,
        cmp.slice_domination ? "holds on sampled lines" : "violated");
    row("compare/worst-slice-violation", cmp.worst_violation, 0.0, cmp.lines);
    row("compare/a-circularity-gap", cmp.a_circularity.worst_gap, 0.0, cmp.a_circularity.pairs,
        cmp.a_circularity.circular ? "circular within tol" : "hypothesis failed");
    row("compare/volume-significance", cmp.volume_significance);
    row("compare", cmp.volume_b.value - cmp.volume_a.value,
        combined_std_error(cmp.volume_a, cmp.volume_b), cmp.lines,
        conclusion_name(cmp.conclusion));
    if (cmp.violation_witness)
        report.notes.push_back("domination violated at line: " +
                               coords_to_string(cmp.violation_witness->coords()));
    report.notes.push_back("slice domination verified on sampled lines only");
}

void run_necessity(const RunConfig& config, const StarBody& body, Report& report) {
    const NecessityReport demo = necessity_demo(body, config.quad, config.tol);
    report.rows.push_back(make_row(body, "necessity/input-worst-gap", config,
                                   demo.input_worst_gap));
    report.rows.push_back(make_row(body, "necessity/max-slice-rel-diff", config,
                                   demo.max_slice_rel_diff, 0.0, demo.lines_checked,
                                   demo.max_slice_rel_diff <= 1e-12 ? "slices preserved" : ""));
    report.rows.push_back(make_row(body, "necessity/volume-original", config,
                                   demo.volume_original.value, demo.volume_original.std_error,
                                   demo.volume_original.samples));
    report.rows.push_back(make_row(body, "necessity/volume-circularized", config,
                                   demo.volume_circularized.value,
                                   demo.volume_circularized.std_error,
                                   demo.volume_circularized.samples));
    report.rows.push_back(make_row(body, "necessity/gap-significance", config,
                                   demo.gap_significance, 0.0, 0,
                                   demo.gap_significance > 5.0 ? "volume strictly decreases"
                                                               : "inconclusive"));
    report.notes.push_back("equal slices with a non-circular body do not bound its volume: "
                           "the circularized body has the same slices and smaller volume");
}

// --- selfcheck -----------------------------------------------------------

std::vector<StarBody> builtin_catalog() {
    std::vector<StarBody> bodies;
    bodies.push_back(StarBody::ball(AlgebraKind::Complex, 2, 1.0).with_label("ball"));
    bodies.push_back(
        StarBody::polydisc(AlgebraKind::Complex, {1.0, 1.0}).with_label("polydisc-1-1"));
    bodies.push_back(
        StarBody::polydisc(AlgebraKind::Complex, {1.0, 2.0}).with_label("polydisc-1-2"));
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(4, 4);
    a.diagonal() << 4.0, 4.0, 1.0, 1.0;
    bodies.push_back(StarBody::ellipsoid(AlgebraKind::Complex, a).with_label("ellipsoid"));
    bodies.push_back(StarBody::lp_ball(AlgebraKind::Complex, 2,
                                       std::numeric_limits<double>::infinity(), 1.0)
                         .with_label("cube"));
    bodies.push_back(
        StarBody::radial_perturbation(StarBody::ball(AlgebraKind::Complex, 2, 1.0), 0.1,
                                      "re_block1_sq")
            .with_label("perturbed-ball"));
    bodies.push_back(StarBody::ball(AlgebraKind::Quaternion, 2, 1.0).with_label("ball-h2"));
    bodies.push_back(
        StarBody::polydisc(AlgebraKind::Quaternion, {1.0, 1.0}).with_label("polydisc-h2"));
    bodies.push_back(StarBody::lp_ball(AlgebraKind::Quaternion, 2,
                                       std::numeric_limits<double>::infinity(), 1.0)
                         .with_label("cube-r8"));
    return bodies;
}

StarBody random_test_body(Rng& rng) {
    const auto pick = [&rng](double lo, double hi) {
        return lo + (hi - lo) * rng.next_double();
    };
    switch (rng.next_u64() % 5) {
    case 0: return StarBody::ball(AlgebraKind::Complex, 2, pick(0.5, 2.0)).with_label("rand-ball");
    case 1:
        return StarBody::polydisc(AlgebraKind::Complex, {pick(0.5, 2.0), pick(0.5, 2.0)})
            .with_label("rand-polydisc");
    case 2: {
        Eigen::MatrixXd a = Eigen::MatrixXd::Zero(4, 4);
        a.diagonal() << pick(0.25, 4.0), pick(0.25, 4.0), pick(0.25, 4.0), pick(0.25, 4.0);
        return StarBody::ellipsoid(AlgebraKind::Complex, a).with_label("rand-ellipsoid");
    }
    case 3: {
        const double ps[4] = {1.0, 2.0, 3.0, std::numeric_limits<double>::infinity()};
        return StarBody::lp_ball(AlgebraKind::Complex, 2, ps[rng.next_u64() % 4],
                                 pick(0.5, 2.0))
            .with_label("rand-lp-ball");
    }
    default:
        return StarBody::radial_perturbation(StarBody::ball(AlgebraKind::Complex, 2, 1.0),
                                             pick(0.0, 0.3), "re_block1_sq")
            .with_label("rand-perturbed-ball");
    }
}

void run_selfcheck(const RunConfig& config, const std::vector<StarBody>& user_bodies,
                   Report& report) {
    const std::uint64_t seed = config.quad.seed;

    // Sphere <-> Grassmannian constants.
    struct Case {
        int n;
        AlgebraKind algebra;
    };
    const Case cases[] = {{1, AlgebraKind::Complex},    {2, AlgebraKind::Complex},
                          {3, AlgebraKind::Complex},    {1, AlgebraKind::Quaternion},
                          {2, AlgebraKind::Quaternion}};
    for (const Case& c : cases) {
        const ConstantCheckReport check = constant_check(c.n, c.algebra, config.quad);
        const std::string label =
            "n=" + std::to_string(c.n) + ",d=" + std::to_string(block_dim(c.algebra));
        report.rows.push_back(ReportRow{label, "selfcheck/surface", c.n, block_dim(c.algebra),
                                        check.surface_value, 0.0, 0, seed,
                                        check.surface_ok ? "pass" : "fail"});
        report.rows.push_back(ReportRow{label, "selfcheck/ball-functional", c.n,
                                        block_dim(c.algebra), check.ball_functional.value,
                                        check.ball_functional.std_error,
                                        check.ball_functional.samples, seed,
                                        check.functional_ok ? "pass" : "fail"});
    }

    // Volume route agreement on the catalog plus any user bodies.
    std::vector<StarBody> bodies = builtin_catalog();
    bodies.insert(bodies.end(), user_bodies.begin(), user_bodies.end());
    for (const StarBody& body : bodies) {
        const Estimate polar = volume_polar(body, config.quad);
        const Estimate rejection =
            mc_volume_rejection(body, config.quad.sphere_samples, seed);
        const double gap = std::abs(polar.value - rejection.value);
        const double limit = 3.0 * combined_std_error(polar, rejection);
        report.rows.push_back(ReportRow{body.label(), "selfcheck/volume-agreement",
                                        body.blocks(), block_dim(body.algebra()), gap, limit / 3.0,
                                        polar.samples, seed, gap <= limit ? "pass" : "fail"});
    }

    // Slice rule vs grid oracle on seeded random (body, line) pairs.
    Rng rng(substream_seed(seed, "selfcheck/random_bodies"));
    for (int pair = 0; pair < 10; ++pair) {
        const StarBody body = random_test_body(rng);
        const auto line = sample_sphere(body.algebra(), body.blocks(), 1,
                                        rng.next_u64())[0];
        const SliceMeasure rule = slice_measure(body, line, config.quad);
        const double grid = slice_grid_oracle(body, line, config.grid_n);
        const double rel = std::abs(rule.value - grid) / grid;
        report.rows.push_back(ReportRow{body.label() + "#" + std::to_string(pair),
                                        "selfcheck/slice-agreement", body.blocks(),
                                        block_dim(body.algebra()), rel, 0.0,
                                        static_cast<std::uint64_t>(config.grid_n), seed,
                                        rel <= 0.02 ? "pass" : "fail"});
    }
}

} // namespace

Command command_from_name(const std::string& name) {
    if (name == "volume") return Command::Volume;
    if (name == "slice") return Command::Slice;
    if (name == "functional") return Command::Functional;
    if (name == "defect") return Command::Defect;
    if (name == "circularity") return Command::Circularity;
    if (name == "compare") return Command::Compare;
    if (name == "demo-necessity") return Command::DemoNecessity;
    if (name == "selfcheck") return Command::Selfcheck;
    throw std::invalid_argument("unknown command '" + name + "'");
}

std::string command_name(Command c) {
    switch (c) {
    case Command::Volume: return "volume";
    case Command::Slice: return "slice";
    case Command::Functional: return "functional";
    case Command::Defect: return "defect";
    case Command::Circularity: return "circularity";
    case Command::Compare: return "compare";
    case Command::DemoNecessity: return "demo-necessity";
    case Command::Selfcheck: return "selfcheck";
    }
    return "unknown";
}

Report run_command(const RunConfig& config, const std::vector<StarBody>& bodies) {
    config.quad.validate();
    Report report;

    if (config.command == Command::Selfcheck) {
        run_selfcheck(config, bodies, report);
        return report;
    }
    if (config.command == Command::Compare) {
        if (bodies.size() != 2)
            throw std::invalid_argument("compare requires exactly two bodies (A then B)");
        run_compare(config, bodies[0], bodies[1], report);
        return report;
    }
    if (bodies.empty()) throw std::invalid_argument("no bodies given");

    for (const StarBody& body : bodies) {
        switch (config.command) {
        case Command::Volume: run_volume(config, body, report); break;
        case Command::Slice: run_slice(config, body, report); break;
        case Command::Functional: run_functional(config, body, report); break;
        case Command::Defect: run_defect(config, body, report); break;
        case Command::Circularity: run_circularity(config, body, report); break;
        case Command::DemoNecessity: run_necessity(config, body, report); break;
        default: throw std::invalid_argument("unhandled command");
        }
    }
    return report;
}

bool selfcheck_passed(const Report& report) {
    bool any = false;
    for (const ReportRow& row : report.rows) {
        if (row.command.rfind("selfcheck/", 0) == 0) {
            any = true;
            if (row.verdict != "pass") return false;
        }
    }
    return any;
}

} // namespace slicevol
