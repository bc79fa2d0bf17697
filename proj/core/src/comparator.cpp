#include "slicevol/comparator.hpp"

#include "slicevol/rng.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace slicevol {

std::string conclusion_name(Conclusion c) {
    switch (c) {
    case Conclusion::Confirmed: return "confirmed";
    case Conclusion::InconclusiveWithinNoise: return "inconclusive (within noise)";
    case Conclusion::HypothesisFailed: return "hypothesis failed";
    case Conclusion::Contradicted: return "contradicted";
    }
    return "unknown";
}

CircularityResult circularity_test(const StarBody& body, const QuadratureSpec& spec, double tol) {
    spec.validate();
    if (!(tol >= 0.0)) throw std::invalid_argument("circularity_test: tol >= 0");

    const auto dirs =
        sample_sphere(body.algebra(), body.blocks(), spec.sphere_samples,
                      substream_seed(spec.seed, "comparator/circularity_test/directions"));
    const auto phases =
        sample_phase_group(body.algebra(), spec.sphere_samples,
                           substream_seed(spec.seed, "comparator/circularity_test/phases"));

    CircularityResult result;
    result.pairs = dirs.size();
    result.tol = tol;
    std::size_t worst_index = 0;
    Direction rotated = dirs.front();
    for (std::size_t i = 0; i < dirs.size(); ++i) {
        phase_rotate_into(dirs[i], phases[i], rotated);
        const double rho = body.radial(dirs[i]);
        const double rho_rot = body.radial(rotated);
        const double gap = std::abs(rho_rot - rho) / rho;
        if (gap > result.worst_gap) {
            result.worst_gap = gap;
            worst_index = i;
        }
    }
    result.circular = result.worst_gap <= tol;
    if (!result.circular)
        result.witness =
            CircularityWitness{dirs[worst_index], phases[worst_index], result.worst_gap};
    result.defect_significance = circularity_defect(body, spec).defect_significance;
    return result;
}

ComparisonReport compare_by_slices(const StarBody& a, const StarBody& b, const QuadratureSpec& spec,
                            double tol) {
    spec.validate();
    if (a.algebra() != b.algebra() || a.dim() != b.dim())
        throw std::invalid_argument("compare_by_slices: bodies must share algebra and dimension");
    if (!(tol >= 0.0)) throw std::invalid_argument("compare_by_slices: tol >= 0");

    ComparisonReport report;
    report.tol = tol;

    const auto phases = shared_phase_set(a.algebra(), spec);
    const int d = block_dim(a.algebra());
    const auto lines = sample_sphere(a.algebra(), a.blocks(), spec.sphere_samples,
                                     substream_seed(spec.seed, "comparator/compare_by_slices/lines"));
    report.lines = lines.size();
    report.slice_domination = true;
    report.worst_violation = -std::numeric_limits<double>::infinity();
    Direction scratch = lines.front();
    for (const Direction& omega : lines) {
        const Direction anchor = canonical_representative(omega);
        double sum_a = 0.0, sum_b = 0.0;
        for (const Phase& q : *phases) {
            phase_rotate_into(anchor, q, scratch);
            const double ra = a.radial(scratch);
            const double rb = b.radial(scratch);
            double sa = ra * ra, sb = rb * rb;
            if (d == 4) {
                sa *= sa;
                sb *= sb;
            }
            sum_a += sa;
            sum_b += sb;
        }
        const double violation = sum_a / sum_b - 1.0; // slice ratio - 1
        if (violation > report.worst_violation) {
            report.worst_violation = violation;
            if (violation > tol) {
                report.slice_domination = false;
                report.violation_witness = anchor;
            }
        }
    }

    report.volume_a = volume_polar(a, spec);
    report.volume_b = volume_polar(b, spec);
    report.volume_significance = significance(report.volume_b.value - report.volume_a.value,
                                              combined_std_error(report.volume_a, report.volume_b));
    report.a_circularity = circularity_test(a, spec, tol);

    if (!report.slice_domination || !report.a_circularity.circular)
        report.conclusion = Conclusion::HypothesisFailed;
    else if (report.volume_significance < -3.0)
        report.conclusion = Conclusion::Contradicted;
    else if (report.volume_significance > 3.0)
        report.conclusion = Conclusion::Confirmed;
    else
        report.conclusion = Conclusion::InconclusiveWithinNoise;
    return report;
}

NecessityReport necessity_demo(const StarBody& body, const QuadratureSpec& spec,
                               double circularity_tol) {
    spec.validate();
    const CircularityResult input = circularity_test(body, spec, circularity_tol);
    if (input.circular)
        throw std::invalid_argument(
            "necessity_demo: input passes circularity_test (worst gap " +
            std::to_string(input.worst_gap) + "); the demonstration needs a non-circular body");

    const StarBody circ = circularize(body, spec);

    NecessityReport report;
    report.input_worst_gap = input.worst_gap;
    report.lines_checked = 20;
    const auto lines = sample_sphere(body.algebra(), body.blocks(), report.lines_checked,
                                     substream_seed(spec.seed, "comparator/necessity/lines"));
    for (const Direction& omega : lines) {
        const SliceMeasure sa = slice_measure(body, omega, spec);
        const SliceMeasure sb = slice_measure(circ, omega, spec);
        const double rel = std::abs(sa.value - sb.value) / sa.value;
        report.max_slice_rel_diff = std::max(report.max_slice_rel_diff, rel);
    }

    // Both volumes over one shared direction set; the gap estimator is the
    // mean of per-direction differences, so its standard error is that of
    // the difference sequence.
    const int m = body.dim();
    const auto dirs = sample_sphere(body.algebra(), body.blocks(), spec.sphere_samples,
                                    substream_seed(spec.seed, "comparator/necessity/volumes"));
    std::vector<double> va(dirs.size()), vb(dirs.size()), diff(dirs.size());
    parallel_fill(dirs.size(), spec.threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            double pa = 1.0, pb = 1.0;
            const double ra = body.radial(dirs[i]);
            const double rb = circ.radial(dirs[i]);
            for (int k = 0; k < m; ++k) {
                pa *= ra;
                pb *= rb;
            }
            va[i] = pa;
            vb[i] = pb;
            diff[i] = pa - pb;
        }
    });
    const double vm = unit_ball_volume(m);
    auto scale = [vm](Estimate e) {
        e.value *= vm;
        e.std_error *= vm;
        return e;
    };
    report.volume_original = scale(estimate_mean(va, spec.chunk_size));
    report.volume_circularized = scale(estimate_mean(vb, spec.chunk_size));
    const Estimate gap = scale(estimate_mean(diff, spec.chunk_size));
    report.gap_significance = significance(gap.value, gap.std_error);
    return report;
}

} // namespace slicevol
