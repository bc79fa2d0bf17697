#pragma once

#include "slicevol/functionals.hpp"

#include <optional>
#include <string>

namespace slicevol {

struct CircularityWitness {
    Direction omega;
    Phase phase;
    double relative_gap = 0.0; // |rho(q w) - rho(w)| / rho(w)
};

struct CircularityResult {
    bool circular = true;  // within tol on the sampled pairs
    double worst_gap = 0.0;
    std::optional<CircularityWitness> witness; // present when !circular
    double defect_significance = 0.0;          // corroborating evidence
    std::uint64_t pairs = 0;
    double tol = 0.0;
};

/// Samples (direction, phase) pairs and reports the worst relative radial
/// gap, with a witness if it exceeds tol. Also runs the defect pipeline as
/// independent corroboration.
CircularityResult circularity_test(const StarBody& body, const QuadratureSpec& spec, double tol);

enum class Conclusion {
    Confirmed,              // hypotheses verified, vol(A) < vol(B) significant
    InconclusiveWithinNoise,// hypotheses verified, volumes equal within noise
    HypothesisFailed,       // slice domination or circularity of A failed
    Contradicted            // would indicate a bug; never observed
};

std::string conclusion_name(Conclusion c);

struct ComparisonReport {
    bool slice_domination = false;
    std::optional<Direction> violation_witness; // line with slice_A > slice_B (1+tol)
    double worst_violation = 0.0;               // max slice_A/slice_B - 1 over lines
    Estimate volume_a, volume_b;
    double volume_significance = 0.0; // (vol_B - vol_A) / combined std error
    CircularityResult a_circularity;
    Conclusion conclusion = Conclusion::InconclusiveWithinNoise;
    std::uint64_t lines = 0;
    double tol = 0.0;
};

/// Slicewise comparison: checks slice(A, l) <= slice(B, l) (1 + tol) on
/// sampled lines, statistically verifies A's circularity, estimates both
/// volumes, and reports the status of the volume ordering. The conclusion is
/// checked, never assumed; all checks cover sampled lines only.
ComparisonReport compare_by_slices(const StarBody& a, const StarBody& b, const QuadratureSpec& spec,
                            double tol);

struct NecessityReport {
    double max_slice_rel_diff = 0.0; // over checked lines, original vs circularized
    Estimate volume_original, volume_circularized;
    double gap_significance = 0.0; // (vol_orig - vol_circ) / combined std error
    std::uint64_t lines_checked = 0;
    double input_worst_gap = 0.0;  // circularity gap of the input
};

/// Demonstrates that the circularity hypothesis above cannot be dropped:
/// the circularization of a non-circular body has identical slices yet
/// strictly smaller volume. Rejects input that passes circularity_test.
NecessityReport necessity_demo(const StarBody& body, const QuadratureSpec& spec,
                               double circularity_tol = 1e-9);

} // namespace slicevol
