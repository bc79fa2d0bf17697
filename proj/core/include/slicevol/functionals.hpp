#pragma once

#include "slicevol/sampling.hpp"
#include "slicevol/starbody.hpp"

#include <memory>
#include <optional>

namespace slicevol {

/// Gamma(k/2) for positive integer k, by the exact half-integer recurrence.
double gamma_half(int twice_argument);

/// Surface measure of S^{m-1}: 2 pi^{m/2} / Gamma(m/2).
double sphere_surface(int m);

/// Volume of the unit ball in R^m: pi^{m/2} / Gamma(m/2 + 1).
double unit_ball_volume(int m);

/// Constant relating the mean n-th power of cross-section measures to the
/// volume: 1/n! for complex lines, 2^n/(2n)! for quaternionic lines.
double functional_constant(int n, AlgebraKind algebra);

/// The phase set shared by every operation that averages over phases: the
/// K-node circle rule for d=2, Q seeded uniform unit quaternions for d=4
/// (substream "sampling/phase_set"). Sharing one set keeps slice values,
/// functionals and circularized bodies mutually consistent.
std::shared_ptr<const std::vector<Phase>> shared_phase_set(AlgebraKind algebra,
                                                           const QuadratureSpec& spec);

/// vol(D) = (surface(S^{m-1})/m) * E[rho^m] over uniform directions.
Estimate volume_polar(const StarBody& body, const QuadratureSpec& spec);

/// Exact volume where a closed form exists (ball, ellipsoid, polydisc,
/// lp-ball with p in {1,2,inf}, linear images of those); nullopt otherwise.
std::optional<double> closed_form_volume(const StarBody& body);

/// d-dimensional measure of the central slice along the phase orbit of
/// `omega`: v_d * mean_q rho(q w)^d over the shared phase set, anchored at
/// the canonical orbit representative (the value depends on the line only).
struct SliceMeasure {
    Direction line;    // canonical representative of the sampled line
    double value = 0.0;
    double std_error = 0.0; // 0 for the deterministic circle rule
    std::uint64_t phase_count = 0;
};

SliceMeasure slice_measure(const StarBody& body, const Direction& omega,
                           const QuadratureSpec& spec);

/// c_{n,d} * E over uniform lines of slice^n.
Estimate slice_functional(const StarBody& body, const QuadratureSpec& spec);

/// Volume, functional and their gap computed from one shared set of sphere
/// samples. Per sample the gap is a discrete Jensen gap of the phase rule,
/// hence nonnegative before any sampling error; the volume here uses the
/// phase-averaged radial powers (same expectation as volume_polar).
struct DefectReport {
    Estimate volume;
    Estimate functional;
    Estimate defect;
    double defect_significance = 0.0;
    double max_rel_jensen_gap = 0.0; // max over samples, before flooring
    double min_jensen_gap = 0.0;     // after flooring; always >= 0
};

DefectReport circularity_defect(const StarBody& body, const QuadratureSpec& spec);

/// The circular body with the same slice measures: radial is the L^d phase
/// average of the input radial. Output is flagged known_circular; slices
/// (same spec) are preserved to roundoff and volume_polar of the output
/// estimates slice_functional of the input.
StarBody circularize(const StarBody& body, const QuadratureSpec& spec);

/// Per-sample gaps below this relative size are treated as exactly zero:
/// they are roundoff of the rule evaluation, and flooring them keeps the
/// defect of exactly circular bodies at 0 with std_error 0.
inline constexpr double kJensenGapRelFloor = 1e-11;

} // namespace slicevol
