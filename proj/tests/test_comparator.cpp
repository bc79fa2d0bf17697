#include "slicevol/comparator.hpp"
#include "slicevol/oracle.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

using namespace slicevol;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

QuadratureSpec quick_spec(std::uint64_t seed, std::size_t n = 20000) {
    QuadratureSpec spec;
    spec.sphere_samples = n;
    spec.seed = seed;
    return spec;
}

StarBody cube4() { return StarBody::lp_ball(AlgebraKind::Complex, 2, kInf, 1.0); }

} // namespace

TEST_CASE("circularity test clears circular bodies") {
    const QuadratureSpec spec = quick_spec(11);
    for (const StarBody& body : {StarBody::polydisc(AlgebraKind::Complex, {1.0, 2.0}),
                                 StarBody::ball(AlgebraKind::Quaternion, 2, 1.0),
                                 StarBody::polydisc(AlgebraKind::Quaternion, {1.0, 1.0})}) {
        const CircularityResult result = circularity_test(body, spec, 1e-9);
        CHECK(result.circular);
        CHECK(result.worst_gap <= 1e-9);
        CHECK_FALSE(result.witness.has_value());
        CHECK(std::abs(result.defect_significance) <= 3.0);
    }
}

TEST_CASE("circularity test finds a strong witness on the cube") {
    // Rotating an axis direction by pi/4 moves the cube radial from 1 to
    // sqrt(2), so gaps approaching sqrt(2) - 1 = 0.414 exist.
    const CircularityResult result = circularity_test(cube4(), quick_spec(13), 1e-9);
    CHECK_FALSE(result.circular);
    CHECK(result.worst_gap > 0.1);
    CHECK(result.worst_gap <= std::sqrt(2.0) - 1.0 + 1e-9);
    REQUIRE(result.witness.has_value());

    // The witness reproduces the reported gap.
    const StarBody cube = cube4();
    const double rho = cube.radial(result.witness->omega);
    const double rho_rot =
        cube.radial(phase_rotate(result.witness->omega, result.witness->phase));
    CHECK(std::abs(rho_rot - rho) / rho == doctest::Approx(result.witness->relative_gap));
    CHECK(result.defect_significance > 5.0);
}

TEST_CASE("perturbed ball shows a gap on the scale of the perturbation") {
    const double eps = 0.05;
    const StarBody body = StarBody::radial_perturbation(
        StarBody::ball(AlgebraKind::Complex, 2, 1.0), eps, "re_block1_sq");
    const CircularityResult result = circularity_test(body, quick_spec(17), 1e-9);
    CHECK_FALSE(result.circular);
    CHECK(result.worst_gap > 0.5 * eps);
    CHECK(result.worst_gap < 3.0 * eps);
}

TEST_CASE("compare_by_slices confirms the ordering for nested balls") {
    const StarBody a = StarBody::ball(AlgebraKind::Complex, 2, 1.0);
    const StarBody b = StarBody::ball(AlgebraKind::Complex, 2, 1.1);
    const ComparisonReport report = compare_by_slices(a, b, quick_spec(19), 1e-9);
    CHECK(report.slice_domination);
    CHECK(report.worst_violation <= 1e-9);
    CHECK(report.a_circularity.circular);
    CHECK(report.conclusion == Conclusion::Confirmed);
    // Exact values: slices scale by 1.1^2, volumes by 1.1^4.
    CHECK(report.volume_a.value == doctest::Approx(kPi * kPi / 2.0).epsilon(1e-12));
    CHECK(report.volume_b.value ==
          doctest::Approx(kPi * kPi / 2.0 * std::pow(1.1, 4)).epsilon(1e-12));
}

TEST_CASE("compare_by_slices: ball against polydisc is the textbook confirmation") {
    const StarBody a = StarBody::ball(AlgebraKind::Complex, 2, 1.0);
    const StarBody b = StarBody::polydisc(AlgebraKind::Complex, {1.0, 1.0});
    const ComparisonReport report = compare_by_slices(a, b, quick_spec(23), 1e-9);
    CHECK(report.slice_domination);
    CHECK(report.volume_significance > 5.0);
    CHECK(report.conclusion == Conclusion::Confirmed);
}

TEST_CASE("compare_by_slices reports a witness when domination fails") {
    const StarBody a = StarBody::ball(AlgebraKind::Complex, 2, 1.01);
    const StarBody b = StarBody::polydisc(AlgebraKind::Complex, {1.0, 1.0});
    const QuadratureSpec spec = quick_spec(29);
    const ComparisonReport report = compare_by_slices(a, b, spec, 1e-9);
    CHECK_FALSE(report.slice_domination);
    CHECK(report.conclusion == Conclusion::HypothesisFailed);
    REQUIRE(report.violation_witness.has_value());
    // At the witness line the slice of A really exceeds the slice of B.
    const SliceMeasure sa = slice_measure(a, *report.violation_witness, spec);
    const SliceMeasure sb = slice_measure(b, *report.violation_witness, spec);
    CHECK(sa.value > sb.value);
}

TEST_CASE("compare_by_slices flags a non-circular first body") {
    const ComparisonReport report =
        compare_by_slices(cube4(), StarBody::ball(AlgebraKind::Complex, 2, 3.0), quick_spec(31), 1e-9);
    CHECK_FALSE(report.a_circularity.circular);
    CHECK(report.conclusion == Conclusion::HypothesisFailed);
}

TEST_CASE("slice domination is transitive on the shared line set") {
    const QuadratureSpec spec = quick_spec(37, 5000);
    const StarBody a = StarBody::ball(AlgebraKind::Complex, 2, 0.9);
    const StarBody b = StarBody::ball(AlgebraKind::Complex, 2, 1.0);
    const StarBody c = StarBody::polydisc(AlgebraKind::Complex, {1.0, 1.0});
    const ComparisonReport ab = compare_by_slices(a, b, spec, 1e-9);
    const ComparisonReport bc = compare_by_slices(b, c, spec, 1e-9);
    const ComparisonReport ac = compare_by_slices(a, c, spec, 1e-9);
    CHECK(ab.slice_domination);
    CHECK(bc.slice_domination);
    CHECK(ac.slice_domination);
}

TEST_CASE("scaling a body is always confirmed with the expected ratio") {
    const StarBody a = StarBody::polydisc(AlgebraKind::Complex, {1.0, 1.0});
    const StarBody b = StarBody::linear_image(2.0 * Eigen::MatrixXd::Identity(4, 4), a);
    const ComparisonReport report = compare_by_slices(a, b, quick_spec(41), 1e-9);
    CHECK(report.slice_domination);
    CHECK(report.conclusion == Conclusion::Confirmed);
    const double ratio = report.volume_b.value / report.volume_a.value;
    CHECK(ratio == doctest::Approx(16.0).epsilon(0.02));
}

TEST_CASE("necessity demo on the cube") {
    const NecessityReport report = necessity_demo(cube4(), quick_spec(43));
    CHECK(report.max_slice_rel_diff <= 1e-12);
    CHECK(report.gap_significance > 5.0);
    CHECK(report.volume_circularized.value < report.volume_original.value);
    CHECK(report.input_worst_gap > 0.1);
}

TEST_CASE("necessity demo rejects circular input") {
    CHECK_THROWS_AS(necessity_demo(StarBody::ball(AlgebraKind::Complex, 2, 1.0), quick_spec(47)),
                    std::invalid_argument);
}

TEST_CASE("necessity gap shrinks fourfold when the perturbation is halved") {
    const StarBody ball = StarBody::ball(AlgebraKind::Complex, 2, 1.0);
    const QuadratureSpec spec = quick_spec(53, 30000);
    const DefectReport strong = circularity_defect(
        StarBody::radial_perturbation(ball, 0.1, "re_block1_sq"), spec);
    const DefectReport weak = circularity_defect(
        StarBody::radial_perturbation(ball, 0.05, "re_block1_sq"), spec);
    const double ratio = strong.defect.value / weak.defect.value;
    CHECK(ratio > 2.8);
    CHECK(ratio < 5.2);
}

TEST_CASE("circularized bodies pass the circularity test in both algebras") {
    const QuadratureSpec spec = quick_spec(59, 5000);
    const StarBody circ2 = circularize(cube4(), spec);
    CHECK(circularity_test(circ2, spec, 1e-9).circular);

    const StarBody cube8 = StarBody::lp_ball(AlgebraKind::Quaternion, 2, kInf, 1.0);
    const StarBody circ4 = circularize(cube8, spec);
    CHECK(circularity_test(circ4, spec, 1e-9).circular);
}
