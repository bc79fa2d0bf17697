#include "slicevol/errors.hpp"
#include "slicevol/rng.hpp"
#include "slicevol/sampling.hpp"
#include "slicevol/starbody.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>

using namespace slicevol;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Eigen::MatrixXd diagonal4(double a, double b, double c, double d) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(4, 4);
    m.diagonal() << a, b, c, d;
    return m;
}

StarBody cube4() { return StarBody::lp_ball(AlgebraKind::Complex, 2, kInf, 1.0); }

} // namespace

TEST_CASE("radial of the primitive bodies") {
    const Direction e1(AlgebraKind::Complex, {1.0, 0.0, 0.0, 0.0});

    CHECK(StarBody::ball(AlgebraKind::Complex, 2, 1.0).radial(e1) == 1.0);
    CHECK(StarBody::polydisc(AlgebraKind::Complex, {1.0, 1.0}).radial(e1) == 1.0);
    CHECK(StarBody::ellipsoid(AlgebraKind::Complex, diagonal4(4, 4, 1, 1)).radial(e1) ==
          doctest::Approx(0.5).epsilon(1e-15));

    // Cube: 1 along an axis, 2 along the main diagonal.
    CHECK(cube4().radial(e1) == 1.0);
    const Direction diag(AlgebraKind::Complex, {0.5, 0.5, 0.5, 0.5});
    CHECK(cube4().radial(diag) == doctest::Approx(2.0).epsilon(1e-15));

    // Polydisc radial is governed by the tighter block.
    const Direction mixed = Direction::unit(AlgebraKind::Complex, {1.0, 0.0, 1.0, 0.0});
    CHECK(StarBody::polydisc(AlgebraKind::Complex, {1.0, 2.0}).radial(mixed) ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("intersection takes the exact min, union the exact max") {
    const StarBody ball = StarBody::ball(AlgebraKind::Complex, 2, 1.2);
    const StarBody cube = cube4();
    const StarBody meet = StarBody::intersection(ball, cube);
    const StarBody join = StarBody::union_of(ball, cube);
    for (const Direction& w : sample_sphere(AlgebraKind::Complex, 2, 200, 31)) {
        const double a = ball.radial(w), b = cube.radial(w);
        CHECK(meet.radial(w) == std::min(a, b));
        CHECK(join.radial(w) == std::max(a, b));
    }
}

TEST_CASE("linear image by 2I scales the radial exactly") {
    const StarBody inner = StarBody::polydisc(AlgebraKind::Complex, {1.0, 2.0});
    const StarBody doubled =
        StarBody::linear_image(2.0 * Eigen::MatrixXd::Identity(4, 4), inner);
    const StarBody halved =
        StarBody::linear_image(0.5 * Eigen::MatrixXd::Identity(4, 4), inner);
    for (const Direction& w : sample_sphere(AlgebraKind::Complex, 2, 200, 37)) {
        // T^{-1} w re-normalizes through |T^{-1} w|, so the scaling is exact
        // up to one rounding of the norm.
        const double r = inner.radial(w);
        CHECK(std::abs(doubled.radial(w) - 2.0 * r) <= 1e-15 * r);
        CHECK(std::abs(halved.radial(w) - 0.5 * r) <= 1e-15 * r);
    }
}

TEST_CASE("linear image of the ball is the ellipsoid with A = (T T^t)^{-1}") {
    Rng rng(404);
    Eigen::MatrixXd t(4, 4);
    do {
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) t(r, c) = rng.next_gaussian();
    } while (std::abs(t.determinant()) < 0.1);

    const StarBody image = StarBody::linear_image(t, StarBody::ball(AlgebraKind::Complex, 2, 1.0));
    const StarBody reference =
        StarBody::ellipsoid(AlgebraKind::Complex, (t * t.transpose()).inverse());
    for (const Direction& w : sample_sphere(AlgebraKind::Complex, 2, 300, 41)) {
        const double a = image.radial(w), b = reference.radial(w);
        CHECK(std::abs(a - b) <= 1e-12 * b);
    }
    CHECK(validate_body(image, 1000, 7).ok);
}

TEST_CASE("known_circular follows the construction rules") {
    CHECK(StarBody::ball(AlgebraKind::Complex, 2, 1.0).known_circular());
    CHECK(StarBody::ball(AlgebraKind::Quaternion, 2, 1.0).known_circular());
    CHECK(StarBody::polydisc(AlgebraKind::Complex, {1.0, 2.0}).known_circular());
    CHECK(StarBody::polydisc(AlgebraKind::Quaternion, {1.0, 1.0}).known_circular());
    CHECK(StarBody::lp_ball(AlgebraKind::Complex, 2, 2.0, 1.0).known_circular());
    CHECK_FALSE(cube4().known_circular());
    CHECK_FALSE(StarBody::lp_ball(AlgebraKind::Complex, 2, 1.0, 1.0).known_circular());

    // Blockwise scalar matrices commute with the phase action.
    CHECK(StarBody::ellipsoid(AlgebraKind::Complex, diagonal4(4, 4, 1, 1)).known_circular());
    CHECK_FALSE(StarBody::ellipsoid(AlgebraKind::Complex, diagonal4(2, 1, 1, 1)).known_circular());

    const StarBody ball = StarBody::ball(AlgebraKind::Complex, 2, 1.0);
    CHECK(StarBody::linear_image(2.0 * Eigen::MatrixXd::Identity(4, 4), ball).known_circular());
    CHECK_FALSE(StarBody::linear_image(diagonal4(2, 1, 1, 1), ball).known_circular());

    CHECK(StarBody::intersection(ball, StarBody::polydisc(AlgebraKind::Complex, {1.0, 1.0}))
              .known_circular());
    CHECK_FALSE(StarBody::intersection(ball, cube4()).known_circular());

    CHECK_FALSE(StarBody::radial_perturbation(ball, 0.1, "re_block1_sq").known_circular());
    CHECK(StarBody::radial_perturbation(ball, 0.1, "block_norm_gap").known_circular());
}

TEST_CASE("flagged-circular bodies have phase-invariant radials") {
    const StarBody ball = StarBody::ball(AlgebraKind::Complex, 2, 1.0);
    const StarBody flagged[] = {
        StarBody::ellipsoid(AlgebraKind::Complex, diagonal4(4, 4, 1, 1)),
        StarBody::linear_image(2.0 * Eigen::MatrixXd::Identity(4, 4), ball),
        StarBody::radial_perturbation(ball, 0.3, "block_norm_gap"),
        StarBody::intersection(StarBody::polydisc(AlgebraKind::Complex, {1.0, 2.0}),
                               StarBody::ball(AlgebraKind::Complex, 2, 1.5)),
    };
    const auto dirs = sample_sphere(AlgebraKind::Complex, 2, 100, 61);
    const auto phases = sample_phase_group(AlgebraKind::Complex, 100, 62);
    for (const StarBody& body : flagged) {
        REQUIRE(body.known_circular());
        for (std::size_t i = 0; i < dirs.size(); ++i) {
            const double rho = body.radial(dirs[i]);
            const double rho_rot = body.radial(phase_rotate(dirs[i], phases[i]));
            CHECK(std::abs(rho_rot - rho) <= 1e-9 * rho);
        }
    }
}

TEST_CASE("commutation check matches the complex structure") {
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(4, 4);
    j(0, 1) = -1;
    j(1, 0) = 1;
    j(2, 3) = -1;
    j(3, 2) = 1;
    CHECK(commutes_with_phase_action(j, AlgebraKind::Complex));
    CHECK(commutes_with_phase_action(diagonal4(3, 3, 7, 7), AlgebraKind::Complex));
    CHECK_FALSE(commutes_with_phase_action(diagonal4(1, 2, 1, 1), AlgebraKind::Complex));
    CHECK(commutes_with_phase_action(Eigen::MatrixXd::Identity(8, 8), AlgebraKind::Quaternion));
    Eigen::MatrixXd g = Eigen::MatrixXd::Identity(8, 8);
    g(0, 0) = 2.0; // breaks quaternionic linearity of the first block
    CHECK_FALSE(commutes_with_phase_action(g, AlgebraKind::Quaternion));
}

TEST_CASE("perturbation catalog entries are even and bounded by one") {
    for (const std::string& name : perturbation_names()) {
        const Perturbation& f = perturbation_catalog(name);
        for (const Direction& w : sample_sphere(AlgebraKind::Complex, 2, 500, 53)) {
            const double v = f.fn(w);
            CHECK(std::abs(v) <= 1.0 + 1e-12);
            CHECK(f.fn(w.negated()) == doctest::Approx(v).epsilon(1e-14));
        }
    }
    CHECK_THROWS_AS(perturbation_catalog("no_such_fn"), std::invalid_argument);
}

TEST_CASE("construction rejects bad parameters") {
    CHECK_THROWS_AS(StarBody::ball(AlgebraKind::Complex, 2, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(StarBody::ball(AlgebraKind::Complex, 0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(StarBody::polydisc(AlgebraKind::Complex, {1.0, -2.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(StarBody::lp_ball(AlgebraKind::Complex, 2, 0.5, 1.0),
                    std::invalid_argument);

    // Non-symmetric and non-positive-definite matrices are rejected.
    Eigen::MatrixXd bad = diagonal4(1, 1, 1, -1);
    CHECK_THROWS_AS(StarBody::ellipsoid(AlgebraKind::Complex, bad), std::invalid_argument);
    Eigen::MatrixXd asym = Eigen::MatrixXd::Identity(4, 4);
    asym(0, 1) = 0.5;
    CHECK_THROWS_AS(StarBody::ellipsoid(AlgebraKind::Complex, asym), std::invalid_argument);
    CHECK_THROWS_AS(StarBody::linear_image(Eigen::MatrixXd::Zero(4, 4),
                                           StarBody::ball(AlgebraKind::Complex, 2, 1.0)),
                    std::invalid_argument);

    // Amplitude must keep 1 + eps f positive.
    CHECK_THROWS_AS(StarBody::radial_perturbation(StarBody::ball(AlgebraKind::Complex, 2, 1.0),
                                                  1.0, "re_block1_sq"),
                    std::invalid_argument);
    // cross_block_product needs two blocks.
    CHECK_THROWS_AS(StarBody::radial_perturbation(StarBody::ball(AlgebraKind::Complex, 1, 1.0),
                                                  0.1, "cross_block_product"),
                    std::invalid_argument);

    // Mixed algebras cannot be combined.
    CHECK_THROWS_AS(StarBody::intersection(StarBody::ball(AlgebraKind::Complex, 2, 1.0),
                                           StarBody::ball(AlgebraKind::Quaternion, 1, 1.0)),
                    std::invalid_argument);
}

TEST_CASE("radial rejects mismatched directions and invalid evaluators") {
    const StarBody ball = StarBody::ball(AlgebraKind::Complex, 2, 1.0);
    const Direction wrong_dim(AlgebraKind::Complex, {1.0, 0.0});
    CHECK_THROWS_AS(ball.radial(wrong_dim), std::invalid_argument);

    const StarBody negative = StarBody::custom(
        AlgebraKind::Complex, 2, [](const Direction&) { return -1.0; }, "negative");
    const Direction e1(AlgebraKind::Complex, {1.0, 0.0, 0.0, 0.0});
    CHECK_THROWS_AS(negative.radial(e1), InvalidBodyError);
}

TEST_CASE("validate_body passes the catalog and reports failures with a witness") {
    CHECK(validate_body(StarBody::ball(AlgebraKind::Complex, 2, 1.0), 1000, 3).ok);
    CHECK(validate_body(cube4(), 1000, 3).ok);
    CHECK(validate_body(StarBody::ball(AlgebraKind::Quaternion, 2, 1.0), 1000, 3).ok);

    const StarBody negative = StarBody::custom(
        AlgebraKind::Complex, 2,
        [](const Direction& w) { return w[0] > 0.9 ? -1.0 : 1.0; }, "spotty");
    const ValidationReport bad = validate_body(negative, 2000, 3);
    CHECK_FALSE(bad.ok);
    CHECK(bad.issue.find("invalid body") != std::string::npos);

    const StarBody lopsided = StarBody::custom(
        AlgebraKind::Complex, 2, [](const Direction& w) { return 1.0 + 0.5 * w[0]; },
        "lopsided");
    const ValidationReport asym = validate_body(lopsided, 2000, 3);
    CHECK_FALSE(asym.ok);
    CHECK(asym.issue.find("symmetry") != std::string::npos);
    CHECK(asym.worst_symmetry_gap > 0.1);
    CHECK_FALSE(asym.worst_direction.empty());

    const StarBody huge = StarBody::custom(
        AlgebraKind::Complex, 2, [](const Direction&) { return 1e16; }, "huge");
    const ValidationReport unbounded = validate_body(huge, 100, 3);
    CHECK_FALSE(unbounded.ok);
    CHECK(unbounded.issue.find("unbounded") != std::string::npos);
}
