#include "slicevol/rng.hpp"
#include "slicevol/sampling.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

using namespace slicevol;

namespace {

// Independent 1-D quadrature oracle for moments of one coordinate of the
// uniform measure on S^{m-1}:
//   E[w_1^k] = int cos^k(t) sin^{m-2}(t) dt / int sin^{m-2}(t) dt over [0, pi].
// Composite Simpson with enough panels for ~1e-12 accuracy.
double coordinate_moment_oracle(int m, int k) {
    const int panels = 20000;
    const double h = std::numbers::pi / panels;
    auto weight = [&](int i) {
        if (i == 0 || i == panels) return 1.0;
        return i % 2 == 1 ? 4.0 : 2.0;
    };
    double num = 0.0, den = 0.0;
    for (int i = 0; i <= panels; ++i) {
        const double t = i * h;
        const double base = std::pow(std::sin(t), m - 2);
        num += weight(i) * std::pow(std::cos(t), k) * base;
        den += weight(i) * base;
    }
    return num / den;
}

} // namespace

TEST_CASE("coordinate moment oracle reproduces the closed forms") {
    // E[w1^2] = 1/m and E[w1^4] = 3/(m(m+2)).
    CHECK(std::abs(coordinate_moment_oracle(2, 2) - 0.5) <= 1e-9);
    CHECK(std::abs(coordinate_moment_oracle(4, 4) - 0.125) <= 1e-9);
}

TEST_CASE("sphere samples have the right second moment in the plane") {
    const auto dirs = sample_sphere(AlgebraKind::Complex, 1, 40000, 1234);
    std::vector<double> values;
    values.reserve(dirs.size());
    for (const auto& w : dirs) values.push_back(w[0] * w[0]);
    const Estimate est = estimate_mean(values, 4096);
    CHECK(std::abs(est.value - 0.5) <= 3.0 * est.std_error);
}

TEST_CASE("sphere samples on S^3 match the fourth-moment oracle") {
    const double oracle = coordinate_moment_oracle(4, 4); // = 1/8
    const auto dirs = sample_sphere(AlgebraKind::Complex, 2, 40000, 4321);
    std::vector<double> values;
    values.reserve(dirs.size());
    for (const auto& w : dirs) values.push_back(w[0] * w[0] * w[0] * w[0]);
    const Estimate est = estimate_mean(values, 4096);
    CHECK(std::abs(est.value - oracle) <= 3.0 * est.std_error);
}

TEST_CASE("sphere sampling is reproducible bit for bit") {
    const auto a = sample_sphere(AlgebraKind::Quaternion, 2, 500, 777);
    const auto b = sample_sphere(AlgebraKind::Quaternion, 2, 500, 777);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (int k = 0; k < a[i].dim(); ++k) CHECK(a[i][k] == b[i][k]);
    const auto c = sample_sphere(AlgebraKind::Quaternion, 2, 500, 778);
    CHECK(a[0][0] != c[0][0]);
}

TEST_CASE("circle nodes are the uniform rule") {
    const auto nodes = circle_nodes(4);
    REQUIRE(nodes.size() == 4);
    const double expected[4][2] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    double weight_sum = 0.0;
    for (std::size_t j = 0; j < 4; ++j) {
        CHECK(nodes[j].first.q[0] == doctest::Approx(expected[j][0]).epsilon(1e-15));
        CHECK(nodes[j].first.q[1] == doctest::Approx(expected[j][1]).epsilon(1e-15));
        CHECK(nodes[j].second == doctest::Approx(0.25));
        weight_sum += nodes[j].second;
    }
    CHECK(weight_sum == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(circle_nodes(3), std::invalid_argument);
    CHECK_THROWS_AS(circle_nodes(6 + 1), std::invalid_argument);
}

TEST_CASE("circle rule integrates low trigonometric polynomials exactly") {
    for (int k : {4, 8, 64}) {
        const auto nodes = circle_nodes(k);
        // cos(j t) averages to zero for 1 <= j < K.
        for (int j = 1; j < k; ++j) {
            double mean = 0.0;
            for (const auto& [phase, weight] : nodes) {
                const double theta = std::atan2(phase.q[1], phase.q[0]);
                mean += weight * std::cos(j * theta);
            }
            CHECK(std::abs(mean) <= 1e-12);
        }
        // cos^2 averages to exactly one half.
        double mean_sq = 0.0;
        for (const auto& [phase, weight] : nodes) mean_sq += weight * phase.q[0] * phase.q[0];
        CHECK(mean_sq == doctest::Approx(0.5).epsilon(1e-14));
    }
}

TEST_CASE("phase group sampling is uniform and seeded") {
    const auto qs = sample_phase_group(AlgebraKind::Quaternion, 40000, 9);
    std::vector<double> first_sq;
    first_sq.reserve(qs.size());
    for (const Phase& q : qs) {
        CHECK(std::abs(q.norm() - 1.0) <= 1e-12);
        first_sq.push_back(q.q[0] * q.q[0]);
    }
    const Estimate est = estimate_mean(first_sq, 4096);
    CHECK(std::abs(est.value - 0.25) <= 3.0 * est.std_error);

    const auto again = sample_phase_group(AlgebraKind::Quaternion, 10, 9);
    for (int i = 0; i < 10; ++i)
        for (int k = 0; k < 4; ++k) CHECK(again[i].q[k] == qs[i].q[k]);

    for (const Phase& q : sample_phase_group(AlgebraKind::Complex, 50, 3)) {
        CHECK(std::abs(q.norm() - 1.0) <= 1e-12);
        CHECK(q.q[2] == 0.0);
    }
}

TEST_CASE("estimate_mean handles constants, mixtures and bad input") {
    const std::vector<double> constant(100, 3.25);
    const Estimate c = estimate_mean(constant, 7);
    CHECK(c.value == 3.25);
    CHECK(c.std_error == 0.0);
    CHECK(c.samples == 100);

    std::vector<double> alternating;
    for (int i = 0; i < 1000; ++i) alternating.push_back(i % 2 ? 1.0 : 0.0);
    CHECK(estimate_mean(alternating, 64).value == doctest::Approx(0.5));

    std::vector<double> bad = {1.0, 2.0, 3.0, std::nan("")};
    CHECK_THROWS_WITH_AS(
        [&] {
            (void)estimate_mean(bad, 2);
        }(),
        doctest::Contains("index 3"), std::invalid_argument);

    CHECK_THROWS_AS(estimate_mean(std::vector<double>{}, 4), std::invalid_argument);
}

TEST_CASE("parallel evaluation does not change a single bit") {
    const std::size_t count = 10007;
    auto compute = [count](int threads) {
        std::vector<double> values(count);
        parallel_fill(count, threads, [&](std::size_t begin, std::size_t end) {
            for (std::size_t i = begin; i < end; ++i) {
                const double x = 0.1 + static_cast<double>(i);
                values[i] = std::sin(x) * std::sqrt(x);
            }
        });
        return values;
    };
    const auto serial = compute(1);
    const auto threaded = compute(7);
    for (std::size_t i = 0; i < count; ++i) CHECK(serial[i] == threaded[i]);

    const Estimate a = estimate_mean(serial, 512);
    const Estimate b = estimate_mean(threaded, 512);
    CHECK(a.value == b.value);
    CHECK(a.std_error == b.std_error);
}

TEST_CASE("substreams are stable per label and independent across labels") {
    CHECK(substream_seed(42, "functionals/volume_polar") ==
          substream_seed(42, "functionals/volume_polar"));
    CHECK(substream_seed(42, "functionals/volume_polar") !=
          substream_seed(42, "functionals/slice_functional"));
    CHECK(substream_seed(42, "a") != substream_seed(43, "a"));
}

TEST_CASE("sphere estimates are invariant under a fixed phase") {
    const auto dirs = sample_sphere(AlgebraKind::Complex, 2, 30000, 2024);
    const Phase q = phase_from_angle(0.7);
    auto test_fn = [](const Direction& w) { return w[0] * w[0] + 0.5 * w[2]; };
    std::vector<double> plain, rotated;
    plain.reserve(dirs.size());
    rotated.reserve(dirs.size());
    for (const Direction& w : dirs) {
        plain.push_back(test_fn(w));
        rotated.push_back(test_fn(phase_rotate(w, q)));
    }
    const Estimate a = estimate_mean(plain, 4096);
    const Estimate b = estimate_mean(rotated, 4096);
    CHECK(std::abs(a.value - b.value) <= 3.0 * combined_std_error(a, b));
}

TEST_CASE("significance handles zero standard errors") {
    CHECK(significance(0.0, 0.0) == 0.0);
    CHECK(std::isinf(significance(1.0, 0.0)));
    CHECK(significance(1.0, 0.5) == doctest::Approx(2.0));
}
