#include "slicevol/oracle.hpp"

#include "slicevol/errors.hpp"
#include "slicevol/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace slicevol {

namespace {

/// 1.001 x the largest radial over a seeded probe set.
double bounding_radius(const StarBody& body, std::uint64_t seed, std::size_t probes = 4096) {
    const auto dirs = sample_sphere(body.algebra(), body.blocks(), probes,
                                    substream_seed(seed, "oracle/rejection/probes"));
    double max_rho = 0.0;
    for (const Direction& w : dirs) max_rho = std::max(max_rho, body.radial(w));
    return 1.001 * max_rho;
}

} // namespace

Estimate mc_volume_rejection(const StarBody& body, std::size_t samples, std::uint64_t seed) {
    if (samples < 1) throw std::invalid_argument("mc_volume_rejection: samples >= 1");
    const int m = body.dim();

    // Directions first: the bounding radius covers the probe set and every
    // point direction, so corner-concentrated bodies (whose maxima random
    // probes miss) stay inside the ball. R cancels in expectation, so the
    // estimator is unbiased for any valid bound.
    Rng rng(substream_seed(seed, "oracle/rejection/points"));
    std::vector<double> coords(static_cast<std::size_t>(m));
    std::vector<double> radials;
    radials.reserve(samples);
    double radius = bounding_radius(body, seed);
    for (std::size_t i = 0; i < samples; ++i) {
        double norm2 = 0.0;
        do {
            norm2 = 0.0;
            for (double& c : coords) {
                c = rng.next_gaussian();
                norm2 += c * c;
            }
        } while (norm2 < 1e-300);
        const double inv = 1.0 / std::sqrt(norm2);
        std::vector<double> unit(coords);
        for (double& c : unit) c *= inv;
        const double rho = body.radial(Direction(body.algebra(), std::move(unit)));
        radials.push_back(rho);
        radius = std::max(radius, 1.001 * rho);
    }

    std::size_t accepted = 0;
    for (const double rho : radials) {
        if (rho > radius)
            throw Error("mc_volume_rejection: bounding radius " + std::to_string(radius) +
                        " underestimates the body (radial " + std::to_string(rho) +
                        " found); increase the probe budget");
        // r^{m-1} radius law inside the bounding ball.
        const double r = radius * std::pow(rng.next_double_open(), 1.0 / static_cast<double>(m));
        if (r <= rho) ++accepted;
    }

    const double ball = unit_ball_volume(m) * std::pow(radius, static_cast<double>(m));
    const double p = static_cast<double>(accepted) / static_cast<double>(samples);
    return Estimate{ball * p,
                    ball * std::sqrt(p * (1.0 - p) / static_cast<double>(samples)), samples};
}

double slice_grid_oracle(const StarBody& body, const Direction& omega, int grid_n) {
    if (body.algebra() != AlgebraKind::Complex)
        throw std::invalid_argument("slice_grid_oracle: complex algebra only");
    if (grid_n < 256) throw std::invalid_argument("slice_grid_oracle: grid_n >= 256");
    if (omega.algebra() != body.algebra() || omega.dim() != body.dim())
        throw std::invalid_argument("slice_grid_oracle: direction mismatch");

    // Orthonormal plane basis (w, i.w); the slice lives in their span.
    const std::vector<double>& e1 = omega.coords();
    const Direction e2dir = phase_rotate(omega, phase_from_angle(std::numbers::pi / 2.0));
    const std::vector<double>& e2 = e2dir.coords();

    // Bound the in-plane radial by a dense deterministic angle sweep.
    double max_rho = 0.0;
    Direction scratch = omega;
    for (int j = 0; j < 4096; ++j) {
        const double theta = 2.0 * std::numbers::pi * j / 4096.0;
        phase_rotate_into(omega, phase_from_angle(theta), scratch);
        max_rho = std::max(max_rho, body.radial(scratch));
    }
    const double bound = 1.001 * max_rho;

    const double h = 2.0 * bound / grid_n;
    std::vector<double> point(e1.size());
    std::size_t count = 0;
    for (int i = 0; i < grid_n; ++i) {
        const double s = -bound + (i + 0.5) * h;
        for (int j = 0; j < grid_n; ++j) {
            const double t = -bound + (j + 0.5) * h;
            const double r = std::hypot(s, t);
            if (r == 0.0) {
                ++count; // the origin lies in every star body
                continue;
            }
            for (std::size_t k = 0; k < point.size(); ++k)
                point[k] = (s * e1[k] + t * e2[k]) / r;
            if (r <= body.radial(Direction(omega.algebra(), point))) ++count;
        }
    }
    return static_cast<double>(count) * h * h;
}

ConstantCheckReport constant_check(int n, AlgebraKind algebra, const QuadratureSpec& spec) {
    if (n < 1) throw std::invalid_argument("constant_check: n >= 1");
    spec.validate();

    ConstantCheckReport report;
    report.n = n;
    report.algebra = algebra;

    // (a) surface of the ambient unit sphere against 2 k pi^k / k!,
    // k = m / 2. For complex blocks this is the sphere<->Grassmannian
    // normalization 2 n pi^n / n!.
    const int m = block_dim(algebra) * n;
    const int k = m / 2;
    report.surface_value = sphere_surface(m);
    double k_factorial = 1.0;
    for (int i = 2; i <= k; ++i) k_factorial *= i;
    report.surface_reference =
        2.0 * k * std::pow(std::numbers::pi, static_cast<double>(k)) / k_factorial;
    report.surface_rel_err =
        std::abs(report.surface_value - report.surface_reference) / report.surface_reference;
    report.surface_ok = report.surface_rel_err <= 1e-12;

    // (b) the unit-ball functional must reproduce the closed-form volume;
    // this pins the constants 1/n! and 2^n/(2n)!.
    const StarBody ball = StarBody::ball(algebra, n, 1.0);
    report.ball_functional = slice_functional(ball, spec);
    report.ball_volume_exact = *closed_form_volume(ball);
    report.functional_gap = std::abs(report.ball_functional.value - report.ball_volume_exact);
    report.functional_ok = report.functional_gap <=
                           std::max(3.0 * report.ball_functional.std_error,
                                    1e-12 * report.ball_volume_exact);

    report.ok = report.surface_ok && report.functional_ok;
    return report;
}

} // namespace slicevol
