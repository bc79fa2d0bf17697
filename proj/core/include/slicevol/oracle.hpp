#pragma once

#include "slicevol/functionals.hpp"

namespace slicevol {

/// Volume by rejection sampling inside a bounding ball: draws points with
/// the r^{m-1} radius law, accepts when |x| <= rho(x/|x|). Independent of
/// the polar rho^m weighting (indicator mean, binomial error, own
/// substream). Aborts if the bounding radius turns out to underestimate the
/// body.
Estimate mc_volume_rejection(const StarBody& body, std::size_t samples, std::uint64_t seed);

/// Slice area by rasterizing the plane of the line (d=2 only): counts grid
/// cells whose center lies in the body. Error O(1/grid_n). Entirely
/// independent of the circle rule.
double slice_grid_oracle(const StarBody& body, const Direction& omega, int grid_n);

struct ConstantCheckReport {
    int n = 0;
    AlgebraKind algebra = AlgebraKind::Complex;
    double surface_value = 0.0;       // 2 pi^{m/2} / Gamma(m/2) at m = 2n
    double surface_reference = 0.0;   // 2 n pi^n / n!
    double surface_rel_err = 0.0;
    bool surface_ok = false;          // <= 1e-12 relative (d=2 only)
    Estimate ball_functional;         // slice_functional(unit ball)
    double ball_volume_exact = 0.0;
    double functional_gap = 0.0;      // |functional - exact volume|
    bool functional_ok = false;       // within 3 std errors
    bool ok = false;
};

/// Pins the sphere<->Grassmannian constants: (a) the surface of S^{2n-1}
/// against 2 n pi^n / n!, analytically; (b) the unit-ball functional against
/// the closed-form volume, which fixes c_{n,2} = 1/n! and c_{n,4} = 2^n/(2n)!.
/// A mismatch is a hard failure that must block acceptance runs.
ConstantCheckReport constant_check(int n, AlgebraKind algebra, const QuadratureSpec& spec);

} // namespace slicevol
