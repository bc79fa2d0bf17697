#pragma once

#include "slicevol/algebra.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace slicevol {

/// Sample counts and seeding for the nested sphere x phase integrals.
/// `threads` is an execution knob only: results are bitwise identical for
/// any value (evaluation is indexed, reduction order is fixed).
struct QuadratureSpec {
    std::size_t sphere_samples = 200000; // N, Monte Carlo directions
    int circle_nodes = 64;               // K, deterministic circle rule (d=2)
    std::size_t phase_samples = 512;     // Q, Monte Carlo phases (d=4)
    std::uint64_t seed = 0;
    std::size_t chunk_size = 4096;
    int threads = 1; // 0 = hardware concurrency

    void validate() const; // throws std::invalid_argument
};

/// Mean value with its standard error. std_error == 0 only for
/// deterministic rules or constant inputs.
struct Estimate {
    double value = 0.0;
    double std_error = 0.0;
    std::uint64_t samples = 0;
};

double combined_std_error(const Estimate& a, const Estimate& b) noexcept;

/// value / std_error with the 0/0 case mapped to 0 and x/0 (x > 0) to +inf.
double significance(double value, double std_error) noexcept;

/// `count` i.i.d. uniform directions on S^{m-1}, m = block_dim(algebra) * n,
/// via normalized Gaussian vectors. Sequential generation: the sequence
/// depends only on the seed.
std::vector<Direction> sample_sphere(AlgebraKind algebra, int n, std::size_t count,
                                     std::uint64_t seed);

/// K equally spaced phases with uniform weights 1/K. Exact on trigonometric
/// polynomials of degree < K. Requires K >= 4 and even.
std::vector<std::pair<Phase, double>> circle_nodes(int k);

/// Uniform random unit elements of the scalar algebra: uniform angles for
/// d=2, uniform S^3 for d=4. (Deterministic phase quadrature for d=2 lives
/// in circle_nodes.)
std::vector<Phase> sample_phase_group(AlgebraKind algebra, std::size_t count,
                                      std::uint64_t seed);

/// Mean and standard error accumulated chunk by chunk in fixed chunk order,
/// so the result does not depend on how `values` were produced. Throws on
/// non-finite input, naming the index. Constant sequences report
/// std_error = 0 exactly.
Estimate estimate_mean(std::span<const double> values, std::size_t chunk_size);

/// Fills out[i] = fn(i) for i in [0, count), dividing index ranges over
/// `threads` threads. Each element depends only on its index, so the fill is
/// bitwise reproducible for any thread count.
void parallel_fill(std::size_t count, int threads,
                   const std::function<void(std::size_t begin, std::size_t end)>& run_range);

int resolve_threads(int threads) noexcept;

} // namespace slicevol
