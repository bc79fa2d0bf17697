#include "slicevol/sampling.hpp"

#include "slicevol/rng.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <thread>

namespace slicevol {

std::uint64_t substream_seed(std::uint64_t master, std::string_view label) noexcept {
    // FNV-1a over the label, then one splitmix scramble mixed with the master.
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : label) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    std::uint64_t s = master ^ h;
    return splitmix64(s);
}

double Rng::next_gaussian() noexcept {
    if (has_cached_) {
        has_cached_ = false;
        return cached_gaussian_;
    }
    const double u1 = next_double_open();
    const double u2 = next_double();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    cached_gaussian_ = r * std::sin(a);
    has_cached_ = true;
    return r * std::cos(a);
}

void QuadratureSpec::validate() const {
    if (sphere_samples < 1) throw std::invalid_argument("QuadratureSpec: sphere_samples >= 1");
    if (circle_nodes < 4 || circle_nodes % 2 != 0)
        throw std::invalid_argument("QuadratureSpec: circle_nodes must be even and >= 4");
    if (phase_samples < 1) throw std::invalid_argument("QuadratureSpec: phase_samples >= 1");
    if (chunk_size < 1) throw std::invalid_argument("QuadratureSpec: chunk_size >= 1");
    if (threads < 0) throw std::invalid_argument("QuadratureSpec: threads >= 0");
}

double combined_std_error(const Estimate& a, const Estimate& b) noexcept {
    return std::hypot(a.std_error, b.std_error);
}

double significance(double value, double std_error) noexcept {
    if (std_error > 0.0) return value / std_error;
    if (value == 0.0) return 0.0;
    return value > 0.0 ? std::numeric_limits<double>::infinity()
                       : -std::numeric_limits<double>::infinity();
}

std::vector<Direction> sample_sphere(AlgebraKind algebra, int n, std::size_t count,
                                     std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("sample_sphere: n >= 1");
    const int m = block_dim(algebra) * n;
    Rng rng(seed);
    std::vector<Direction> out;
    out.reserve(count);
    std::vector<double> coords(static_cast<std::size_t>(m));
    for (std::size_t i = 0; i < count; ++i) {
        double norm2 = 0.0;
        do {
            norm2 = 0.0;
            for (double& c : coords) {
                c = rng.next_gaussian();
                norm2 += c * c;
            }
        } while (norm2 < 1e-300); // zero draw: redraw
        const double inv = 1.0 / std::sqrt(norm2);
        std::vector<double> unit(coords);
        for (double& c : unit) c *= inv;
        out.emplace_back(algebra, std::move(unit));
    }
    return out;
}

std::vector<std::pair<Phase, double>> circle_nodes(int k) {
    if (k < 4 || k % 2 != 0)
        throw std::invalid_argument("circle_nodes: K must be even and >= 4");
    std::vector<std::pair<Phase, double>> nodes;
    nodes.reserve(static_cast<std::size_t>(k));
    const double w = 1.0 / static_cast<double>(k);
    for (int j = 0; j < k; ++j) {
        const double theta = 2.0 * std::numbers::pi * static_cast<double>(j) / k;
        nodes.emplace_back(phase_from_angle(theta), w);
    }
    return nodes;
}

std::vector<Phase> sample_phase_group(AlgebraKind algebra, std::size_t count,
                                      std::uint64_t seed) {
    Rng rng(seed);
    std::vector<Phase> out;
    out.reserve(count);
    const int d = block_dim(algebra);
    for (std::size_t i = 0; i < count; ++i) {
        double c[4] = {0, 0, 0, 0};
        double norm2 = 0.0;
        do {
            norm2 = 0.0;
            for (int j = 0; j < d; ++j) {
                c[j] = rng.next_gaussian();
                norm2 += c[j] * c[j];
            }
        } while (norm2 < 1e-300);
        const double inv = 1.0 / std::sqrt(norm2);
        Phase p;
        p.algebra = algebra;
        p.q = {c[0] * inv, c[1] * inv, c[2] * inv, c[3] * inv};
        out.push_back(p);
    }
    return out;
}

Estimate estimate_mean(std::span<const double> values, std::size_t chunk_size) {
    if (values.empty()) throw std::invalid_argument("estimate_mean: empty sequence");
    if (chunk_size < 1) throw std::invalid_argument("estimate_mean: chunk_size >= 1");

    const std::size_t n = values.size();
    bool all_equal = true;
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(values[i]))
            throw std::invalid_argument("estimate_mean: non-finite value at index " +
                                        std::to_string(i));
        if (values[i] != values[0]) all_equal = false;
    }
    if (all_equal) return Estimate{values[0], 0.0, n};

    // Chunked two-pass: both passes accumulate per chunk, then chunks in
    // order, so the bits do not depend on evaluation parallelism.
    double total = 0.0;
    for (std::size_t begin = 0; begin < n; begin += chunk_size) {
        const std::size_t end = std::min(begin + chunk_size, n);
        double partial = 0.0;
        for (std::size_t i = begin; i < end; ++i) partial += values[i];
        total += partial;
    }
    const double mean = total / static_cast<double>(n);

    double ss = 0.0;
    for (std::size_t begin = 0; begin < n; begin += chunk_size) {
        const std::size_t end = std::min(begin + chunk_size, n);
        double partial = 0.0;
        for (std::size_t i = begin; i < end; ++i) {
            const double delta = values[i] - mean;
            partial += delta * delta;
        }
        ss += partial;
    }
    double se = 0.0;
    if (n > 1) se = std::sqrt(ss / static_cast<double>(n - 1)) / std::sqrt(static_cast<double>(n));
    return Estimate{mean, se, n};
}

int resolve_threads(int threads) noexcept {
    if (threads > 0) return threads;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

void parallel_fill(std::size_t count, int threads,
                   const std::function<void(std::size_t, std::size_t)>& run_range) {
    const int t = resolve_threads(threads);
    if (t <= 1 || count < 2) {
        run_range(0, count);
        return;
    }
    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(t), count);
    const std::size_t per = (count + workers - 1) / workers;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = w * per;
        const std::size_t end = std::min(begin + per, count);
        if (begin >= end) break;
        pool.emplace_back([&run_range, begin, end] { run_range(begin, end); });
    }
    for (auto& th : pool) th.join();
}

} // namespace slicevol
