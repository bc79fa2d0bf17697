#pragma once

#include <cstdint>
#include <string_view>

namespace slicevol {

/// splitmix64 step; used for seeding and label hashing.
constexpr std::uint64_t splitmix64(std::uint64_t& state) noexcept {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Derives the seed of an independent substream from a master seed and a
/// fixed label. Every stochastic operation owns one label, so adding a new
/// operation never perturbs the draws of existing ones.
std::uint64_t substream_seed(std::uint64_t master, std::string_view label) noexcept;

/// xoshiro256++ with a hand-rolled Gaussian transform. Self-contained so
/// that sequences are reproducible bit-for-bit independent of the standard
/// library implementation.
class Rng {
public:
    explicit Rng(std::uint64_t seed) noexcept {
        std::uint64_t sm = seed;
        for (auto& w : state_) w = splitmix64(sm);
    }

    std::uint64_t next_u64() noexcept {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform in [0, 1).
    double next_double() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform in (0, 1]; safe as a log() argument.
    double next_double_open() noexcept {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    /// One standard Gaussian (Box-Muller; the second variate is cached).
    double next_gaussian() noexcept;

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t state_[4] = {};
    double cached_gaussian_ = 0.0;
    bool has_cached_ = false;
};

} // namespace slicevol
