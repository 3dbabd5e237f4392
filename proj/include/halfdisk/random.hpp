#pragma once
/**
 * @file   random.hpp
 * @brief  Seeded random streams with machine-independent variates.
 *
 * Every random quantity in the library flows from a single 64-bit seed.
 * Independent streams are obtained with the splitting rule
 *
 *     derive_seed(seed, stream) = mix64(mix64(seed) + (stream + 1) * 0x9E3779B97F4A7C15)
 *
 * where mix64 is the SplitMix64 finalizer, and a stream is a std::mt19937_64
 * constructed from the derived value. Both the engine and the variate
 * transforms below are fully specified, so results reproduce bit-for-bit
 * across standard libraries (the std:: distributions are not).
 */

#include <cstdint>
#include <initializer_list>
#include <random>

namespace halfdisk
{
    using Rng = std::mt19937_64;

    [[nodiscard]] constexpr std::uint64_t mix64 (std::uint64_t z) noexcept
    {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    [[nodiscard]] constexpr std::uint64_t derive_seed (std::uint64_t seed, std::uint64_t stream) noexcept
    {
        return mix64 (mix64 (seed) + (stream + 1) * 0x9E3779B97F4A7C15ULL);
    }

    /// Stream for a path of stream ids, e.g. make_rng(seed, {cell, trial}).
    [[nodiscard]] inline Rng make_rng (std::uint64_t seed, std::initializer_list<std::uint64_t> path)
    {
        std::uint64_t s = seed;
        for (auto id : path)
            s = derive_seed (s, id);
        return Rng{s};
    }

    /// Uniform on [0, 1) with 53 random bits.
    [[nodiscard]] inline double uniform01 (Rng &rng) noexcept { return static_cast<double> (rng () >> 11) * 0x1.0p-53; }

    /// Uniform on (0, 1].
    [[nodiscard]] inline double uniform01_open_low (Rng &rng) noexcept { return (static_cast<double> (rng () >> 11) + 1.0) * 0x1.0p-53; }

    [[nodiscard]] inline double uniform_real (Rng &rng, double lo, double hi) noexcept { return lo + (hi - lo) * uniform01 (rng); }

    /// Unbiased integer on [0, n). n must be positive.
    [[nodiscard]] std::uint64_t uniform_index (Rng &rng, std::uint64_t n);

    /// Poisson variate: inversion for small means, PTRS transformed rejection otherwise.
    [[nodiscard]] std::uint64_t poisson (Rng &rng, double mean);

} // namespace halfdisk
