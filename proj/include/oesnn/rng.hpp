#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace oesnn {

/// SplitMix64 finaliser. Used to derive independent substream seeds.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// 64-bit FNV-1a; stable across platforms and releases.
std::uint64_t fnv1a64(std::string_view bytes) noexcept;

/// Seeded random source with a platform-independent output sequence.
///
/// The engine is std::mt19937_64, whose output is fixed by the standard.
/// Distributions are implemented here rather than via <random> because the
/// standard leaves their algorithms to the library vendor. Normal variates use
/// the Box-Muller transform, one variate per pair of engine outputs.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// A generator whose stream depends only on (seed, tag).
    static Rng substream(std::uint64_t seed, std::uint64_t tag) noexcept;

    /// Uniform on (0, 1], 53-bit resolution.
    double uniform() noexcept;
    /// Normal(mean, stddev^2). stddev == 0 returns `mean` exactly.
    double normal(double mean, double stddev) noexcept;

    std::uint64_t next() noexcept { return engine_(); }

private:
    std::mt19937_64 engine_;
};

}  // namespace oesnn
