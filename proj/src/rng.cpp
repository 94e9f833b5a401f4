#include "oesnn/rng.hpp"

#include <cmath>
#include <numbers>

namespace oesnn {

std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t fnv1a64(std::string_view bytes) noexcept {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

Rng Rng::substream(std::uint64_t seed, std::uint64_t tag) noexcept {
    return Rng(mix64(mix64(seed) ^ tag));
}

double Rng::uniform() noexcept {
    return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
}

double Rng::normal(double mean, double stddev) noexcept {
    const double u1 = uniform();
    const double u2 = uniform();
    const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    if (stddev == 0.0) return mean;
    return mean + stddev * z;
}

}  // namespace oesnn
