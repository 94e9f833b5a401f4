#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "oesnn/dataset.hpp"
#include "oesnn/rng.hpp"

namespace oesnn::testing {

inline constexpr double kNoiseSigma = 0.05;
inline const std::vector<std::size_t> kSpikeIndices = {250, 430, 610, 790, 970, 1150, 1330, 1510, 1690, 1870};

/// Unit sine (period 100) plus seeded Gaussian noise, with upward spikes of
/// 8 sigma at `spikes`. Point labels mark the spikes.
inline Series sine_with_spikes(std::size_t n, std::uint64_t seed, const std::vector<std::size_t>& spikes,
                               const std::string& key = "synthetic/sine.csv") {
    Rng rng(seed);
    Series s;
    s.key = key;
    s.category = key.substr(0, key.find('/'));
    s.labels.kind = LabelSet::Kind::points;
    for (std::size_t i = 0; i < n; ++i) {
        double x = std::sin(2.0 * std::numbers::pi * static_cast<double>(i) / 100.0) + rng.normal(0.0, kNoiseSigma);
        s.timestamps.push_back(Timestamp::from_index(i));
        s.values.push_back(x);
    }
    for (std::size_t i : spikes) {
        if (i >= n) continue;
        s.values[i] += 8.0 * kNoiseSigma;
        s.labels.points.push_back(s.timestamps[i]);
    }
    return s;
}

}  // namespace oesnn::testing
