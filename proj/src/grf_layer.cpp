#include "oesnn/grf_layer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "oesnn/errors.hpp"

namespace oesnn {

GrfLayer::GrfLayer(std::size_t ni_size, double ts)
    : ts_(ts),
      centers_(ni_size, 0.0),
      excitations_(ni_size, 0.0),
      firing_times_(ni_size, 0.0),
      orders_(ni_size, 0),
      sequence_(ni_size, 0) {
    std::vector<ConfigError::Issue> issues;
    if (ni_size < 3) issues.push_back({"ni_size", "must be >= 3"});
    if (!(ts > 0.0) || !std::isfinite(ts)) issues.push_back({"ts", "must be a finite value > 0"});
    if (!issues.empty()) throw ConfigError(std::move(issues));
    std::iota(orders_.begin(), orders_.end(), std::size_t{0});
    std::iota(sequence_.begin(), sequence_.end(), std::size_t{0});
}

double GrfLayer::degenerate_width(double i_max) noexcept {
    return 1e-9 * std::max(1.0, std::abs(i_max));
}

void GrfLayer::init(const SlidingWindow& window) { init(window.min(), window.max()); }

void GrfLayer::init(double i_min, double i_max) {
    const double spacing = (i_max - i_min) / static_cast<double>(size() - 2);
    for (std::size_t j = 0; j < size(); ++j) {
        const double offset = (2.0 * static_cast<double>(j) - 3.0) / 2.0;
        centers_[j] = i_min + offset * spacing;
    }
    width_ = std::max(spacing, degenerate_width(i_max));
}

void GrfLayer::encode(double x) {
    const std::size_t n = size();
    for (std::size_t j = 0; j < n; ++j) {
        const double z = (x - centers_[j]) / width_;
        excitations_[j] = std::exp(-0.5 * z * z);
        firing_times_[j] = ts_ * (1.0 - excitations_[j]);
    }
    std::iota(sequence_.begin(), sequence_.end(), std::size_t{0});
    std::sort(sequence_.begin(), sequence_.end(), [this](std::size_t a, std::size_t b) {
        if (firing_times_[a] != firing_times_[b]) return firing_times_[a] < firing_times_[b];
        return a < b;
    });
    for (std::size_t rank = 0; rank < n; ++rank) orders_[sequence_[rank]] = rank;
}

}  // namespace oesnn
