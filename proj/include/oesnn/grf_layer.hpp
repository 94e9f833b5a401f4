#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "oesnn/sliding_window.hpp"

namespace oesnn {

/// Input layer: NI_size Gaussian receptive fields spread over the current
/// window range, converting one value into rank-order firing of the input
/// neurons.
///
/// Field j is centred at I_min + (2j - 3)/2 * w with a shared width
/// w = (I_max - I_min) / (NI_size - 2). Centres are not clamped to the window
/// range. When the window range collapses to a point the width is floored at
/// `degenerate_width(I_max)` while the centres keep the raw (zero) spacing.
class GrfLayer {
public:
    GrfLayer(std::size_t ni_size, double ts);

    /// Recompute centres and width from the window's min and max.
    void init(const SlidingWindow& window);
    void init(double i_min, double i_max);

    /// Fill excitations, firing times and orders for `x`.
    void encode(double x);

    std::size_t size() const noexcept { return centers_.size(); }
    double ts() const noexcept { return ts_; }
    double width() const noexcept { return width_; }

    std::span<const double> centers() const noexcept { return centers_; }
    std::span<const double> excitations() const noexcept { return excitations_; }
    std::span<const double> firing_times() const noexcept { return firing_times_; }
    /// orders()[j] is the firing rank of input neuron j (0 fires first).
    std::span<const std::size_t> orders() const noexcept { return orders_; }
    /// Input neuron ids in firing sequence; the inverse of orders().
    std::span<const std::size_t> firing_sequence() const noexcept { return sequence_; }

    static double degenerate_width(double i_max) noexcept;

private:
    double ts_;
    double width_ = 0.0;
    std::vector<double> centers_;
    std::vector<double> excitations_;
    std::vector<double> firing_times_;
    std::vector<std::size_t> orders_;
    std::vector<std::size_t> sequence_;
};

}  // namespace oesnn
