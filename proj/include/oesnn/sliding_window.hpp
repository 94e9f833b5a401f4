#pragma once

#include <cstddef>
#include <vector>

namespace oesnn {

/// Which statistic plays the role of the spread parameter wherever the
/// detector needs one (normal draws, anomaly threshold).
enum class SpreadStatistic { std_dev, variance };

/// Fixed-capacity FIFO over the most recent stream values. Once full, every
/// push evicts the oldest value. Storage is allocated once at construction.
class SlidingWindow {
public:
    explicit SlidingWindow(std::size_t capacity);

    /// Throws InputError for non-finite values; the window is left untouched.
    void push(double x);
    void clear() noexcept;

    std::size_t capacity() const noexcept { return buffer_.size(); }
    std::size_t size() const noexcept { return size_; }
    bool empty() const noexcept { return size_ == 0; }
    bool full() const noexcept { return size_ == buffer_.size(); }

    /// i = 0 is the oldest value.
    double operator[](std::size_t i) const noexcept;
    std::vector<double> values() const;

    double min() const;
    double max() const;
    double mean() const;
    /// Population variance (divides by n).
    double variance() const;
    double spread(SpreadStatistic statistic) const;

private:
    std::vector<double> buffer_;
    std::size_t head_ = 0;  // index of the oldest value
    std::size_t size_ = 0;
};

}  // namespace oesnn
