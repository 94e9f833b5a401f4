#include "oesnn/sliding_window.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "oesnn/errors.hpp"

namespace oesnn {

SlidingWindow::SlidingWindow(std::size_t capacity) : buffer_(capacity, 0.0) {
    if (capacity == 0) throw ConfigError(std::vector<ConfigError::Issue>{{"window_size", "must be positive"}});
}

void SlidingWindow::push(double x) {
    if (!std::isfinite(x)) throw InputError("non-finite value pushed into window");
    const std::size_t cap = buffer_.size();
    if (size_ < cap) {
        buffer_[(head_ + size_) % cap] = x;
        ++size_;
    } else {
        buffer_[head_] = x;
        head_ = (head_ + 1) % cap;
    }
}

void SlidingWindow::clear() noexcept {
    head_ = 0;
    size_ = 0;
}

double SlidingWindow::operator[](std::size_t i) const noexcept {
    return buffer_[(head_ + i) % buffer_.size()];
}

std::vector<double> SlidingWindow::values() const {
    std::vector<double> out;
    out.reserve(size_);
    for (std::size_t i = 0; i < size_; ++i) out.push_back((*this)[i]);
    return out;
}

double SlidingWindow::min() const {
    if (empty()) throw std::logic_error("min of empty window");
    double m = (*this)[0];
    for (std::size_t i = 1; i < size_; ++i) m = std::min(m, (*this)[i]);
    return m;
}

double SlidingWindow::max() const {
    if (empty()) throw std::logic_error("max of empty window");
    double m = (*this)[0];
    for (std::size_t i = 1; i < size_; ++i) m = std::max(m, (*this)[i]);
    return m;
}

// Accumulates offsets from the oldest value so that a constant window has a
// mean equal to that constant, bit for bit.
double SlidingWindow::mean() const {
    if (empty()) throw std::logic_error("mean of empty window");
    const double ref = (*this)[0];
    double acc = 0.0;
    for (std::size_t i = 0; i < size_; ++i) acc += (*this)[i] - ref;
    return ref + acc / static_cast<double>(size_);
}

double SlidingWindow::variance() const {
    const double m = mean();
    double acc = 0.0;
    for (std::size_t i = 0; i < size_; ++i) {
        const double d = (*this)[i] - m;
        acc += d * d;
    }
    return acc / static_cast<double>(size_);
}

double SlidingWindow::spread(SpreadStatistic statistic) const {
    const double var = variance();
    return statistic == SpreadStatistic::variance ? var : std::sqrt(var);
}

}  // namespace oesnn
