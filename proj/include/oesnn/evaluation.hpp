#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace oesnn {

/// Ordered record key. Plain numbers and ISO-8601 date-times
/// ("YYYY-MM-DD[ T]HH:MM[:SS[.ffffff]]") compare by value, so
/// "2014-04-10 07:15:00" equals "2014-04-10 07:15:00.000000". Anything else
/// compares by its text.
class Timestamp {
public:
    Timestamp() = default;
    static Timestamp parse(std::string_view text);
    static Timestamp from_index(std::size_t index);

    const std::string& text() const noexcept { return text_; }
    bool numeric() const noexcept { return numeric_; }
    double value() const noexcept { return value_; }

    friend std::weak_ordering operator<=>(const Timestamp& a, const Timestamp& b);
    friend bool operator==(const Timestamp& a, const Timestamp& b) {
        return (a <=> b) == std::weak_ordering::equivalent;
    }

private:
    std::string text_;
    double value_ = 0.0;
    bool numeric_ = false;
};

/// Ground truth for one series: either individually labelled points or
/// inclusive timestamp windows.
struct LabelSet {
    enum class Kind { points, windows };

    Kind kind = Kind::windows;
    std::vector<Timestamp> points;
    std::vector<std::pair<Timestamp, Timestamp>> windows;

    /// Sorts windows and merges overlapping ones. Throws InputError when a
    /// window ends before it starts.
    void normalize();
};

/// Position i is true iff timestamps[i] falls in a window or the point set.
/// Throws InputError unless timestamps are strictly increasing.
std::vector<bool> expand_labels(const LabelSet& labels, const std::vector<Timestamp>& timestamps);

struct ConfusionCounts {
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t fn = 0;
    std::size_t tn = 0;

    std::size_t total() const noexcept { return tp + fp + fn + tn; }
    friend bool operator==(const ConfusionCounts&, const ConfusionCounts&) = default;
};

struct MetricsReport {
    double precision = 0.0;
    double recall = 0.0;
    double f_measure = 0.0;
    ConfusionCounts counts;
};

/// Precision, recall and F-measure, each 0 when its denominator is 0.
MetricsReport metrics_from_counts(const ConfusionCounts& counts);

/// Point-wise confusion counts of detector flags against truth. The first
/// `skip` positions are left out. Throws std::invalid_argument on a length
/// mismatch.
MetricsReport score(const std::vector<bool>& flags, const std::vector<bool>& truth,
                    std::size_t skip = 0);

}  // namespace oesnn
