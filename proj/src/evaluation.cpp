#include "oesnn/evaluation.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <stdexcept>

#include "oesnn/errors.hpp"

namespace oesnn {

namespace {

bool parse_number(std::string_view s, double& out) {
    if (s.empty()) return false;
    const char* first = s.data();
    if (*first == '+') ++first;
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last;
}

bool parse_digits(std::string_view s, std::size_t pos, std::size_t n, int& out) {
    if (pos + n > s.size()) return false;
    auto [ptr, ec] = std::from_chars(s.data() + pos, s.data() + pos + n, out);
    return ec == std::errc() && ptr == s.data() + pos + n;
}

// Seconds since the Unix epoch for "YYYY-MM-DD[( |T)HH:MM[:SS[.fff]]][Z]".
bool parse_datetime(std::string_view s, double& out) {
    int y = 0, mo = 0, d = 0, h = 0, mi = 0, sec = 0;
    if (s.size() < 10 || s[4] != '-' || s[7] != '-') return false;
    if (!parse_digits(s, 0, 4, y) || !parse_digits(s, 5, 2, mo) || !parse_digits(s, 8, 2, d)) return false;
    const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(mo)},
                                          std::chrono::day{static_cast<unsigned>(d)}};
    if (!ymd.ok()) return false;
    std::size_t pos = 10;
    double frac = 0.0;
    if (pos < s.size() && (s[pos] == ' ' || s[pos] == 'T')) {
        if (!parse_digits(s, pos + 1, 2, h) || pos + 3 >= s.size() || s[pos + 3] != ':' ||
            !parse_digits(s, pos + 4, 2, mi)) {
            return false;
        }
        pos += 6;
        if (pos < s.size() && s[pos] == ':') {
            if (!parse_digits(s, pos + 1, 2, sec)) return false;
            pos += 3;
            if (pos < s.size() && s[pos] == '.') {
                std::size_t end = pos + 1;
                while (end < s.size() && s[end] >= '0' && s[end] <= '9') ++end;
                if (end == pos + 1) return false;
                std::string tmp = "0";
                tmp.append(s.substr(pos, end - pos));
                if (!parse_number(tmp, frac)) return false;
                pos = end;
            }
        }
        if (h > 23 || mi > 59 || sec > 60) return false;
    }
    if (pos < s.size() && s[pos] == 'Z') ++pos;
    if (pos != s.size()) return false;
    const auto days = std::chrono::sys_days{ymd}.time_since_epoch().count();
    out = static_cast<double>(days) * 86400.0 + h * 3600.0 + mi * 60.0 + sec + frac;
    return true;
}

}  // namespace

Timestamp Timestamp::parse(std::string_view text) {
    Timestamp ts;
    ts.text_ = std::string(text);
    ts.numeric_ = parse_number(text, ts.value_) || parse_datetime(text, ts.value_);
    return ts;
}

Timestamp Timestamp::from_index(std::size_t index) {
    Timestamp ts;
    ts.text_ = std::to_string(index);
    ts.value_ = static_cast<double>(index);
    ts.numeric_ = true;
    return ts;
}

std::weak_ordering operator<=>(const Timestamp& a, const Timestamp& b) {
    if (a.numeric_ && b.numeric_) {
        if (a.value_ < b.value_) return std::weak_ordering::less;
        if (b.value_ < a.value_) return std::weak_ordering::greater;
        return std::weak_ordering::equivalent;
    }
    const int cmp = a.text_.compare(b.text_);
    if (cmp < 0) return std::weak_ordering::less;
    if (cmp > 0) return std::weak_ordering::greater;
    return std::weak_ordering::equivalent;
}

void LabelSet::normalize() {
    for (const auto& [start, end] : windows) {
        if (end < start) throw InputError("label window ends before it starts: " + start.text() + " > " + end.text());
    }
    std::sort(windows.begin(), windows.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::pair<Timestamp, Timestamp>> merged;
    for (auto& w : windows) {
        if (!merged.empty() && w.first <= merged.back().second) {
            if (merged.back().second < w.second) merged.back().second = w.second;
        } else {
            merged.push_back(w);
        }
    }
    windows = std::move(merged);
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
}

std::vector<bool> expand_labels(const LabelSet& labels, const std::vector<Timestamp>& timestamps) {
    for (std::size_t i = 1; i < timestamps.size(); ++i) {
        if (!(timestamps[i - 1] < timestamps[i])) {
            throw InputError("timestamps are not strictly increasing at record " + std::to_string(i) +
                             " (" + timestamps[i].text() + ")");
        }
    }
    std::vector<bool> out(timestamps.size(), false);
    if (labels.kind == LabelSet::Kind::points) {
        std::vector<Timestamp> sorted = labels.points;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t i = 0; i < timestamps.size(); ++i) {
            out[i] = std::binary_search(sorted.begin(), sorted.end(), timestamps[i]);
        }
        return out;
    }
    LabelSet norm;
    norm.windows = labels.windows;
    norm.normalize();
    std::size_t w = 0;
    for (std::size_t i = 0; i < timestamps.size(); ++i) {
        while (w < norm.windows.size() && norm.windows[w].second < timestamps[i]) ++w;
        if (w == norm.windows.size()) break;
        out[i] = !(timestamps[i] < norm.windows[w].first);
    }
    return out;
}

MetricsReport metrics_from_counts(const ConfusionCounts& counts) {
    MetricsReport m;
    m.counts = counts;
    const double tp = static_cast<double>(counts.tp);
    if (counts.tp + counts.fp > 0) m.precision = tp / static_cast<double>(counts.tp + counts.fp);
    if (counts.tp + counts.fn > 0) m.recall = tp / static_cast<double>(counts.tp + counts.fn);
    if (m.precision + m.recall > 0.0) {
        m.f_measure = 2.0 * m.precision * m.recall / (m.precision + m.recall);
    }
    return m;
}

MetricsReport score(const std::vector<bool>& flags, const std::vector<bool>& truth, std::size_t skip) {
    if (flags.size() != truth.size()) {
        throw std::invalid_argument("flag and truth sequences differ in length (" + std::to_string(flags.size()) +
                                    " vs " + std::to_string(truth.size()) + ")");
    }
    ConfusionCounts c;
    for (std::size_t i = skip; i < flags.size(); ++i) {
        if (flags[i]) {
            truth[i] ? ++c.tp : ++c.fp;
        } else {
            truth[i] ? ++c.fn : ++c.tn;
        }
    }
    return metrics_from_counts(c);
}

}  // namespace oesnn
