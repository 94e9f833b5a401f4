#include "oesnn/detector.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "oesnn/errors.hpp"

namespace oesnn {

namespace {

constexpr std::uint64_t kWarmupStream = 0x7761726d7570ULL;     // "warmup"
constexpr std::uint64_t kCandidateStream = 0x63616e646964ULL;  // "candid"

}  // namespace

void DetectorConfig::validate() const {
    std::vector<ConfigError::Issue> issues;
    if (window_size < 1) issues.push_back({"window_size", "must be >= 1"});
    if (ni_size < 3) issues.push_back({"ni_size", "must be >= 3"});
    if (no_size < 1) issues.push_back({"no_size", "must be >= 1"});
    if (!(ts > 0.0) || !std::isfinite(ts)) issues.push_back({"ts", "must be a finite value > 0"});
    if (!(mod > 0.0 && mod < 1.0)) issues.push_back({"mod", "must lie in (0, 1)"});
    if (!(c > 0.0 && c <= 1.0)) issues.push_back({"c", "must lie in (0, 1]"});
    if (!(sim > 0.0 && sim <= 1.0)) issues.push_back({"sim", "must lie in (0, 1]"});
    if (!(xi > 0.0 && xi <= 1.0)) issues.push_back({"xi", "must lie in (0, 1]"});
    if (!(epsilon >= 2.0) || !std::isfinite(epsilon)) issues.push_back({"epsilon", "must be a finite value >= 2"});
    if (!issues.empty()) throw ConfigError(std::move(issues));
}

void ErrorHistory::push(double e, bool u) noexcept {
    const std::size_t cap = buffer_.size();
    if (cap == 0) return;
    if (size_ < cap) {
        buffer_[(head_ + size_) % cap] = {e, u};
        ++size_;
    } else {
        buffer_[head_] = {e, u};
        head_ = (head_ + 1) % cap;
    }
}

const ErrorHistory::Entry& ErrorHistory::operator[](std::size_t i) const noexcept {
    return buffer_[(head_ + i) % buffer_.size()];
}

bool classify_anomaly(const ErrorHistory& history, double e_t, double epsilon,
                      SpreadStatistic spread, bool strict) {
    std::size_t n = 0;
    double sum = 0.0;
    for (std::size_t i = 0; i < history.size(); ++i) {
        const auto& entry = history[i];
        if (entry.u) continue;
        sum += entry.e;
        ++n;
    }
    if (n == 0) return false;
    const double mean = sum / static_cast<double>(n);
    double sq = 0.0;
    for (std::size_t i = 0; i < history.size(); ++i) {
        const auto& entry = history[i];
        if (entry.u) continue;
        const double d = entry.e - mean;
        sq += d * d;
    }
    const double variance = sq / static_cast<double>(n);
    const double s = spread == SpreadStatistic::variance ? variance : std::sqrt(variance);
    const double excess = e_t - mean;
    const double threshold = epsilon * s;
    return strict ? excess > threshold : excess >= threshold;
}

// The history keeps window_size - 1 entries: classification of x_t looks at
// indices t - (window_size - 1) .. t - 1.
Detector::Detector(const DetectorConfig& config)
    : config_((config.validate(), config)),
      window_(config.window_size),
      layer_(config.ni_size, config.ts),
      repository_(config.model()),
      history_(config.window_size - 1),
      warmup_rng_(Rng::substream(config.seed, kWarmupStream)),
      candidate_rng_(Rng::substream(config.seed, kCandidateStream)) {
    emitted_.reserve(config.window_size);
    candidate_.weights.reserve(config.ni_size);
}

std::span<const DetectionRecord> Detector::step(double x) {
    if (flushed_) throw std::logic_error("step() after flush()");
    if (!std::isfinite(x)) {
        throw InputError("non-finite input value at index " + std::to_string(consumed_));
    }
    emitted_.clear();
    if (consumed_ < config_.window_size) {
        window_.push(x);
        ++consumed_;
        if (consumed_ == config_.window_size) emit_warmup(consumed_);
    } else {
        process(x);
        ++consumed_;
    }
    return emitted_;
}

std::span<const DetectionRecord> Detector::flush() {
    emitted_.clear();
    if (!flushed_ && !warmed_up() && !window_.empty()) emit_warmup(window_.size());
    flushed_ = true;
    return emitted_;
}

void Detector::emit_warmup(std::size_t count) {
    const double mean = window_.mean();
    const double s = window_.spread(config_.spread);
    for (std::size_t l = 0; l < count; ++l) {
        DetectionRecord rec;
        rec.t = l;
        rec.x = window_[l];
        rec.y = warmup_rng_.normal(mean, s);
        rec.e = std::abs(rec.x - *rec.y);
        rec.u = false;
        history_.push(rec.e, rec.u);
        emitted_.push_back(rec);
    }
}

void Detector::process(double x) {
    window_.push(x);
    layer_.init(window_);
    layer_.encode(x);

    DetectionRecord rec;
    rec.t = consumed_;
    rec.x = x;
    const auto fired = repository_.fires_first(layer_.firing_sequence());
    if (!fired) {
        rec.e = std::numeric_limits<double>::infinity();
        rec.u = true;
    } else {
        rec.y = repository_[*fired].output_value;
        rec.e = std::abs(x - *rec.y);
        rec.u = classify_anomaly(history_, rec.e, config_.epsilon, config_.spread,
                                 config_.strict_threshold);
    }
    history_.push(rec.e, rec.u);
    emitted_.push_back(rec);

    candidate_draw_ = candidate_rng_.normal(window_.mean(), window_.spread(config_.spread));
    init_candidate(candidate_, layer_.orders(), config_.mod, candidate_draw_,
                   static_cast<double>(consumed_));
    if (!rec.u) {
        if (config_.correction == CorrectionTarget::candidate) {
            value_correction(candidate_, x, config_.xi);
        } else {
            value_correction(repository_.at(*fired), x, config_.xi);
        }
    }
    repository_.admit(candidate_);
}

std::vector<DetectionRecord> run(const DetectorConfig& config, std::span<const double> stream) {
    Detector detector(config);
    std::vector<DetectionRecord> out;
    out.reserve(stream.size());
    for (std::size_t i = 0; i < stream.size(); ++i) {
        std::span<const DetectionRecord> recs;
        try {
            recs = detector.step(stream[i]);
        } catch (const InputError&) {
            throw InputError("non-finite input value", i + 1);
        }
        out.insert(out.end(), recs.begin(), recs.end());
    }
    const auto rest = detector.flush();
    out.insert(out.end(), rest.begin(), rest.end());
    return out;
}

}  // namespace oesnn
