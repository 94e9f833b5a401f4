#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "oesnn/grf_layer.hpp"
#include "oesnn/repository.hpp"
#include "oesnn/rng.hpp"
#include "oesnn/sliding_window.hpp"

namespace oesnn {

/// Which neuron the post-classification value correction is applied to.
enum class CorrectionTarget {
    candidate,      // the fresh candidate, before it is merged or stored
    firing_neuron,  // the repository neuron that produced the prediction
};

struct DetectorConfig {
    std::size_t window_size = 100;
    std::size_t ni_size = 10;
    std::size_t no_size = 50;
    double ts = 1000.0;
    double mod = 0.6;
    double c = 0.6;
    double sim = 0.17;
    double xi = 0.9;
    double epsilon = 2.0;
    std::uint64_t seed = 1;

    SpreadStatistic spread = SpreadStatistic::std_dev;
    /// Use `>` instead of `>=` in the anomaly threshold test.
    bool strict_threshold = false;
    CorrectionTarget correction = CorrectionTarget::candidate;

    /// Throws ConfigError listing every out-of-range field.
    void validate() const;
    NeuronModelParams model() const { return {mod, c, sim, ni_size, no_size}; }
};

struct DetectionRecord {
    std::size_t t = 0;
    double x = 0.0;
    std::optional<double> y;  // empty when no output neuron fired
    double e = 0.0;           // +inf when y is empty
    bool u = false;

    friend bool operator==(const DetectionRecord&, const DetectionRecord&) = default;
};

/// Ring of the most recent (error, anomaly flag) pairs.
class ErrorHistory {
public:
    struct Entry {
        double e;
        bool u;
    };

    explicit ErrorHistory(std::size_t capacity) : buffer_(capacity) {}

    void push(double e, bool u) noexcept;
    std::size_t size() const noexcept { return size_; }
    std::size_t capacity() const noexcept { return buffer_.size(); }
    /// i = 0 is the oldest entry.
    const Entry& operator[](std::size_t i) const noexcept;

private:
    std::vector<Entry> buffer_;
    std::size_t head_ = 0;
    std::size_t size_ = 0;
};

/// Flags `e_t` as anomalous when it exceeds the mean of the non-anomalous
/// history errors by at least epsilon times their spread (population standard
/// deviation or variance). An empty non-anomalous history yields false.
bool classify_anomaly(const ErrorHistory& history, double e_t, double epsilon,
                      SpreadStatistic spread = SpreadStatistic::std_dev, bool strict = false);

/// Online anomaly detector over one univariate stream.
///
/// The first window_size values only fill the window. Their records are
/// emitted together by the step that completes the window, with predictions
/// drawn from Normal(window mean, s^2) over the full initial window. After
/// that every step emits exactly one record. A stream that ends during
/// warm-up must call flush() to receive its records.
class Detector {
public:
    explicit Detector(const DetectorConfig& config);

    /// Consumes one value and returns the records it completes. The span is
    /// valid until the next call. Throws InputError on a non-finite value
    /// without modifying any state.
    std::span<const DetectionRecord> step(double x);
    /// Emits the pending warm-up records of a stream shorter than the window.
    std::span<const DetectionRecord> flush();

    const DetectorConfig& config() const noexcept { return config_; }
    double gamma() const noexcept { return repository_.gamma(); }
    bool warmed_up() const noexcept { return consumed_ >= config_.window_size; }
    std::size_t consumed() const noexcept { return consumed_; }

    const SlidingWindow& window() const noexcept { return window_; }
    const GrfLayer& layer() const noexcept { return layer_; }
    const Repository& repository() const noexcept { return repository_; }
    const ErrorHistory& history() const noexcept { return history_; }
    /// Candidate built by the last post-warm-up step, after any correction.
    const OutputNeuron& last_candidate() const noexcept { return candidate_; }
    /// Output value the last candidate was drawn with, before correction.
    double last_candidate_draw() const noexcept { return candidate_draw_; }

private:
    void emit_warmup(std::size_t count);
    void process(double x);

    DetectorConfig config_;
    SlidingWindow window_;
    GrfLayer layer_;
    Repository repository_;
    ErrorHistory history_;
    Rng warmup_rng_;
    Rng candidate_rng_;
    OutputNeuron candidate_;
    double candidate_draw_ = 0.0;
    std::vector<DetectionRecord> emitted_;
    std::size_t consumed_ = 0;
    bool flushed_ = false;
};

/// Runs a fresh detector over the whole stream; one record per value.
std::vector<DetectionRecord> run(const DetectorConfig& config, std::span<const double> stream);

}  // namespace oesnn
