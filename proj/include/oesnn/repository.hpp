#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace oesnn {

class Rng;
class SlidingWindow;
enum class SpreadStatistic;

struct NeuronModelParams {
    double mod = 0.6;   // modulation factor, (0, 1)
    double c = 0.6;     // firing threshold fraction, (0, 1]
    double sim = 0.17;  // merge distance, (0, 1]
    std::size_t ni_size = 10;
    std::size_t no_size = 50;

    /// Throws ConfigError listing every out-of-range field.
    void validate() const;
};

/// Sum of weights shared by every candidate and merged neuron:
/// (1 - mod^ni) / (1 - mod).
double weight_sum_closed_form(double mod, std::size_t ni_size);
/// Maximal post-synaptic potential: (1 - mod^(2 ni)) / (1 - mod^2).
double psp_max_closed_form(double mod, std::size_t ni_size);
/// Firing threshold common to all output neurons: c * psp_max.
double gamma_closed_form(double mod, double c, std::size_t ni_size);
double gamma_closed_form(const NeuronModelParams& params);

struct OutputNeuron {
    std::vector<double> weights;  // one per input neuron
    double output_value = 0.0;
    double tau = 0.0;             // creation time, averaged on merge
    std::size_t merges = 1;
};

/// Weights mod^order(j), output value as given, merge counter 1.
void init_candidate(OutputNeuron& into, std::span<const std::size_t> orders, double mod,
                    double output_value, double t);

/// Candidate whose output value is drawn from Normal(window mean, s^2), with
/// s the window statistic selected by `spread`.
OutputNeuron init_candidate(std::span<const std::size_t> orders, double mod,
                            const SlidingWindow& window, SpreadStatistic spread, double t,
                            Rng& rng);

/// M-weighted average of target and a fresh candidate; target.merges grows by one.
void merge_into(OutputNeuron& target, const OutputNeuron& cand);

/// Moves `value` towards `x` by the fraction `xi`.
double value_correction(double value, double x, double xi) noexcept;
void value_correction(OutputNeuron& neuron, double x, double xi) noexcept;

double weight_distance(std::span<const double> a, std::span<const double> b) noexcept;

/// Bounded repository of output neurons.
///
/// Ties everywhere (strongest firing neuron, nearest neuron, oldest neuron)
/// resolve to the lowest repository index.
class Repository {
public:
    struct Match {
        std::size_t index;
        double distance;
    };

    enum class Placement { merged, appended, replaced };

    struct Admission {
        Placement placement;
        std::size_t index;
    };

    explicit Repository(const NeuronModelParams& params);

    const NeuronModelParams& params() const noexcept { return params_; }
    double gamma() const noexcept { return gamma_; }
    /// mod^k for k = 0 .. ni_size - 1.
    std::span<const double> mod_powers() const noexcept { return powers_; }

    std::size_t size() const noexcept { return neurons_.size(); }
    bool empty() const noexcept { return neurons_.empty(); }
    const OutputNeuron& operator[](std::size_t i) const { return neurons_[i]; }
    OutputNeuron& at(std::size_t i) { return neurons_.at(i); }

    /// Propagates one encoded value through the repository in firing sequence
    /// and returns the index of the first neuron whose partial potential
    /// exceeds gamma (the largest such potential at the earliest input step).
    /// `sequence` lists input neuron ids by increasing order.
    std::optional<std::size_t> fires_first(std::span<const std::size_t> sequence);

    /// Input step (0-based) at which the last fires_first call stopped;
    /// ni_size when nothing fired.
    std::size_t last_fire_step() const noexcept { return last_fire_step_; }

    /// Nearest neuron by Euclidean weight distance; nullopt on an empty repository.
    std::optional<Match> find_most_similar(const OutputNeuron& cand) const;

    /// Merge into `match` if within sim, else append while below capacity,
    /// else overwrite the neuron with the smallest tau.
    Admission insert_or_replace(const OutputNeuron& cand, const std::optional<Match>& match);
    Admission admit(const OutputNeuron& cand) { return insert_or_replace(cand, find_most_similar(cand)); }

private:
    NeuronModelParams params_;
    double gamma_;
    std::vector<double> powers_;
    std::vector<OutputNeuron> neurons_;
    std::vector<double> psp_;
    std::size_t last_fire_step_ = 0;
};

}  // namespace oesnn
