#include "oesnn/repository.hpp"

#include <cassert>
#include <cmath>
#include <limits>

#include "oesnn/errors.hpp"
#include "oesnn/rng.hpp"
#include "oesnn/sliding_window.hpp"

namespace oesnn {

void NeuronModelParams::validate() const {
    std::vector<ConfigError::Issue> issues;
    if (!(mod > 0.0 && mod < 1.0)) issues.push_back({"mod", "must lie in (0, 1)"});
    if (!(c > 0.0 && c <= 1.0)) issues.push_back({"c", "must lie in (0, 1]"});
    if (!(sim > 0.0 && sim <= 1.0)) issues.push_back({"sim", "must lie in (0, 1]"});
    if (ni_size < 3) issues.push_back({"ni_size", "must be >= 3"});
    if (no_size < 1) issues.push_back({"no_size", "must be >= 1"});
    if (!issues.empty()) throw ConfigError(std::move(issues));
}

double weight_sum_closed_form(double mod, std::size_t ni_size) {
    return (1.0 - std::pow(mod, static_cast<double>(ni_size))) / (1.0 - mod);
}

double psp_max_closed_form(double mod, std::size_t ni_size) {
    return (1.0 - std::pow(mod, 2.0 * static_cast<double>(ni_size))) / (1.0 - mod * mod);
}

double gamma_closed_form(double mod, double c, std::size_t ni_size) {
    return c * psp_max_closed_form(mod, ni_size);
}

double gamma_closed_form(const NeuronModelParams& params) {
    return gamma_closed_form(params.mod, params.c, params.ni_size);
}

void init_candidate(OutputNeuron& into, std::span<const std::size_t> orders, double mod,
                    double output_value, double t) {
    into.weights.resize(orders.size());
    for (std::size_t j = 0; j < orders.size(); ++j) {
        into.weights[j] = std::pow(mod, static_cast<double>(orders[j]));
    }
    into.output_value = output_value;
    into.tau = t;
    into.merges = 1;
}

OutputNeuron init_candidate(std::span<const std::size_t> orders, double mod,
                            const SlidingWindow& window, SpreadStatistic spread, double t,
                            Rng& rng) {
    OutputNeuron n;
    init_candidate(n, orders, mod, rng.normal(window.mean(), window.spread(spread)), t);
    return n;
}

void merge_into(OutputNeuron& target, const OutputNeuron& cand) {
    assert(cand.merges == 1);
    assert(target.weights.size() == cand.weights.size());
    const double m = static_cast<double>(target.merges);
    const double denom = m + 1.0;
    for (std::size_t j = 0; j < target.weights.size(); ++j) {
        target.weights[j] = (cand.weights[j] + m * target.weights[j]) / denom;
    }
    target.output_value = (cand.output_value + m * target.output_value) / denom;
    target.tau = (cand.tau + m * target.tau) / denom;
    ++target.merges;
}

double value_correction(double value, double x, double xi) noexcept {
    return value + (x - value) * xi;
}

void value_correction(OutputNeuron& neuron, double x, double xi) noexcept {
    neuron.output_value = value_correction(neuron.output_value, x, xi);
}

double weight_distance(std::span<const double> a, std::span<const double> b) noexcept {
    double acc = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        const double d = a[j] - b[j];
        acc += d * d;
    }
    return std::sqrt(acc);
}

Repository::Repository(const NeuronModelParams& params) : params_(params) {
    params_.validate();
    gamma_ = gamma_closed_form(params_);
    powers_.resize(params_.ni_size);
    for (std::size_t k = 0; k < params_.ni_size; ++k) {
        powers_[k] = std::pow(params_.mod, static_cast<double>(k));
    }
    neurons_.reserve(params_.no_size);
    psp_.assign(params_.no_size, 0.0);
}

std::optional<std::size_t> Repository::fires_first(std::span<const std::size_t> sequence) {
    const std::size_t count = neurons_.size();
    std::fill_n(psp_.begin(), count, 0.0);
    for (std::size_t step = 0; step < sequence.size(); ++step) {
        const std::size_t input = sequence[step];
        const double factor = powers_[step];
        bool any = false;
        for (std::size_t i = 0; i < count; ++i) {
            psp_[i] += neurons_[i].weights[input] * factor;
            any = any || psp_[i] > gamma_;
        }
        if (any) {
            last_fire_step_ = step;
            std::size_t best = count;
            for (std::size_t i = 0; i < count; ++i) {
                if (psp_[i] > gamma_ && (best == count || psp_[i] > psp_[best])) best = i;
            }
            return best;
        }
    }
    last_fire_step_ = sequence.size();
    return std::nullopt;
}

std::optional<Repository::Match> Repository::find_most_similar(const OutputNeuron& cand) const {
    if (neurons_.empty()) return std::nullopt;
    Match best{0, std::numeric_limits<double>::infinity()};
    for (std::size_t i = 0; i < neurons_.size(); ++i) {
        const double d = weight_distance(cand.weights, neurons_[i].weights);
        if (d < best.distance) best = {i, d};
    }
    return best;
}

Repository::Admission Repository::insert_or_replace(const OutputNeuron& cand,
                                                    const std::optional<Match>& match) {
    if (match && match->distance <= params_.sim) {
        merge_into(neurons_[match->index], cand);
        return {Placement::merged, match->index};
    }
    if (neurons_.size() < params_.no_size) {
        neurons_.push_back(cand);
        return {Placement::appended, neurons_.size() - 1};
    }
    std::size_t oldest = 0;
    for (std::size_t i = 1; i < neurons_.size(); ++i) {
        if (neurons_[i].tau < neurons_[oldest].tau) oldest = i;
    }
    neurons_[oldest] = cand;
    return {Placement::replaced, oldest};
}

}  // namespace oesnn
