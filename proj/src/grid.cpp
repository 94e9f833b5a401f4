#include "oesnn/grid.hpp"

#include <bit>
#include <exception>
#include <omp.h>

#include "oesnn/errors.hpp"
#include "oesnn/rng.hpp"

namespace oesnn {

namespace {

template <typename T>
bool strictly_ascending(const std::vector<T>& v) {
    for (std::size_t i = 1; i < v.size(); ++i) {
        if (!(v[i - 1] < v[i])) return false;
    }
    return true;
}

std::vector<bool> flags_of(const std::vector<DetectionRecord>& records) {
    std::vector<bool> flags(records.size());
    for (std::size_t i = 0; i < records.size(); ++i) flags[i] = records[i].u;
    return flags;
}

GridResult empty_result(const Series& series, const GridSpec& grid) {
    GridResult result;
    result.key = series.key;
    result.category = series.category;
    result.cells.reserve(grid.cell_count());
    for (std::size_t w : grid.window_sizes) {
        for (double eps : grid.epsilons) {
            GridCell cell;
            cell.window_size = w;
            cell.epsilon = eps;
            cell.seed = cell_seed(grid.fixed.seed, series.key, w, eps);
            cell.evaluable = w < series.values.size();
            result.cells.push_back(cell);
        }
    }
    return result;
}

void evaluate_cell(const Series& series, const std::vector<bool>& truth, const GridSpec& grid,
                   const EvaluationOptions& options, GridCell& cell) {
    if (!cell.evaluable) return;
    cell.metrics = evaluate(series, truth, cell_config(grid, series.key, cell.window_size, cell.epsilon), options);
}

}  // namespace

GridSpec GridSpec::nab(const DetectorConfig& fixed) {
    GridSpec g;
    for (std::size_t w = 100; w <= 600; w += 100) g.window_sizes.push_back(w);
    for (int e = 2; e <= 7; ++e) g.epsilons.push_back(e);
    g.fixed = fixed;
    return g;
}

GridSpec GridSpec::yahoo(const DetectorConfig& fixed) {
    GridSpec g;
    for (std::size_t w = 20; w <= 500; w += 20) g.window_sizes.push_back(w);
    for (int e = 2; e <= 17; ++e) g.epsilons.push_back(e);
    g.fixed = fixed;
    return g;
}

void GridSpec::validate() const {
    std::vector<ConfigError::Issue> issues;
    if (window_sizes.empty()) issues.push_back({"window_sizes", "must not be empty"});
    if (epsilons.empty()) issues.push_back({"epsilons", "must not be empty"});
    if (!strictly_ascending(window_sizes)) issues.push_back({"window_sizes", "must be strictly ascending"});
    if (!strictly_ascending(epsilons)) issues.push_back({"epsilons", "must be strictly ascending"});
    if (!window_sizes.empty() && window_sizes.front() < 1) issues.push_back({"window_sizes", "must be >= 1"});
    if (!epsilons.empty() && !(epsilons.front() >= 2.0)) issues.push_back({"epsilons", "must be >= 2"});
    if (!issues.empty()) throw ConfigError(std::move(issues));
    DetectorConfig probe = fixed;
    probe.window_size = window_sizes.front();
    probe.epsilon = epsilons.front();
    probe.validate();
}

std::uint64_t cell_seed(std::uint64_t global_seed, std::string_view series_key, std::size_t window_size,
                        double epsilon) noexcept {
    std::uint64_t h = mix64(global_seed);
    h = mix64(h ^ fnv1a64(series_key));
    h = mix64(h ^ static_cast<std::uint64_t>(window_size));
    return mix64(h ^ std::bit_cast<std::uint64_t>(epsilon));
}

DetectorConfig cell_config(const GridSpec& grid, std::string_view series_key, std::size_t window_size,
                           double epsilon) {
    DetectorConfig config = grid.fixed;
    config.window_size = window_size;
    config.epsilon = epsilon;
    config.seed = cell_seed(grid.fixed.seed, series_key, window_size, epsilon);
    return config;
}

std::optional<std::size_t> select_best(std::span<const GridCell> cells) {
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const GridCell& c = cells[i];
        if (!c.evaluable) continue;
        if (!best) {
            best = i;
            continue;
        }
        const GridCell& b = cells[*best];
        const bool better = c.metrics.f_measure > b.metrics.f_measure ||
                            (c.metrics.f_measure == b.metrics.f_measure &&
                             (c.window_size < b.window_size ||
                              (c.window_size == b.window_size && c.epsilon < b.epsilon)));
        if (better) best = i;
    }
    return best;
}

MetricsReport evaluate(const Series& series, const std::vector<bool>& truth, const DetectorConfig& config,
                       const EvaluationOptions& options) {
    const auto records = run(config, series.values);
    return score(flags_of(records), truth, options.exclude_warmup ? config.window_size : 0);
}

GridResult grid_search_serial(const Series& series, const GridSpec& grid, const EvaluationOptions& options) {
    grid.validate();
    const auto truth = expand_labels(series.labels, series.timestamps);
    GridResult result = empty_result(series, grid);
    for (auto& cell : result.cells) evaluate_cell(series, truth, grid, options, cell);
    result.best = select_best(result.cells);
    return result;
}

GridResult grid_search(const Series& series, const GridSpec& grid, int jobs, const EvaluationOptions& options) {
    auto results = grid_search_corpus(std::span<const Series>(&series, 1), grid, jobs, options);
    return std::move(results.front());
}

std::vector<GridResult> grid_search_corpus(std::span<const Series> corpus, const GridSpec& grid, int jobs,
                                           const EvaluationOptions& options) {
    grid.validate();
    std::vector<std::vector<bool>> truths;
    std::vector<GridResult> results;
    truths.reserve(corpus.size());
    results.reserve(corpus.size());
    for (const auto& series : corpus) {
        truths.push_back(expand_labels(series.labels, series.timestamps));
        results.push_back(empty_result(series, grid));
    }

    const std::size_t per_series = grid.cell_count();
    const auto total = static_cast<std::int64_t>(corpus.size() * per_series);
    const int threads = jobs > 0 ? jobs : omp_get_max_threads();

    // Each iteration writes only its own cell, so the merged result does not
    // depend on scheduling.
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(total));
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (std::int64_t k = 0; k < total; ++k) {
        const auto s = static_cast<std::size_t>(k) / per_series;
        const auto c = static_cast<std::size_t>(k) % per_series;
        try {
            evaluate_cell(corpus[s], truths[s], grid, options, results[s].cells[c]);
        } catch (...) {
            errors[static_cast<std::size_t>(k)] = std::current_exception();
        }
    }
    for (const auto& err : errors) {
        if (err) std::rethrow_exception(err);
    }

    for (auto& r : results) r.best = select_best(r.cells);
    return results;
}

GridResult grid_search(const DatasetSpec& spec, const GridSpec& grid, int jobs, const EvaluationOptions& options) {
    return grid_search(load_series(spec), grid, jobs, options);
}

std::vector<DetectionRecord> best_run(const Series& series, const GridSpec& grid, const GridResult& result) {
    const GridCell* cell = result.best_cell();
    if (cell == nullptr) return {};
    return run(cell_config(grid, series.key, cell->window_size, cell->epsilon), series.values);
}

}  // namespace oesnn
