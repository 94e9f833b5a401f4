#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "oesnn/dataset.hpp"
#include "oesnn/detector.hpp"
#include "oesnn/evaluation.hpp"

namespace oesnn {

/// Cartesian grid over (window_size, epsilon); every other detector field is
/// taken from `fixed`.
struct GridSpec {
    std::vector<std::size_t> window_sizes;
    std::vector<double> epsilons;
    DetectorConfig fixed;

    /// window sizes 100..600 step 100, epsilon 2..7 step 1.
    static GridSpec nab(const DetectorConfig& fixed = {});
    /// window sizes 20..500 step 20, epsilon 2..17 step 1.
    static GridSpec yahoo(const DetectorConfig& fixed = {});

    std::size_t cell_count() const noexcept { return window_sizes.size() * epsilons.size(); }
    /// Throws ConfigError unless both lists are non-empty and strictly ascending
    /// and every cell yields a valid detector configuration.
    void validate() const;
};

struct EvaluationOptions {
    /// Leave the first window_size records out of the confusion counts.
    bool exclude_warmup = false;
};

struct GridCell {
    std::size_t window_size = 0;
    double epsilon = 0.0;
    std::uint64_t seed = 0;
    bool evaluable = false;  // false when window_size >= series length
    MetricsReport metrics;
};

struct GridResult {
    std::string key;
    std::string category;
    std::vector<GridCell> cells;  // window-major, both axes ascending
    std::optional<std::size_t> best;

    const GridCell* best_cell() const { return best ? &cells[*best] : nullptr; }
};

/// Seed of one grid cell, a function of the global seed, the series key and
/// the cell coordinates only.
std::uint64_t cell_seed(std::uint64_t global_seed, std::string_view series_key, std::size_t window_size,
                        double epsilon) noexcept;

/// Detector configuration for one cell of the grid.
DetectorConfig cell_config(const GridSpec& grid, std::string_view series_key, std::size_t window_size,
                           double epsilon);

/// Highest F-measure among evaluable cells; ties go to the smaller window
/// size, then the smaller epsilon.
std::optional<std::size_t> select_best(std::span<const GridCell> cells);

/// Runs one detector configuration over a series and scores it.
MetricsReport evaluate(const Series& series, const std::vector<bool>& truth, const DetectorConfig& config,
                       const EvaluationOptions& options = {});

/// Serial reference: cells evaluated one after another in grid order.
GridResult grid_search_serial(const Series& series, const GridSpec& grid, const EvaluationOptions& options = {});

/// OpenMP kernel over the cells of one series. Output is identical to
/// grid_search_serial for any `jobs`.
GridResult grid_search(const Series& series, const GridSpec& grid, int jobs,
                       const EvaluationOptions& options = {});

/// Flattens (series, cell) pairs of a whole corpus into one parallel loop.
std::vector<GridResult> grid_search_corpus(std::span<const Series> corpus, const GridSpec& grid, int jobs,
                                           const EvaluationOptions& options = {});

/// Loads the series and runs grid_search.
GridResult grid_search(const DatasetSpec& spec, const GridSpec& grid, int jobs,
                       const EvaluationOptions& options = {});

/// Detection records of the selected cell, for plotting.
std::vector<DetectionRecord> best_run(const Series& series, const GridSpec& grid, const GridResult& result);

}  // namespace oesnn
