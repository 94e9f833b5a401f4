#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "oesnn/dataset.hpp"
#include "oesnn/detector.hpp"
#include "oesnn/grid.hpp"

namespace oesnn {

inline constexpr int kSchemaVersion = 1;

/// Effective detector configuration as a single-line JSON object.
std::string config_json(const DetectorConfig& config);

/// Per-file document: best cell, its metrics and the full grid.
std::string file_report_json(const GridResult& result, const GridSpec& grid);

struct CategorySummary {
    std::string category;
    std::size_t files = 0;
    double mean_precision = 0.0;
    double mean_recall = 0.0;
    double mean_f_measure = 0.0;
};

/// Unweighted per-category means of the best cells, sorted by category.
/// Categories without a single evaluable file are left out and reported in
/// `warnings`.
std::vector<CategorySummary> summarize_categories(std::span<const GridResult> results,
                                                  std::vector<std::string>* warnings = nullptr);

std::string category_csv(std::span<const CategorySummary> summaries);

/// One JSON line per record of the best run, with its timestamp and label.
std::string points_jsonl(const Series& series, std::span<const DetectionRecord> records,
                         const std::vector<bool>& truth);

/// Writes `content` to `path`, creating parent directories. Throws InputError
/// when the file cannot be written.
void write_text(const std::filesystem::path& path, const std::string& content);

}  // namespace oesnn
