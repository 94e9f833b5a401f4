#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "oesnn/evaluation.hpp"

namespace oesnn {

enum class DatasetFormat { nab, yahoo };
enum class MissingPolicy { error, forward_fill };

struct ColumnMap {
    std::string timestamp = "timestamp";
    std::string value = "value";
    std::string label = "is_anomaly";

    static ColumnMap yahoo() { return {}; }
    /// Column names used by the Yahoo A3/A4 files.
    static ColumnMap yahoo_alternate() { return {"timestamps", "value", "anomaly"}; }
    friend bool operator==(const ColumnMap&, const ColumnMap&) = default;
};

struct DatasetSpec {
    DatasetFormat format = DatasetFormat::nab;
    std::filesystem::path data_path;
    /// NAB windows document; required for nab unless no_labels is set.
    std::optional<std::filesystem::path> labels_path;
    bool no_labels = false;
    ColumnMap columns;
    MissingPolicy missing = MissingPolicy::error;

    /// Throws ConfigError when the label source is inconsistent with the format.
    void validate() const;
};

struct Series {
    std::string key;       // "<category>/<file name>"
    std::string category;  // parent directory name
    std::vector<Timestamp> timestamps;
    std::vector<double> values;
    LabelSet labels;
};

/// "<parent dir>/<file name>" of a data file.
std::string series_key(const std::filesystem::path& data_path);

using NabWindows = std::map<std::string, std::vector<std::pair<Timestamp, Timestamp>>>;

/// Parses the NAB combined-windows document (file key -> [[start, end], ...]).
NabWindows load_nab_windows(const std::filesystem::path& labels_path);

/// Reads one data file with its labels. Errors (missing file, malformed row,
/// unknown label key) are reported as InputError; row errors carry the 1-based
/// file line. `windows` overrides reading spec.labels_path.
Series load_series(const DatasetSpec& spec, const NabWindows* windows = nullptr);

}  // namespace oesnn
