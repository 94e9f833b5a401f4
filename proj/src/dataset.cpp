#include "oesnn/dataset.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

#include <json.hpp>

#include "csv.hpp"
#include "oesnn/errors.hpp"

namespace oesnn {

namespace {

bool parse_double(std::string_view s, double& out) {
    s = detail::trim(s);
    if (s.empty()) return false;
    if (s.front() == '+') s.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size() && std::isfinite(out);
}

std::size_t column_index(const std::vector<std::string>& header, const std::string& name) {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) return i;
    }
    return header.size();
}

bool has_columns(const std::vector<std::string>& header, const ColumnMap& cols, bool need_label) {
    return column_index(header, cols.timestamp) < header.size() &&
           column_index(header, cols.value) < header.size() &&
           (!need_label || column_index(header, cols.label) < header.size());
}

std::string describe(const std::filesystem::path& p) { return p.string(); }

}  // namespace

void DatasetSpec::validate() const {
    std::vector<ConfigError::Issue> issues;
    if (data_path.empty()) issues.push_back({"data_path", "must be set"});
    if (format == DatasetFormat::nab && !labels_path && !no_labels) {
        issues.push_back({"labels_path", "nab datasets need a windows document or an explicit no-labels marker"});
    }
    if (format == DatasetFormat::yahoo && columns.label.empty()) {
        issues.push_back({"columns.label", "yahoo datasets need a label column"});
    }
    if (!issues.empty()) throw ConfigError(std::move(issues));
}

std::string series_key(const std::filesystem::path& data_path) {
    const auto parent = data_path.parent_path().filename().string();
    const auto name = data_path.filename().string();
    return parent.empty() ? name : parent + "/" + name;
}

NabWindows load_nab_windows(const std::filesystem::path& labels_path) {
    std::ifstream in(labels_path);
    if (!in) throw InputError("cannot open labels file " + describe(labels_path));
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw InputError("malformed labels file " + describe(labels_path) + ": " + e.what());
    }
    if (!doc.is_object()) throw InputError("labels file " + describe(labels_path) + " is not a JSON object");
    NabWindows out;
    for (const auto& [key, windows] : doc.items()) {
        auto& list = out[key];
        if (!windows.is_array()) throw InputError("labels for " + key + " are not a list");
        for (const auto& w : windows) {
            if (!w.is_array() || w.size() != 2 || !w[0].is_string() || !w[1].is_string()) {
                throw InputError("label window for " + key + " is not a [start, end] pair of strings");
            }
            list.emplace_back(Timestamp::parse(w[0].get<std::string>()), Timestamp::parse(w[1].get<std::string>()));
        }
    }
    return out;
}

Series load_series(const DatasetSpec& spec, const NabWindows* windows) {
    spec.validate();
    std::ifstream in(spec.data_path);
    if (!in) throw InputError("cannot open data file " + describe(spec.data_path));

    Series series;
    series.key = series_key(spec.data_path);
    series.category = spec.data_path.parent_path().filename().string();

    std::string line;
    std::size_t line_no = 0;
    std::vector<std::string> header;
    while (std::getline(in, line)) {
        ++line_no;
        if (!detail::trim(line).empty()) {
            header = detail::split_csv(line);
            break;
        }
    }
    if (header.empty()) throw InputError("data file " + describe(spec.data_path) + " has no header");

    const bool yahoo = spec.format == DatasetFormat::yahoo;
    ColumnMap cols = spec.columns;
    if (!has_columns(header, cols, yahoo) && yahoo && cols == ColumnMap::yahoo() &&
        has_columns(header, ColumnMap::yahoo_alternate(), true)) {
        cols = ColumnMap::yahoo_alternate();
    }
    if (!has_columns(header, cols, yahoo)) {
        throw InputError("data file " + describe(spec.data_path) + " lacks the expected columns (" + cols.timestamp +
                             ", " + cols.value + (yahoo ? ", " + cols.label : std::string()) + ")",
                         line_no);
    }
    const std::size_t ts_col = column_index(header, cols.timestamp);
    const std::size_t val_col = column_index(header, cols.value);
    const std::size_t lab_col = yahoo ? column_index(header, cols.label) : header.size();

    series.labels.kind = yahoo ? LabelSet::Kind::points : LabelSet::Kind::windows;
    std::optional<double> last;
    while (std::getline(in, line)) {
        ++line_no;
        if (detail::trim(line).empty()) continue;
        const auto fields = detail::split_csv(line);
        if (fields.size() != header.size()) {
            throw InputError("expected " + std::to_string(header.size()) + " fields, found " +
                                 std::to_string(fields.size()),
                             line_no);
        }
        double value = 0.0;
        if (!parse_double(fields[val_col], value)) {
            if (spec.missing == MissingPolicy::forward_fill && last) {
                value = *last;
            } else {
                throw InputError("missing or unparsable value '" + fields[val_col] + "'", line_no);
            }
        }
        last = value;
        series.timestamps.push_back(Timestamp::parse(fields[ts_col]));
        series.values.push_back(value);
        if (yahoo) {
            double flag = 0.0;
            if (!parse_double(fields[lab_col], flag)) {
                throw InputError("unparsable label '" + fields[lab_col] + "'", line_no);
            }
            if (flag != 0.0) series.labels.points.push_back(series.timestamps.back());
        }
    }

    if (!yahoo && !spec.no_labels) {
        NabWindows loaded;
        if (windows == nullptr) {
            loaded = load_nab_windows(*spec.labels_path);
            windows = &loaded;
        }
        auto it = windows->find(series.key);
        if (it == windows->end()) {
            const std::string full = spec.data_path.generic_string();
            for (auto cand = windows->begin(); cand != windows->end(); ++cand) {
                const std::string& k = cand->first;
                if (full == k || (full.size() > k.size() && full.ends_with(k) && full[full.size() - k.size() - 1] == '/')) {
                    it = cand;
                    break;
                }
            }
        }
        if (it == windows->end()) throw InputError("no label entry for " + series.key);
        series.labels.windows = it->second;
    }
    series.labels.normalize();
    return series;
}

}  // namespace oesnn
