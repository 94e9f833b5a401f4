// Command-line front end: streaming detection, per-file grid search and
// whole-corpus benchmarking.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "oesnn/dataset.hpp"
#include "oesnn/detector.hpp"
#include "oesnn/errors.hpp"
#include "oesnn/evaluation.hpp"
#include "oesnn/grid.hpp"
#include "oesnn/record_format.hpp"
#include "oesnn/report.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitData = 3;
constexpr const char* kVersion = "1.0.0";

struct ConfigFlags {
    oesnn::DetectorConfig config;
    std::string spread = "std";
    std::string correction = "candidate";

    void apply() {
        config.spread = spread == "variance" ? oesnn::SpreadStatistic::variance : oesnn::SpreadStatistic::std_dev;
        config.correction =
            correction == "firing" ? oesnn::CorrectionTarget::firing_neuron : oesnn::CorrectionTarget::candidate;
    }
};

void add_config_flags(CLI::App* app, ConfigFlags& flags, bool grid_axes) {
    auto& c = flags.config;
    if (grid_axes) {
        app->add_option("--window-size", c.window_size, "Sliding window size, >= 1")->capture_default_str();
        app->add_option("--epsilon", c.epsilon, "Anomaly classification factor, >= 2")->capture_default_str();
    }
    app->add_option("--ni-size", c.ni_size, "Input neurons, >= 3")->capture_default_str();
    app->add_option("--no-size", c.no_size, "Output repository capacity, >= 1")->capture_default_str();
    app->add_option("--ts", c.ts, "Synchronisation time of input firings, > 0")->capture_default_str();
    app->add_option("--mod", c.mod, "Modulation factor, in (0, 1)")->capture_default_str();
    app->add_option("--c", c.c, "Firing threshold fraction, in (0, 1]")->capture_default_str();
    app->add_option("--sim", c.sim, "Merge distance, in (0, 1]")->capture_default_str();
    app->add_option("--xi", c.xi, "Value correction factor, in (0, 1]")->capture_default_str();
    app->add_option("--seed", c.seed, "Random seed (64-bit unsigned)")->capture_default_str();
    app->add_option("--spread", flags.spread, "Spread statistic for draws and threshold: std | variance")
        ->check(CLI::IsMember({"std", "variance"}))
        ->capture_default_str();
    app->add_flag("--strict-threshold", c.strict_threshold, "Flag only when the excess error is strictly above the threshold");
    app->add_option("--correction", flags.correction, "Value correction target: candidate | firing")
        ->check(CLI::IsMember({"candidate", "firing"}))
        ->capture_default_str();
}

struct DatasetFlags {
    std::string format = "nab";
    std::string labels;
    bool no_labels = false;
    std::string timestamp_column;
    std::string value_column;
    std::string label_column;
    std::string missing = "error";
    std::string preset;
    std::vector<std::size_t> window_sizes;
    std::vector<double> epsilons;
    int jobs = 0;
    bool exclude_warmup = false;
};

void add_dataset_flags(CLI::App* app, DatasetFlags& d) {
    app->add_option("--format", d.format, "Dataset format: nab | yahoo")
        ->check(CLI::IsMember({"nab", "yahoo"}))
        ->capture_default_str();
    app->add_option("--labels", d.labels, "NAB combined-windows JSON document");
    app->add_flag("--no-labels", d.no_labels, "Treat every record as normal (nab only)");
    app->add_option("--timestamp-column", d.timestamp_column, "Timestamp column name");
    app->add_option("--value-column", d.value_column, "Value column name");
    app->add_option("--label-column", d.label_column, "Label column name (yahoo)");
    app->add_option("--missing", d.missing, "Missing value policy: error | ffill")
        ->check(CLI::IsMember({"error", "ffill"}))
        ->capture_default_str();
    app->add_option("--grid-preset", d.preset, "Grid preset: nab | yahoo (default: the dataset format)")
        ->check(CLI::IsMember({"nab", "yahoo"}));
    app->add_option("--window-sizes", d.window_sizes, "Window sizes, overriding the preset")->delimiter(',');
    app->add_option("--epsilons", d.epsilons, "Epsilon values, overriding the preset")->delimiter(',');
    app->add_option("--jobs", d.jobs, "Worker threads (0 = all cores)")->capture_default_str();
    app->add_flag("--exclude-warmup", d.exclude_warmup, "Leave warm-up records out of the scores");
}

oesnn::GridSpec make_grid(const DatasetFlags& d, const oesnn::DetectorConfig& fixed) {
    const std::string preset = d.preset.empty() ? d.format : d.preset;
    oesnn::GridSpec grid = preset == "yahoo" ? oesnn::GridSpec::yahoo(fixed) : oesnn::GridSpec::nab(fixed);
    if (!d.window_sizes.empty()) grid.window_sizes = d.window_sizes;
    if (!d.epsilons.empty()) grid.epsilons = d.epsilons;
    grid.validate();
    return grid;
}

oesnn::DatasetSpec make_dataset(const DatasetFlags& d, const fs::path& data) {
    oesnn::DatasetSpec spec;
    spec.format = d.format == "yahoo" ? oesnn::DatasetFormat::yahoo : oesnn::DatasetFormat::nab;
    spec.data_path = data;
    if (!d.labels.empty()) spec.labels_path = d.labels;
    spec.no_labels = d.no_labels;
    if (!d.timestamp_column.empty()) spec.columns.timestamp = d.timestamp_column;
    if (!d.value_column.empty()) spec.columns.value = d.value_column;
    if (!d.label_column.empty()) spec.columns.label = d.label_column;
    spec.missing = d.missing == "ffill" ? oesnn::MissingPolicy::forward_fill : oesnn::MissingPolicy::error;
    return spec;
}

// Output sink: standard output for "-", else a file.
class Sink {
public:
    explicit Sink(const std::string& path) {
        if (path == "-") {
            file_ = stdout;
        } else {
            file_ = std::fopen(path.c_str(), "wb");
            owned_ = true;
            if (file_ == nullptr) throw oesnn::InputError("cannot open output " + path);
        }
    }
    ~Sink() {
        if (owned_ && file_ != nullptr) std::fclose(file_);
    }
    Sink(const Sink&) = delete;
    Sink& operator=(const Sink&) = delete;

    void write(const std::string& s) {
        if (std::fwrite(s.data(), 1, s.size(), file_) != s.size()) throw oesnn::InputError("write failed");
    }
    void flush() { std::fflush(file_); }

private:
    std::FILE* file_ = nullptr;
    bool owned_ = false;
};

struct DetectFlags {
    std::string input = "-";
    std::string output = "-";
    std::string format = "jsonl";
    std::string value_column = "value";
    bool buffered = false;
};

bool parse_value(const std::string& text, double& out) {
    const auto trimmed = CLI::detail::trim_copy(text);
    if (trimmed.empty()) return false;
    const char* first = trimmed.c_str();
    char* end = nullptr;
    out = std::strtod(first, &end);
    return end == first + trimmed.size();
}

int cmd_detect(const DetectFlags& f, ConfigFlags& cf) {
    cf.apply();
    cf.config.validate();
    oesnn::Detector detector(cf.config);

    std::ifstream file;
    std::istream* in = &std::cin;
    if (f.input != "-") {
        file.open(f.input);
        if (!file) throw oesnn::InputError("cannot open input " + f.input);
        in = &file;
    }
    Sink out(f.output);
    const bool csv = f.format == "csv";
    std::string buf = "# oesnn detect config: " + oesnn::config_json(cf.config) + "\n";
    if (csv) buf += std::string(oesnn::kRecordCsvHeader) + "\n";
    out.write(buf);
    out.flush();

    auto emit = [&](std::span<const oesnn::DetectionRecord> recs) {
        if (recs.empty()) return;
        buf.clear();
        for (const auto& r : recs) {
            if (csv) {
                oesnn::append_record_csv(buf, r);
            } else {
                oesnn::append_record_jsonl(buf, r);
            }
        }
        out.write(buf);
        if (!f.buffered) out.flush();
    };

    std::string line;
    std::size_t line_no = 0;
    std::optional<std::size_t> column;  // set when the input is a CSV with header
    std::size_t columns = 0;
    bool first = true;
    while (std::getline(*in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (CLI::detail::trim_copy(line).empty() || line.front() == '#') continue;
        double value = 0.0;
        if (first) {
            first = false;
            if (!parse_value(line, value)) {
                const auto header = CLI::detail::split(line, ',');
                for (std::size_t i = 0; i < header.size(); ++i) {
                    if (CLI::detail::trim_copy(header[i]) == f.value_column) column = i;
                }
                if (!column) {
                    throw oesnn::InputError("'" + line + "' is neither a value nor a header with column '" +
                                                f.value_column + "'",
                                            line_no);
                }
                columns = header.size();
                continue;
            }
        } else {
            std::string field = line;
            if (column) {
                const auto fields = CLI::detail::split(line, ',');
                if (fields.size() != columns) {
                    throw oesnn::InputError("expected " + std::to_string(columns) + " fields", line_no);
                }
                field = fields[*column];
            }
            if (!parse_value(field, value)) {
                throw oesnn::InputError("cannot parse value '" + field + "'", line_no);
            }
        }
        if (!std::isfinite(value)) throw oesnn::InputError("non-finite value", line_no);
        emit(detector.step(value));
    }
    emit(detector.flush());
    out.flush();
    return kExitOk;
}

struct GridFlags {
    std::string input;
    std::string output = "-";
    std::string points;
};

int cmd_grid(const GridFlags& g, DatasetFlags& d, ConfigFlags& cf) {
    cf.apply();
    const auto grid = make_grid(d, cf.config);
    const auto spec = make_dataset(d, g.input);
    spec.validate();
    const auto series = oesnn::load_series(spec);
    oesnn::EvaluationOptions options{d.exclude_warmup};
    std::cerr << "grid: " << series.key << ", " << series.values.size() << " values, " << grid.cell_count()
              << " cells\n";
    const auto result = oesnn::grid_search(series, grid, d.jobs, options);
    Sink out(g.output);
    out.write(oesnn::file_report_json(result, grid));
    out.flush();
    if (!g.points.empty()) {
        const auto truth = oesnn::expand_labels(series.labels, series.timestamps);
        oesnn::write_text(g.points, oesnn::points_jsonl(series, oesnn::best_run(series, grid, result), truth));
    }
    return kExitOk;
}

struct BenchFlags {
    std::string corpus;
    std::string out_dir;
};

int cmd_bench(BenchFlags& b, DatasetFlags& d, ConfigFlags& cf) {
    cf.apply();
    if (b.corpus.empty()) {
        if (const char* env = std::getenv("OESNN_CORPUS_ROOT")) b.corpus = env;
    }
    if (b.corpus.empty()) {
        throw oesnn::ConfigError(std::vector<oesnn::ConfigError::Issue>{
            {"corpus", "pass --corpus or set OESNN_CORPUS_ROOT"}});
    }
    const auto grid = make_grid(d, cf.config);
    const fs::path root(b.corpus);
    if (!fs::is_directory(root)) throw oesnn::InputError("corpus root " + root.string() + " is not a directory");
    if (d.format == "nab" && d.labels.empty() && !d.no_labels) {
        const auto guess = root.parent_path() / "labels" / "combined_windows.json";
        if (fs::exists(guess)) d.labels = guess.string();
    }

    std::vector<fs::path> files;
    for (const auto& entry : fs::recursive_directory_iterator(root)) {
        if (entry.is_regular_file() && entry.path().extension() == ".csv") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());

    std::optional<oesnn::NabWindows> windows;
    if (d.format == "nab" && !d.no_labels && !d.labels.empty()) windows = oesnn::load_nab_windows(d.labels);

    std::vector<oesnn::Series> corpus;
    nlohmann::ordered_json failed = nlohmann::ordered_json::array();
    for (const auto& path : files) {
        try {
            corpus.push_back(oesnn::load_series(make_dataset(d, path), windows ? &*windows : nullptr));
        } catch (const std::exception& e) {
            failed.push_back({{"file", path.string()}, {"error", e.what()}});
            std::cerr << "bench: skipping " << path.string() << ": " << e.what() << "\n";
        }
    }
    std::cerr << "bench: " << corpus.size() << " files, " << grid.cell_count() << " cells each\n";

    oesnn::EvaluationOptions options{d.exclude_warmup};
    std::vector<oesnn::GridResult> results;
    try {
        results = oesnn::grid_search_corpus(corpus, grid, d.jobs, options);
    } catch (const oesnn::InputError& e) {
        // Isolate the offending file(s) by running them one at a time.
        std::vector<oesnn::Series> ok;
        for (auto& s : corpus) {
            try {
                results.push_back(oesnn::grid_search(s, grid, d.jobs, options));
                ok.push_back(std::move(s));
            } catch (const std::exception& inner) {
                failed.push_back({{"file", s.key}, {"error", inner.what()}});
            }
        }
        corpus = std::move(ok);
    }

    const fs::path out_dir(b.out_dir);
    nlohmann::ordered_json done = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < results.size(); ++i) {
        const auto& series = corpus[i];
        oesnn::write_text(out_dir / "files" / (series.key + ".json"), oesnn::file_report_json(results[i], grid));
        const auto truth = oesnn::expand_labels(series.labels, series.timestamps);
        oesnn::write_text(out_dir / "points" / (series.key + ".jsonl"),
                          oesnn::points_jsonl(series, oesnn::best_run(series, grid, results[i]), truth));
        done.push_back(series.key);
    }
    std::vector<std::string> warnings;
    const auto summaries = oesnn::summarize_categories(results, &warnings);
    for (const auto& w : warnings) std::cerr << "bench: warning: " << w << "\n";
    const auto csv = oesnn::category_csv(summaries);
    oesnn::write_text(out_dir / "categories.csv", csv);
    nlohmann::ordered_json manifest;
    manifest["schema_version"] = oesnn::kSchemaVersion;
    manifest["evaluated"] = done;
    manifest["failed"] = failed;
    oesnn::write_text(out_dir / "manifest.json", manifest.dump(2) + "\n");
    std::cout << csv << std::flush;
    return failed.empty() ? kExitOk : kExitData;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Online spiking-network anomaly detector for univariate streams"};
    app.require_subcommand(1);

    DetectFlags detect_flags;
    ConfigFlags detect_config;
    auto* detect = app.add_subcommand("detect", "Stream values through the detector, one record per value");
    detect->add_option("--input", detect_flags.input, "CSV with a value column, or one value per line ('-' = stdin)")
        ->capture_default_str();
    detect->add_option("--output", detect_flags.output, "Destination ('-' = stdout)")->capture_default_str();
    detect->add_option("--format", detect_flags.format, "Record format: jsonl | csv")
        ->check(CLI::IsMember({"jsonl", "csv"}))
        ->capture_default_str();
    detect->add_option("--value-column", detect_flags.value_column, "Value column of CSV input")->capture_default_str();
    detect->add_flag("--buffered", detect_flags.buffered, "Flush output in blocks instead of per record");
    add_config_flags(detect, detect_config, true);

    GridFlags grid_flags;
    DatasetFlags grid_data;
    ConfigFlags grid_config;
    auto* grid = app.add_subcommand("grid", "Grid search over (window size, epsilon) for one data file");
    grid->add_option("--input", grid_flags.input, "Data file")->required();
    grid->add_option("--output", grid_flags.output, "Report destination ('-' = stdout)")->capture_default_str();
    grid->add_option("--points", grid_flags.points, "Write the best run as JSON lines to this file");
    add_dataset_flags(grid, grid_data);
    add_config_flags(grid, grid_config, false);

    BenchFlags bench_flags;
    DatasetFlags bench_data;
    ConfigFlags bench_config;
    auto* bench = app.add_subcommand("bench", "Grid search every data file of a corpus and aggregate per category");
    bench->add_option("--corpus", bench_flags.corpus, "Corpus root (default: $OESNN_CORPUS_ROOT)");
    bench->add_option("--out-dir", bench_flags.out_dir, "Directory for reports")->required();
    add_dataset_flags(bench, bench_data);
    add_config_flags(bench, bench_config, false);

    app.add_subcommand("version", "Print the version");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (*detect) return cmd_detect(detect_flags, detect_config);
        if (*grid) return cmd_grid(grid_flags, grid_data, grid_config);
        if (*bench) return cmd_bench(bench_flags, bench_data, bench_config);
        std::cout << "oesnn " << kVersion << "\n";
        return kExitOk;
    } catch (const oesnn::ConfigError& e) {
        std::cerr << "oesnn: " << e.what() << "\n";
        return kExitConfig;
    } catch (const oesnn::InputError& e) {
        std::cerr << "oesnn: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "oesnn: " << e.what() << "\n";
        return kExitData;
    }
}
