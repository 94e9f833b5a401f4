#include "oesnn/report.hpp"

#include <fstream>
#include <map>

#include <json.hpp>

#include "oesnn/errors.hpp"
#include "oesnn/record_format.hpp"

namespace oesnn {

namespace {

using Json = nlohmann::ordered_json;

const char* spread_name(SpreadStatistic s) { return s == SpreadStatistic::variance ? "variance" : "std"; }

const char* correction_name(CorrectionTarget c) {
    return c == CorrectionTarget::firing_neuron ? "firing" : "candidate";
}

Json config_object(const DetectorConfig& c) {
    Json j;
    j["window_size"] = c.window_size;
    j["ni_size"] = c.ni_size;
    j["no_size"] = c.no_size;
    j["ts"] = c.ts;
    j["mod"] = c.mod;
    j["c"] = c.c;
    j["sim"] = c.sim;
    j["xi"] = c.xi;
    j["epsilon"] = c.epsilon;
    j["seed"] = c.seed;
    j["spread"] = spread_name(c.spread);
    j["strict_threshold"] = c.strict_threshold;
    j["correction"] = correction_name(c.correction);
    return j;
}

Json metrics_object(const MetricsReport& m) {
    Json j;
    j["precision"] = m.precision;
    j["recall"] = m.recall;
    j["f_measure"] = m.f_measure;
    j["tp"] = m.counts.tp;
    j["fp"] = m.counts.fp;
    j["fn"] = m.counts.fn;
    j["tn"] = m.counts.tn;
    return j;
}

Json cell_object(const GridCell& cell) {
    Json j;
    j["window_size"] = cell.window_size;
    j["epsilon"] = cell.epsilon;
    j["seed"] = cell.seed;
    j["evaluable"] = cell.evaluable;
    if (cell.evaluable) j["metrics"] = metrics_object(cell.metrics);
    return j;
}

}  // namespace

std::string config_json(const DetectorConfig& config) { return config_object(config).dump(); }

std::string file_report_json(const GridResult& result, const GridSpec& grid) {
    Json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["file"] = result.key;
    doc["category"] = result.category;
    Json fixed = config_object(grid.fixed);
    fixed.erase("window_size");
    fixed.erase("epsilon");
    doc["fixed"] = fixed;
    if (const GridCell* best = result.best_cell()) {
        doc["best"] = cell_object(*best);
    } else {
        doc["best"] = nullptr;
    }
    Json cells = Json::array();
    for (const auto& cell : result.cells) cells.push_back(cell_object(cell));
    doc["grid"] = std::move(cells);
    return doc.dump(2) + "\n";
}

std::vector<CategorySummary> summarize_categories(std::span<const GridResult> results,
                                                  std::vector<std::string>* warnings) {
    std::map<std::string, CategorySummary> by_category;
    for (const auto& r : results) {
        auto& s = by_category[r.category];
        s.category = r.category;
        const GridCell* best = r.best_cell();
        if (best == nullptr) {
            if (warnings) warnings->push_back("no evaluable grid cell for " + r.key);
            continue;
        }
        ++s.files;
        s.mean_precision += best->metrics.precision;
        s.mean_recall += best->metrics.recall;
        s.mean_f_measure += best->metrics.f_measure;
    }
    std::vector<CategorySummary> out;
    for (auto& [name, s] : by_category) {
        if (s.files == 0) {
            if (warnings) warnings->push_back("category " + name + " has no evaluable files; omitted");
            continue;
        }
        const double n = static_cast<double>(s.files);
        s.mean_precision /= n;
        s.mean_recall /= n;
        s.mean_f_measure /= n;
        out.push_back(s);
    }
    return out;
}

std::string category_csv(std::span<const CategorySummary> summaries) {
    std::string out = "schema_version,category,files,mean_precision,mean_recall,mean_f_measure\n";
    for (const auto& s : summaries) {
        out += std::to_string(kSchemaVersion);
        out += ',';
        out += s.category;
        out += ',';
        out += std::to_string(s.files);
        out += ',';
        append_number(out, s.mean_precision);
        out += ',';
        append_number(out, s.mean_recall);
        out += ',';
        append_number(out, s.mean_f_measure);
        out += '\n';
    }
    return out;
}

std::string points_jsonl(const Series& series, std::span<const DetectionRecord> records,
                         const std::vector<bool>& truth) {
    std::string out;
    for (const auto& rec : records) {
        Json j;
        j["schema_version"] = kSchemaVersion;
        j["t"] = rec.t;
        j["timestamp"] = rec.t < series.timestamps.size() ? series.timestamps[rec.t].text() : std::string();
        j["x"] = rec.x;
        j["y"] = rec.y ? Json(*rec.y) : Json(nullptr);
        j["e"] = rec.y ? Json(rec.e) : Json(nullptr);
        j["u"] = rec.u;
        j["label"] = rec.t < truth.size() && truth[rec.t];
        out += j.dump();
        out += '\n';
    }
    return out;
}

void write_text(const std::filesystem::path& path, const std::string& content) {
    std::error_code ec;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write " + path.string());
    out << content;
    if (!out) throw InputError("failed writing " + path.string());
}

}  // namespace oesnn
