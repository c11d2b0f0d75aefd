#include "hullknn/report.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace hullknn {

using nlohmann::json;

OutputFormat parse_output_format(std::string_view name) {
    if (name == "markdown") return OutputFormat::markdown;
    if (name == "csv") return OutputFormat::csv;
    if (name == "json") return OutputFormat::json;
    throw std::invalid_argument("unknown output format '" + std::string(name) + "'");
}

std::string classifier_display_name(std::string_view id) {
    if (id == "hull-knn") return "Hull k-NN";
    if (id == "knn") return "Classic k-NN";
    if (id == "svm") return "Classic SVM";
    return std::string(id);
}

std::string format_percent(double fraction) {
    char buf[64];
    const double pct = std::round(fraction * 10000.0) / 100.0;
    std::snprintf(buf, sizeof buf, "%.2f%%", pct);
    return buf;
}

std::string format_number(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

namespace {

struct Row {
    std::string classifier, k, threshold, gamma, accuracy;
};

Row table_row(const EvalReport& r) {
    return {classifier_display_name(r.classifier_id), r.k ? std::to_string(*r.k) : "-",
            r.threshold ? format_number(*r.threshold) : "-", r.gamma ? format_number(*r.gamma) : "-",
            format_percent(r.trials.size() > 1 ? r.mean_accuracy : r.accuracy)};
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

json metadata_json(const RunMetadata& m) {
    return json{{"dataset", m.dataset},
                {"dataset_path", m.dataset_path},
                {"format", m.format},
                {"preset", m.preset},
                {"seed", m.seed},
                {"test_fraction", m.test_fraction},
                {"trials", m.trials},
                {"stratified", m.stratified},
                {"scale", m.scale},
                {"ensure_enclosure", m.ensure_enclosure},
                {"hull_only", m.hull_only},
                {"assumptions", m.assumptions}};
}

template <typename T>
json optional_json(const std::optional<T>& v) {
    return v ? json(*v) : json(nullptr);
}

template <typename T>
std::optional<T> optional_from(const json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return j.at(key).get<T>();
}

json report_json(const EvalReport& r) {
    return json{{"classifier_id", r.classifier_id},
                {"k", optional_json(r.k)},
                {"threshold", optional_json(r.threshold)},
                {"gamma", optional_json(r.gamma)},
                {"C", optional_json(r.C)},
                {"point_count", optional_json(r.point_count)},
                {"accuracy", r.accuracy},
                {"class_count", r.class_count},
                {"confusion", r.confusion},
                {"test_size", r.test_size},
                {"seed", r.seed},
                {"trials", r.trials},
                {"mean_accuracy", r.mean_accuracy},
                {"min_accuracy", r.min_accuracy},
                {"max_accuracy", r.max_accuracy},
                {"in_hull_neighbor_deficit", optional_json(r.in_hull_neighbor_deficit)}};
}

void markdown_metadata(std::ostringstream& os, const RunMetadata& m) {
    os << "# " << m.dataset << "\n\n";
    os << "- dataset file: `" << m.dataset_path << "` (format " << m.format << ")\n";
    if (!m.preset.empty()) os << "- preset: " << m.preset << "\n";
    os << "- seed: " << m.seed << "\n";
    os << "- test fraction: " << format_number(m.test_fraction) << (m.stratified ? " (stratified)" : "") << "\n";
    os << "- trials: " << m.trials << "\n";
    os << "- scaling: " << (m.scale ? "min-max" : "none") << "\n";
    os << "- ensure enclosure: " << (m.ensure_enclosure ? "yes" : "no") << "\n";
    os << "- hull-only vote: " << (m.hull_only ? "yes" : "no") << "\n";
    for (const auto& a : m.assumptions) os << "- assumption: " << a << "\n";
    os << "\n";
}

void csv_metadata(std::ostringstream& os, const RunMetadata& m) {
    os << "# dataset=" << m.dataset << " path=" << m.dataset_path << " format=" << m.format;
    if (!m.preset.empty()) os << " preset=" << m.preset;
    os << "\n# seed=" << m.seed << " test_fraction=" << format_number(m.test_fraction)
       << " trials=" << m.trials << " stratified=" << m.stratified << " scale=" << m.scale
       << " ensure_enclosure=" << m.ensure_enclosure << " hull_only=" << m.hull_only << "\n";
    for (const auto& a : m.assumptions) os << "# assumption: " << a << "\n";
}

}  // namespace

std::string emit_table(const std::vector<EvalReport>& reports, OutputFormat format, const RunMetadata& meta) {
    std::ostringstream os;
    switch (format) {
        case OutputFormat::markdown: {
            markdown_metadata(os, meta);
            os << "| classifier | k | threshold | gamma | accuracy |\n";
            os << "|---|---|---|---|---|\n";
            for (const auto& r : reports) {
                const Row row = table_row(r);
                os << "| " << row.classifier << " | " << row.k << " | " << row.threshold << " | " << row.gamma
                   << " | " << row.accuracy << " |\n";
            }
            if (meta.trials > 1) {
                os << "\n| classifier | mean | min | max | in-hull deficit |\n";
                os << "|---|---|---|---|---|\n";
                for (const auto& r : reports) {
                    os << "| " << classifier_display_name(r.classifier_id) << " | " << format_percent(r.mean_accuracy)
                       << " | " << format_percent(r.min_accuracy) << " | " << format_percent(r.max_accuracy) << " | "
                       << (r.in_hull_neighbor_deficit ? format_percent(*r.in_hull_neighbor_deficit) : "-") << " |\n";
                }
            }
            break;
        }
        case OutputFormat::csv: {
            csv_metadata(os, meta);
            os << "classifier,k,threshold,gamma,accuracy\n";
            for (const auto& r : reports) {
                const Row row = table_row(r);
                os << csv_escape(row.classifier) << ',' << row.k << ',' << row.threshold << ',' << row.gamma << ','
                   << row.accuracy << '\n';
            }
            break;
        }
        case OutputFormat::json: {
            json j{{"metadata", metadata_json(meta)}, {"reports", json::array()}};
            for (const auto& r : reports) j["reports"].push_back(report_json(r));
            os << j.dump(2) << '\n';
            break;
        }
    }
    return os.str();
}

ParsedReport parse_json_report(std::string_view text) {
    const json j = json::parse(text);
    ParsedReport out;
    const json& m = j.at("metadata");
    out.metadata.dataset = m.at("dataset").get<std::string>();
    out.metadata.dataset_path = m.at("dataset_path").get<std::string>();
    out.metadata.format = m.at("format").get<std::string>();
    out.metadata.preset = m.at("preset").get<std::string>();
    out.metadata.seed = m.at("seed").get<std::uint32_t>();
    out.metadata.test_fraction = m.at("test_fraction").get<double>();
    out.metadata.trials = m.at("trials").get<std::size_t>();
    out.metadata.stratified = m.at("stratified").get<bool>();
    out.metadata.scale = m.at("scale").get<bool>();
    out.metadata.ensure_enclosure = m.at("ensure_enclosure").get<bool>();
    out.metadata.hull_only = m.at("hull_only").get<bool>();
    out.metadata.assumptions = m.at("assumptions").get<std::vector<std::string>>();
    for (const json& r : j.at("reports")) {
        EvalReport e;
        e.classifier_id = r.at("classifier_id").get<std::string>();
        e.k = optional_from<std::size_t>(r, "k");
        e.threshold = optional_from<double>(r, "threshold");
        e.gamma = optional_from<double>(r, "gamma");
        e.C = optional_from<double>(r, "C");
        e.point_count = optional_from<std::size_t>(r, "point_count");
        e.accuracy = r.at("accuracy").get<double>();
        e.class_count = r.at("class_count").get<std::size_t>();
        e.confusion = r.at("confusion").get<std::vector<std::size_t>>();
        e.test_size = r.at("test_size").get<std::size_t>();
        e.seed = r.at("seed").get<std::uint32_t>();
        e.trials = r.at("trials").get<std::vector<double>>();
        e.mean_accuracy = r.at("mean_accuracy").get<double>();
        e.min_accuracy = r.at("min_accuracy").get<double>();
        e.max_accuracy = r.at("max_accuracy").get<double>();
        e.in_hull_neighbor_deficit = optional_from<double>(r, "in_hull_neighbor_deficit");
        out.reports.push_back(std::move(e));
    }
    return out;
}

std::string emit_grid(const GridResult& grid, OutputFormat format, const RunMetadata& meta,
                      const std::vector<EvalReport>& best_on_test) {
    std::ostringstream os;
    switch (format) {
        case OutputFormat::markdown: {
            markdown_metadata(os, meta);
            os << "| k | threshold | train error | validation error |\n|---|---|---|---|\n";
            for (const auto& c : grid.grid)
                os << "| " << c.k << " | " << format_number(c.threshold) << " | " << format_percent(c.train_error)
                   << " | " << format_percent(c.validation_error) << " |\n";
            os << "\nbest: k = " << grid.best_k << ", threshold = " << format_number(grid.best_threshold) << "\n\n";
            os << "| classifier | k | threshold | gamma | accuracy |\n|---|---|---|---|---|\n";
            for (const auto& r : best_on_test) {
                const Row row = table_row(r);
                os << "| " << row.classifier << " | " << row.k << " | " << row.threshold << " | " << row.gamma
                   << " | " << row.accuracy << " |\n";
            }
            break;
        }
        case OutputFormat::csv: {
            csv_metadata(os, meta);
            os << "# best k=" << grid.best_k << " threshold=" << format_number(grid.best_threshold) << "\n";
            os << "k,threshold,train_error,validation_error\n";
            for (const auto& c : grid.grid)
                os << c.k << ',' << format_number(c.threshold) << ',' << format_number(c.train_error) << ','
                   << format_number(c.validation_error) << '\n';
            break;
        }
        case OutputFormat::json: {
            json cells = json::array();
            for (const auto& c : grid.grid)
                cells.push_back({{"k", c.k},
                                 {"threshold", c.threshold},
                                 {"train_error", c.train_error},
                                 {"validation_error", c.validation_error},
                                 {"seed", c.seed}});
            json j{{"metadata", metadata_json(meta)},
                   {"grid", cells},
                   {"best", {{"k", grid.best_k}, {"threshold", grid.best_threshold}}},
                   {"reports", json::array()}};
            for (const auto& r : best_on_test) j["reports"].push_back(report_json(r));
            os << j.dump(2) << '\n';
            break;
        }
    }
    return os.str();
}

}  // namespace hullknn
