#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "hullknn/eval.hpp"

namespace hullknn {

enum class OutputFormat { markdown, csv, json };

OutputFormat parse_output_format(std::string_view name);

/// Everything needed to rerun a benchmark, embedded in every artifact.
struct RunMetadata {
    std::string dataset;
    std::string dataset_path;
    std::string format;
    std::string preset;
    std::uint32_t seed = 0;
    double test_fraction = 0.0;
    std::size_t trials = 0;
    bool stratified = true;
    bool scale = false;
    bool ensure_enclosure = false;
    bool hull_only = false;
    std::vector<std::string> assumptions;

    friend bool operator==(const RunMetadata&, const RunMetadata&) = default;
};

/// Display name used in the classifier column ("Hull k-NN", "Classic k-NN", "Classic SVM").
std::string classifier_display_name(std::string_view classifier_id);

/// Accuracy as a percentage with two decimals, e.g. 0.857142 -> "85.71%".
std::string format_percent(double fraction);

/// Shortest decimal that round-trips, e.g. 1.75 -> "1.75", 1e-3 -> "0.001".
std::string format_number(double v);

/// Table with columns classifier | k | threshold | gamma | accuracy ("-" where
/// a parameter does not apply). Markdown adds a metadata header and per-trial
/// statistics; csv prefixes metadata as '#' comment lines; json carries the
/// full reports.
std::string emit_table(const std::vector<EvalReport>& reports, OutputFormat format, const RunMetadata& meta);

struct ParsedReport {
    RunMetadata metadata;
    std::vector<EvalReport> reports;
};

/// Inverse of emit_table(..., OutputFormat::json, ...). Throws on malformed input.
ParsedReport parse_json_report(std::string_view text);

std::string emit_grid(const GridResult& grid, OutputFormat format, const RunMetadata& meta,
                      const std::vector<EvalReport>& best_on_test);

}  // namespace hullknn
