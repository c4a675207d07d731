#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "streamsim/config.hpp"
#include "streamsim/engine.hpp"

namespace streamsim {

// One line of the summary CSV.
struct SummaryRow {
    std::string run_id;
    std::string controller;  // "stochastic" or "fixed:<qp>"
    int k = 0;
    std::optional<double> v;  // empty for fixed controllers
    std::uint64_t seed = 0;
    std::optional<double> mean_psnr_db;  // empty when a run had no placements
    double mean_queue_bits = 0.0;
    double tail_mean_queue_bits = 0.0;
    double tail_slope = 0.0;
    std::string verdict;
};

// "diverging" when the tail both grows (slope above the threshold) and sits
// well above the early backlog (tail mean > ratio x first-third mean);
// "stable" otherwise.
std::string verdict_of(const RunResult& result, double slope_threshold,
                       double ratio_threshold);

std::string summary_csv(const std::vector<SummaryRow>& rows);

// Throws ConfigError when the header does not match the summary schema.
std::vector<SummaryRow> parse_summary_csv(std::string_view text);

// Executes every expanded run, writes <run_id>_steps.csv per run plus
// summary.csv and effective_config.cfg under config.output_dir, and prints
// one line per run to log. Throws IoError when outputs cannot be written.
std::vector<SummaryRow> run_experiment(const ExperimentConfig& config, std::ostream& log);

struct ComparisonRow {
    std::string run_id;
    std::optional<double> mean_psnr_db;
    double tail_mean_queue_bits = 0.0;
    std::string verdict;
};

// Rows of >= 2 summary files, stably sorted by tail mean queue. Throws
// ConfigError on arity or schema mismatch, IoError on unreadable files.
std::vector<ComparisonRow> compare_summaries(const std::vector<std::string>& paths);

std::string comparison_csv(const std::vector<ComparisonRow>& rows);
std::string comparison_table(const std::vector<ComparisonRow>& rows);

// The trace table an experiment runs against (built-in unless configured).
TraceTable experiment_table(const ExperimentConfig& config);

}  // namespace streamsim
