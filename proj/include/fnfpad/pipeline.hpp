#pragma once

#include <string>
#include <vector>

#include "fnfpad/classify.hpp"
#include "fnfpad/features.hpp"
#include "fnfpad/manifest.hpp"
#include "fnfpad/stats.hpp"

namespace fnfpad {

struct PairRow {
  CaptureLabel label;
  FeatureVector features;
};

struct ExtractOutcome {
  std::vector<PairRow> rows;          // sorted by pair_id
  std::vector<std::string> warnings;  // one per skipped/flagged pair
  bool partial_failure = false;       // some pair could not be processed
};

/// Feature extraction over a manifest. Pairs are processed sorted by
/// pair_id with an optional thread pool; output is identical for any jobs
/// value. Unreadable or invalid pairs are skipped with a warning.
ExtractOutcome run_extract(const std::vector<ManifestEntry>& entries,
                           const std::string& manifest_dir, const ExtractConfig& cfg,
                           int jobs);

// canonical feature CSV
std::string feature_csv_header();
std::string features_to_csv(const std::vector<PairRow>& rows);
std::vector<PairRow> read_feature_csv(const std::string& path);

/// Per-feature separation statistics from labeled rows; flagged entries are
/// excluded per feature.
SeparationReport separation_from_rows(const std::vector<PairRow>& rows);

// versioned JSON documents ("fnfpad-report/1")
std::string extract_report_json(const std::vector<PairRow>& rows,
                                const std::vector<std::string>& warnings,
                                const ExtractConfig& cfg, bool deterministic);
std::string separation_report_json(const SeparationReport& report);
std::string metrics_report_json(const EvalMetrics& metrics, std::size_t train_rows,
                                std::size_t test_rows, const std::string& model_path);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace fnfpad
