#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "reclaim/discovery.hpp"
#include "reclaim/integrate.hpp"
#include "reclaim/io.hpp"
#include "reclaim/lake_index.hpp"
#include "reclaim/metrics.hpp"
#include "reclaim/table.hpp"

namespace reclaim::pipeline {

struct ReclaimOptions {
    IoOptions io;
    discovery::DiscoveryConfig discovery;
    /// Ablation: integrate every candidate instead of the traversal's set.
    bool no_pruning = false;
    metrics::KlOptions kl;
};

struct CandidateReport {
    std::string lake_name;
    double avg_diverse_score = 0.0;
    std::map<std::string, std::string> column_map;
    std::vector<std::string> expanded_from;
};

struct TraversalStepReport {
    std::string table;
    double score = 0.0;
};

/// Everything a reclamation run produced; serializable as JSON.
struct RunReport {
    int schema_version = 1;
    std::string source_name;
    std::vector<std::string> key;
    double tau = 0.2;
    std::size_t top_k = 0;
    bool no_pruning = false;
    std::size_t lake_table_count = 0;
    std::vector<CandidateReport> candidates;
    std::vector<TraversalStepReport> traversal;
    std::vector<std::string> originating_tables;
    std::vector<integrate::IntegrationStep> integration;
    metrics::MetricReport metrics;
    std::vector<std::string> warnings;
    std::string reclaimed_path;
};

nlohmann::json to_json(const RunReport& report);

struct ReclaimOutcome {
    RunReport report;
    Table reclaimed;
    /// False when discovery produced no candidates (nothing to reclaim).
    bool reclaimable = true;
};

/// In-memory pipeline: discovery → expansion → traversal → integration →
/// metrics. Never throws on an unreclaimable source; inspect `reclaimable`.
ReclaimOutcome reclaim_from_index(const Table& source, const KeySpec& key,
                                  const LakeIndex& index, const ReclaimOptions& opts);

/// File-level wrapper: reads the source, builds or loads the lake index,
/// runs the pipeline, writes the reclaimed CSV and the JSON report into
/// `out_dir` (created if needed).
ReclaimOutcome run_reclaim(const std::filesystem::path& source_path,
                           const std::vector<std::string>& key_columns,
                           const std::filesystem::path& lake_dir_or_index,
                           const std::filesystem::path& out_dir,
                           const ReclaimOptions& opts);

}  // namespace reclaim::pipeline
