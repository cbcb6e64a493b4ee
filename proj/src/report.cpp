#include <cmath>

#include "reclaim/pipeline.hpp"

namespace reclaim::pipeline {

using nlohmann::json;

namespace {

/// JSON has no infinity; +inf (unrecoverable divergence) becomes null.
json finite_or_null(double v) {
    if (std::isfinite(v)) return v;
    return nullptr;
}

}  // namespace

json to_json(const RunReport& report) {
    json candidates = json::array();
    for (const auto& cand : report.candidates) {
        candidates.push_back({{"lake_table", cand.lake_name},
                              {"avg_diverse_score", cand.avg_diverse_score},
                              {"column_map", cand.column_map},
                              {"expanded_from", cand.expanded_from}});
    }

    json traversal = json::array();
    for (const auto& step : report.traversal) {
        traversal.push_back({{"table", step.table}, {"score", step.score}});
    }

    json integration = json::array();
    for (const auto& step : report.integration) {
        integration.push_back({{"op", step.op}, {"tables", step.tables}, {"ise", step.ise}});
    }

    return json{{"schema_version", report.schema_version},
                {"source", report.source_name},
                {"key", report.key},
                {"config",
                 {{"tau", report.tau},
                  {"top_k", report.top_k},
                  {"no_pruning", report.no_pruning}}},
                {"lake_table_count", report.lake_table_count},
                {"candidates", candidates},
                {"traversal", traversal},
                {"originating_tables", report.originating_tables},
                {"integration", integration},
                {"metrics",
                 {{"ise", report.metrics.ise},
                  {"instance_similarity", report.metrics.instance_similarity},
                  {"recall", report.metrics.recall},
                  {"precision", report.metrics.precision},
                  {"instance_divergence", report.metrics.instance_divergence},
                  {"kl_divergence", finite_or_null(report.metrics.kl_divergence)}}},
                {"warnings", report.warnings},
                {"reclaimed_path", report.reclaimed_path}};
}

}  // namespace reclaim::pipeline
