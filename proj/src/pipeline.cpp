#include "reclaim/pipeline.hpp"

#include <fstream>
#include <numeric>

#include "reclaim/alignment.hpp"
#include "reclaim/errors.hpp"
#include "reclaim/expand.hpp"

namespace reclaim::pipeline {

namespace fs = std::filesystem;

ReclaimOutcome reclaim_from_index(const Table& source, const KeySpec& key,
                                  const LakeIndex& index, const ReclaimOptions& opts) {
    validate_source_key(source, key);

    ReclaimOutcome outcome;
    RunReport& report = outcome.report;
    report.source_name = source.name();
    report.key = key.key_columns;
    report.tau = opts.discovery.tau;
    report.top_k = opts.discovery.top_k;
    report.no_pruning = opts.no_pruning;
    report.lake_table_count = index.tables().size();

    auto discovered = discovery::discover_candidates(index, source, key, opts.discovery);
    auto expanded = expand::expand_candidates(discovered, key);
    // Expansion carries the discovery warnings forward, so one insert covers both.
    report.warnings.insert(report.warnings.end(), expanded.warnings.begin(),
                           expanded.warnings.end());

    for (const auto& cand : expanded.candidates) {
        report.candidates.push_back(
            {cand.lake_name, cand.avg_diverse_score, cand.column_map, cand.expanded_from});
    }

    if (expanded.candidates.empty()) {
        outcome.reclaimable = false;
        report.warnings.push_back("no usable candidates: source is not reclaimable from this lake");
        outcome.reclaimed = Table("reclaimed_" + source.name(), source.columns());
        report.metrics = metrics::evaluate_all(source, outcome.reclaimed, key, opts.kl);
        return outcome;
    }

    std::vector<std::size_t> chosen;
    if (opts.no_pruning) {
        chosen.resize(expanded.candidates.size());
        std::iota(chosen.begin(), chosen.end(), std::size_t{0});
    } else {
        const auto result = alignment::traverse(expanded.candidates, source, key);
        chosen = result.chosen;
        for (const auto& step : result.trace) {
            report.traversal.push_back({step.table, step.score});
        }
    }
    for (std::size_t idx : chosen) {
        report.originating_tables.push_back(expanded.candidates[idx].lake_name);
    }

    std::vector<Table> tables;
    tables.reserve(chosen.size());
    for (std::size_t idx : chosen) tables.push_back(expanded.candidates[idx].table);

    auto [reclaimed, trace] = integrate::integrate(tables, source, key);
    report.integration = trace.steps;
    report.warnings.insert(report.warnings.end(), trace.warnings.begin(), trace.warnings.end());

    outcome.reclaimed = std::move(reclaimed);
    report.metrics = metrics::evaluate_all(source, outcome.reclaimed, key, opts.kl);
    return outcome;
}

ReclaimOutcome run_reclaim(const fs::path& source_path,
                           const std::vector<std::string>& key_columns,
                           const fs::path& lake_dir_or_index, const fs::path& out_dir,
                           const ReclaimOptions& opts) {
    const Table source = read_table(source_path, opts.io);
    const KeySpec key{key_columns};

    std::vector<std::string> lake_warnings;
    const LakeIndex index = fs::is_directory(lake_dir_or_index)
                                ? LakeIndex::build(lake_dir_or_index, opts.io, &lake_warnings)
                                : LakeIndex::load(lake_dir_or_index);

    ReclaimOutcome outcome = reclaim_from_index(source, key, index, opts);
    outcome.report.warnings.insert(outcome.report.warnings.begin(), lake_warnings.begin(),
                                   lake_warnings.end());

    fs::create_directories(out_dir);
    const fs::path csv_path = out_dir / (outcome.reclaimed.name() + ".csv");
    write_table(outcome.reclaimed, csv_path, opts.io);
    outcome.report.reclaimed_path = csv_path.string();

    const fs::path report_path = out_dir / "report.json";
    std::ofstream out(report_path);
    if (!out) throw IoError("cannot write report: " + report_path.string());
    out << to_json(outcome.report).dump(2) << '\n';
    return outcome;
}

}  // namespace reclaim::pipeline
