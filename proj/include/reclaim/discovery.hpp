#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "reclaim/lake_index.hpp"
#include "reclaim/table.hpp"

namespace reclaim::discovery {

struct DiscoveryConfig {
    /// Minimum per-column containment for a lake column to count as a match.
    double tau = 0.2;
    /// Max candidates considered per source column (0 = unlimited).
    std::size_t top_k = 0;
};

/// A lake table prepared for alignment: matched columns renamed to their
/// source counterparts, unmatched columns retained under their own names.
struct Candidate {
    Table table;
    /// Original lake column name -> source column name, for matched columns.
    std::map<std::string, std::string> column_map;
    double avg_diverse_score = 0.0;
    std::string lake_name;
    /// Names of the lake tables joined into this one (filled by expansion).
    std::vector<std::string> expanded_from;
};

struct CandidateSet {
    std::vector<Candidate> candidates;
    std::vector<std::string> warnings;
};

/// One table's best-matching column for a given source column.
struct ColumnCandidate {
    std::string table;
    std::string column;
    /// |column atoms ∩ source column atoms| / |source column atoms|.
    double source_overlap = 0.0;
    /// Sorted distinct atom ids of the lake column.
    const std::vector<std::uint32_t>* column_ids = nullptr;
};

struct ScoredColumnCandidate {
    std::string table;
    std::string column;
    double score = 0.0;
};

/**
 * Redundancy-penalized scoring: the first candidate keeps its raw source
 * overlap; each later candidate i scores
 *   |C_i ∩ c| / |c|  -  |C_i ∩ C_{i-1}| / |C_i|
 * against its predecessor in the *input* (overlap-ranked) order. Candidates
 * under `tau` source overlap are dropped; the output is reordered by score
 * descending (stable, so ties keep the input order).
 */
std::vector<ScoredColumnCandidate> diversify(const std::vector<ColumnCandidate>& ranked,
                                             const ResolvedColumn& source_col,
                                             double tau);

/**
 * Candidate retrieval: per-column containment lookups, per-column
 * diversified scores accumulated per table and averaged, tables ordered by
 * average score (ties by name), aligned-tuple verification, removal of
 * candidates fully contained in another, and renaming of matched columns.
 */
CandidateSet discover_candidates(const LakeIndex& index, const Table& source,
                                 const KeySpec& key, const DiscoveryConfig& cfg);

}  // namespace reclaim::discovery
