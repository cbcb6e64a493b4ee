#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "reclaim/discovery.hpp"
#include "reclaim/table.hpp"

namespace reclaim::expand {

struct JoinEdge {
    std::size_t a = 0;
    std::size_t b = 0;
    /// Shared (renamed) columns with non-zero value overlap.
    std::vector<std::string> columns;
    /// Sum over shared columns of |shared distinct atoms| / |smaller side's
    /// distinct atoms|. Always > 0 for a materialized edge.
    double weight = 0.0;
};

/**
 * Join graph over a candidate set: nodes are candidates, undirected edges
 * connect tables sharing at least one column with overlapping values.
 * Start nodes lack part of the source key; end nodes carry all of it.
 */
struct JoinGraph {
    std::vector<std::string> nodes;
    std::vector<JoinEdge> edges;
    std::vector<std::size_t> start_nodes;
    std::vector<std::size_t> end_nodes;

    std::vector<std::pair<std::size_t, double>> neighbors(std::size_t node) const;
    bool is_end(std::size_t node) const;
};

JoinGraph build_join_graph(const discovery::CandidateSet& cands, const KeySpec& key);

struct PathSearchResult {
    bool found = false;
    /// Start-to-end node sequence.
    std::vector<std::size_t> path;
    double weight = 0.0;
};

/**
 * Greedy stack-based search for a heavy start-to-end path. Every node is
 * claimed by the first expansion that examines it and never re-relaxed, so
 * the result can miss the true maximum-weight simple path; that trade-off is
 * intentional and covered by a differential test against exhaustive
 * enumeration.
 */
PathSearchResult max_weight_path(const JoinGraph& graph, std::size_t start);

/**
 * Replace every key-less candidate by the join of the tables along its
 * discovered path (left to right, natural join on all shared columns).
 * Key-bearing candidates pass through unchanged; key-less candidates with
 * no path to a key-bearing table are dropped with a warning. Every output
 * candidate contains all key columns.
 */
discovery::CandidateSet expand_candidates(const discovery::CandidateSet& cands,
                                          const KeySpec& key);

}  // namespace reclaim::expand
