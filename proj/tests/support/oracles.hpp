#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "reclaim/discovery.hpp"
#include "reclaim/expand.hpp"
#include "reclaim/table.hpp"

namespace reclaim::testsupport {

/// Shared column names of two tables, in t1 order.
std::vector<std::string> shared_columns(const Table& t1, const Table& t2);

// Nested-loop reference implementations of the classical joins; ground truth
// for the operator-rewrite identities. Inputs are expected null-free with
// distinct rows, under which the outputs are distinct too.
Table oracle_join(const Table& t1, const Table& t2, const std::vector<std::string>& on);
Table oracle_left_join(const Table& t1, const Table& t2, const std::vector<std::string>& on);
Table oracle_full_outer_join(const Table& t1, const Table& t2,
                             const std::vector<std::string>& on);
Table oracle_cross_product(const Table& t1, const Table& t2);

/// Best predicted score over every non-empty candidate subset; subsets of up
/// to five candidates are folded in every order (combination is only
/// conflict-free associative). Exponential; fixtures only.
double exhaustive_best_score(const std::vector<discovery::Candidate>& candidates,
                             const Table& source, const KeySpec& key);

/// Maximum-weight simple start-to-end path by full enumeration; tiny graphs
/// only. `found` is false when no end node is reachable.
expand::PathSearchResult enumerate_best_path(const expand::JoinGraph& graph,
                                             std::size_t start);

}  // namespace reclaim::testsupport
