#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "reclaim/discovery.hpp"
#include "reclaim/kernels.hpp"
#include "reclaim/metrics.hpp"
#include "reclaim/table.hpp"

namespace reclaim::alignment {

using Trit = kernels::Trit;
using TritRow = std::vector<Trit>;

/**
 * Three-valued alignment of one candidate against the source: per source
 * key-tuple, a set of trit rows over the source columns. Key positions are
 * always +1; at non-key positions +1 means the candidate reproduces the
 * source cell (a candidate Null on a source Null counts as agreement),
 * 0 means the candidate is Null where the source has a value, and -1 means
 * the candidate holds a non-null value that contradicts the source. Row
 * lists are kept sorted and duplicate-free.
 */
struct AlignmentMatrix {
    std::size_t width = 0;
    std::map<KeyTuple, std::vector<TritRow>> rows_by_key;

    friend bool operator==(const AlignmentMatrix&, const AlignmentMatrix&) = default;
};

/**
 * Build the matrix for `candidate` (columns aligned to source columns by
 * name; non-key columns the candidate lacks behave as Null). Candidate rows
 * whose key cells are not atoms or whose key-tuple is absent from the source
 * are ignored. A candidate missing one of the key columns cannot be aligned
 * at all and raises ContractError.
 */
AlignmentMatrix initialize_matrix(const Table& candidate, const Table& source,
                                  const KeySpec& key);

/**
 * Merge two matrices per key: every row of one is paired with every row of
 * the other; a pair with contradicting non-zero trits keeps both rows,
 * otherwise the pair fuses into its element-wise maximum. Rows under a key
 * present in only one matrix carry over. Commutative; associative only on
 * conflict-free inputs, so callers fold in a fixed order.
 */
AlignmentMatrix combine(const AlignmentMatrix& m1, const AlignmentMatrix& m2);

/**
 * Predicted error-aware instance similarity of the (combined) matrix: per
 * source tuple the best row contributes (1 + (α - δ)/n)/2 with α the +1s
 * and δ the -1s over non-key positions; keys without rows contribute 1/2.
 * Equals metrics::ise of the integrated table on the same alignment.
 */
metrics::Fraction evaluate_matrix_exact(const AlignmentMatrix& m, const Table& source,
                                        const KeySpec& key);
double evaluate_matrix(const AlignmentMatrix& m, const Table& source, const KeySpec& key);

struct TraversalStep {
    std::size_t candidate = 0;
    std::string table;
    double score = 0.0;
};

struct TraversalResult {
    /// Indices into the candidate set, in selection order (start table first).
    std::vector<std::size_t> chosen;
    std::vector<TraversalStep> trace;
    double final_score = 0.0;
    AlignmentMatrix combined;
};

/**
 * Greedy originating-set selection: start from the best-scoring single
 * matrix, then repeatedly add the candidate whose combination raises the
 * predicted score the most; stop when no candidate strictly improves it.
 * Ties pick the lower candidate rank. Deterministic.
 */
TraversalResult traverse(const std::vector<discovery::Candidate>& candidates,
                         const Table& source, const KeySpec& key);

}  // namespace reclaim::alignment
