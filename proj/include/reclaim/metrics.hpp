#pragma once

#include <cstdint>
#include <utility>

#include "reclaim/table.hpp"

namespace reclaim::metrics {

/**
 * Exact score as an integer ratio. Similarity sums are accumulated in
 * integers and divided once, so two modules computing the same quantity
 * agree bit-for-bit regardless of summation order.
 */
struct Fraction {
    std::int64_t num = 0;
    std::int64_t den = 1;
    double value() const { return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den); }
};

struct MetricReport {
    double ise = 0.0;
    double instance_similarity = 0.0;
    double recall = 0.0;
    double precision = 0.0;
    double instance_divergence = 0.0;
    /// May be +infinity (no source key reclaimed).
    double kl_divergence = 0.0;
};

struct KlOptions {
    double epsilon = 1e-9;
};

/**
 * Error-aware tuple similarity E(s,t) = (α - δ) / n over the n non-key
 * attributes: α counts positions where the two cells agree, with a shared
 * Null counting as agreement on absence; δ counts positions where t is
 * non-null and differs from s (including non-null against a source Null).
 * Range [-1, 1]. Requires n ≥ 1 and identical schemas.
 */
double tuple_similarity_error_aware(const Table& source, std::size_t s_row,
                                    const Table& reclaimed, std::size_t t_row,
                                    const KeySpec& key);

/**
 * Mean over source tuples of the best key-aligned reclaimed row's α/n,
 * where α here counts only shared non-null values; unaligned source tuples
 * contribute 0.
 */
Fraction instance_similarity_exact(const Table& source, const Table& reclaimed,
                                   const KeySpec& key);
double instance_similarity(const Table& source, const Table& reclaimed,
                           const KeySpec& key);

/**
 * Error-aware instance similarity: mean over source tuples of
 * (1 + max E)/2 across key-aligned rows; unaligned tuples contribute 1/2.
 * Range [0, 1]; 1 exactly when every source tuple is reproduced exactly.
 */
Fraction ise_exact(const Table& source, const Table& reclaimed, const KeySpec& key);
double ise(const Table& source, const Table& reclaimed, const KeySpec& key);

/// 1 - instance_similarity.
double instance_divergence(const Table& source, const Table& reclaimed,
                           const KeySpec& key);

/**
 * Set-semantics row recall/precision: rows deduplicated on both sides,
 * intersected under full-row identity equality (Null equals Null here).
 * Returns {recall, precision}; precision of an empty reclaimed table is 0.
 */
std::pair<double, double> recall_precision(const Table& source, const Table& reclaimed);

/**
 * Conditional-distribution divergence of the reclaimed table from the
 * source, keyed per column: for each non-key column, each source key
 * contributes -log(Q(x|k) * (1 - Q(¬x|k))) where x is the source value and
 * Q describes the best-aligned reclaimed row for k (ε-smoothed when the
 * value is absent); the per-column sums are totalled and divided by
 * Q(K) * |S|, the number of source keys present. Returns
 * +infinity when no source key is present. Zero iff every aligned value
 * matches. Erroneous non-null mismatches cost -2 log ε, plain nulls -log ε.
 */
double conditional_kl(const Table& source, const Table& reclaimed,
                      const KeySpec& key, const KlOptions& opts = {});

/// All of the above, on reclaimed aligned to the source schema by name
/// (missing columns treated as all-Null, extra columns ignored).
MetricReport evaluate_all(const Table& source, const Table& reclaimed,
                          const KeySpec& key, const KlOptions& opts = {});

/**
 * Align `t` to the source schema by column name: missing columns become
 * all-Null, extra columns are dropped, labeled nulls are lowered to Null.
 * All table-level metrics apply this view to the reclaimed argument.
 */
Table aligned_to_schema(const Table& source, const Table& t);

}  // namespace reclaim::metrics
