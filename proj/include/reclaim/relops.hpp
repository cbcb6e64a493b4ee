#pragma once

#include <set>
#include <string>
#include <variant>
#include <vector>

#include "reclaim/table.hpp"

namespace reclaim::relops {

/// Keep rows whose key-tuple (all cells atoms) is in `allowed`.
struct KeyMembership {
    KeySpec key;
    std::set<KeyTuple> allowed;
};

/// Keep rows where two columns of the same table hold equal values;
/// with `non_null` set, both cells must also be non-null.
struct ColumnEquals {
    std::string left;
    std::string right;
    bool non_null = true;
};

using SelectionPredicate = std::variant<KeyMembership, ColumnEquals>;

/// π: keep `cols` in the given order. Throws SchemaError on unknown columns.
Table project(const Table& t, const std::vector<std::string>& cols);

/// σ: filter rows by predicate. Throws SchemaError on unknown columns.
Table select(const Table& t, const SelectionPredicate& pred);

/**
 * ⊎ outer union: the united schema is t1's columns followed by t2's new
 * columns; rows are padded with Null for columns they lack. Commutative and
 * associative up to column order and row multiset.
 */
Table outer_union(const Table& t1, const Table& t2);

// Row-level relations, exposed for oracles and tests. Labeled nulls behave
// like atoms here (equal labels match, distinct labels differ).

/// `winner` covers `loser`: agrees on every non-null cell of `loser` and has
/// strictly more non-null cells.
bool subsumes(const Row& winner, const Row& loser);

/// The rows share at least one non-null equal cell, agree wherever both are
/// non-null, and each fills at least one null of the other.
bool complementary(const Row& a, const Row& b);

/// Position-wise union of two complementary rows (non-null cell wins).
Row merge_rows(const Row& a, const Row& b);

/**
 * β subsumption: drop duplicate rows (first occurrence kept) and every row
 * covered by another row. The surviving set is independent of scan order.
 */
Table subsume(const Table& t);

/**
 * κ complementation: repeatedly merge complementary row pairs. Each round
 * scans all pairs of the current rows in row order, collects every merge,
 * then drops the rows that took part in one; rounds repeat until no pair
 * complements. Keeping a row live for all merges of its round is what makes
 * one row merge with several partners (1-to-many joins depend on it).
 */
Table complement(const Table& t);

/// Fixpoint of dedup → κ → β.
Table minimal_form(const Table& t);

/**
 * Inner natural join on the shared columns `on` (which must be exactly the
 * columns the schemas share). Nested loops; a Null in a join column never
 * matches. Result schema: t1's columns then t2's non-join columns.
 */
Table join_direct(const Table& t1, const Table& t2,
                  const std::vector<std::string>& on);

/**
 * Join identities over {⊎, σ, π, κ, β}. Operands must be in minimal form
 * and null-free on the shared columns for the identities to hold exactly.
 */
Table join_via_rewrite(const Table& t1, const Table& t2,
                       const std::vector<std::string>& on);
Table left_join_via_rewrite(const Table& t1, const Table& t2,
                            const std::vector<std::string>& on);
Table full_outer_join_via_rewrite(const Table& t1, const Table& t2,
                                  const std::vector<std::string>& on);

/// Cross product of tables with disjoint schemas; empty if either is empty.
Table cross_product_via_rewrite(const Table& t1, const Table& t2);

/// Multiset row equality after aligning t2's columns to t1's order.
/// Throws SchemaError if the column sets differ.
bool rows_equal_multiset(const Table& t1, const Table& t2);

}  // namespace reclaim::relops
