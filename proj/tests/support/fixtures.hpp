#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "reclaim/table.hpp"

namespace reclaim::testsupport {

/// Build a row from C strings; nullptr becomes Null.
Row row_of(std::initializer_list<const char*> cells);

/// Build a table in one expression; nullptr cells become Null.
Table make_table(std::string name, std::vector<std::string> columns,
                 std::initializer_list<std::initializer_list<const char*>> rows);

// Worked error-aware example: a five-column source keyed by "id" with one
// missing cell, plus two imperfect reconstructions whose scores were derived
// by hand and are pinned in the metric tests.
//
//   variant_one: one fabricated value where the source is Null and one
//     dropped value. Instance similarity 10/12, error-aware score 7/8.
//   variant_two: two dropped values, one of them where the source is Null
//     too (a shared Null counts for the error-aware score but not for plain
//     instance similarity). Instance similarity 9/12, error-aware score 11/12.
Table worked_source();
Table worked_variant_one();
Table worked_variant_two();
KeySpec worked_key();

// Complementary-parts example: two halves that fuse back into the source
// exactly, plus a near-copy carrying two contradictions. Solo matrix
// numerators over the shared denominator 24: part_a 20, part_b 17, part_c 20
// (a tie with part_a that exercises the rank tie-break). Combining a with b
// reaches 24/24; adding c cannot improve it, so the traversal must stop at
// {a, b} and integration must rebuild the source bit for bit.
Table parts_source();
Table part_a();
Table part_b();
Table part_c();
KeySpec parts_key();

}  // namespace reclaim::testsupport
