#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "reclaim/cell.hpp"
#include "reclaim/errors.hpp"

namespace reclaim {

using Row = std::vector<Cell>;

/// Key-tuple: the atom texts of a row's key cells, in key-column order.
using KeyTuple = std::vector<std::string>;

/**
 * An in-memory relation: a name, an ordered list of unique column names, and
 * rows of cells. Tables are built once (constructor plus add_row) and treated
 * as immutable afterwards; every operator returns a new table.
 */
class Table {
  public:
    Table() = default;
    Table(std::string name, std::vector<std::string> columns);

    void add_row(Row row);
    void reserve(std::size_t rows) { rows_.reserve(rows); }

    const std::string& name() const { return name_; }
    void set_name(std::string name) { name_ = std::move(name); }

    const std::vector<std::string>& columns() const { return columns_; }
    std::size_t column_count() const { return columns_.size(); }
    std::size_t row_count() const { return rows_.size(); }
    const std::vector<Row>& rows() const { return rows_; }
    const Row& row(std::size_t r) const { return rows_[r]; }
    const Cell& at(std::size_t r, std::size_t c) const { return rows_[r][c]; }

    bool has_column(const std::string& name) const;
    std::optional<std::size_t> column_index(const std::string& name) const;

  private:
    std::string name_;
    std::vector<std::string> columns_;
    std::unordered_map<std::string, std::size_t> index_;
    std::vector<Row> rows_;
};

/// Declared key: one or more column names.
struct KeySpec {
    std::vector<std::string> key_columns;
};

/// Positions of the key columns in `t`. Throws SchemaError if any is absent.
std::vector<std::size_t> key_positions(const Table& t, const KeySpec& key);

/**
 * Group rows by key-tuple. Rows whose key cells are not all atoms are
 * excluded (a Null or labeled key cell cannot align anything).
 */
std::map<KeyTuple, std::vector<std::size_t>> key_projection(const Table& t,
                                                            const KeySpec& key);

/**
 * Validate `t` as a source table for the declared key: every key column
 * present, every key cell a non-null atom, and key-tuples unique.
 * Throws SchemaError otherwise.
 */
void validate_source_key(const Table& t, const KeySpec& key);

/// Sorted distinct atom texts of one column (nulls and labels skipped).
std::vector<std::string> sorted_distinct_atoms(const Table& t, std::size_t col);

}  // namespace reclaim
