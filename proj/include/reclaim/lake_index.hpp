#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "reclaim/io.hpp"
#include "reclaim/table.hpp"

namespace reclaim {

/// Append-only string interner; ids are dense and assigned in first-seen order.
class ValuePool {
  public:
    std::uint32_t intern(std::string_view text);
    std::optional<std::uint32_t> find(std::string_view text) const;
    const std::string& text(std::uint32_t id) const { return texts_[id]; }
    std::size_t size() const { return texts_.size(); }

  private:
    std::unordered_map<std::string, std::uint32_t> ids_;
    std::vector<std::string> texts_;
};

struct ContainmentHit {
    std::string table;
    std::string column;
    /// |lake column atoms ∩ source column atoms| / |source column atoms|.
    double fraction = 0.0;
    std::size_t overlap_count = 0;
};

/// A source column's atoms resolved against the pool: ids of the atoms the
/// lake has seen, plus the full distinct count (the containment denominator).
struct ResolvedColumn {
    std::vector<std::uint32_t> ids;
    std::size_t distinct_count = 0;
};

/**
 * Inverted index over every lake table: atom -> the (table, column) pairs
 * it appears in, plus per-column sorted distinct atom-id sets. Build order
 * is the lexicographic file order, so rebuilding the same directory yields
 * an identical index.
 */
class LakeIndex {
  public:
    struct ColumnRef {
        std::uint32_t table = 0;
        std::uint32_t column = 0;
        friend bool operator<(const ColumnRef& a, const ColumnRef& b) {
            return a.table != b.table ? a.table < b.table : a.column < b.column;
        }
        friend bool operator==(const ColumnRef& a, const ColumnRef& b) {
            return a.table == b.table && a.column == b.column;
        }
    };

    /// Index every *.csv under `dir` (non-recursive), sorted by filename.
    /// Unreadable/malformed files are skipped with a warning; a directory
    /// yielding zero tables raises IoError.
    static LakeIndex build(const std::filesystem::path& dir, const IoOptions& opts,
                           std::vector<std::string>* warnings = nullptr);

    /// Build from in-memory tables (test and benchmark plumbing).
    static LakeIndex build_from_tables(std::vector<Table> tables, const IoOptions& opts);

    const std::vector<Table>& tables() const { return tables_; }
    const Table& table(std::size_t id) const { return tables_[id]; }
    std::optional<std::size_t> table_id(const std::string& name) const;

    const ValuePool& pool() const { return pool_; }

    /// Distinct atoms of one lake column as sorted ids.
    const std::vector<std::uint32_t>& column_ids(std::size_t table, std::size_t column) const;
    std::size_t column_cardinality(std::size_t table, std::size_t column) const;

    /// Total number of (atom, table, column) postings; equals the sum of
    /// distinct atom counts over all columns.
    std::size_t posting_count() const;

    /// Resolve a source column's distinct atoms against the pool.
    ResolvedColumn resolve(const std::vector<std::string>& distinct_atoms) const;

    /**
     * Containment lookup: every lake column holding at least one of the
     * source column's atoms, with fraction = overlap / |source atoms|.
     * Sorted by fraction desc, then table name, then column name.
     * An empty atom set has no containment semantics: ContractError.
     */
    std::vector<ContainmentHit> column_containment(
        const std::vector<std::string>& source_distinct_atoms) const;

    /// Version-tagged JSON serialization. Tables are stored inline so a
    /// saved index is self-contained. Deterministic output.
    void save(const std::filesystem::path& path) const;
    static LakeIndex load(const std::filesystem::path& path);

    const IoOptions& options() const { return options_; }

  private:
    void index_tables();

    IoOptions options_;
    std::vector<Table> tables_;
    std::unordered_map<std::string, std::size_t> table_ids_;
    ValuePool pool_;
    /// postings_[atom id] = sorted column refs.
    std::vector<std::vector<ColumnRef>> postings_;
    /// column_ids_[table][column] = sorted distinct atom ids.
    std::vector<std::vector<std::vector<std::uint32_t>>> column_ids_;
};

}  // namespace reclaim
