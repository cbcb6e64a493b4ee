#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "reclaim/io.hpp"
#include "reclaim/table.hpp"

namespace reclaim::benchgen {

struct BenchSpec {
    std::uint64_t seed = 1;
    std::size_t base_tables = 8;
    std::size_t rows = 50;
    std::size_t columns = 6;
    double null_rate = 0.5;
    double error_rate = 0.5;
    std::size_t query_count = 10;
    /// Complementary split variants (perfect reclamation by construction)
    /// instead of independent nullified + erroneous variants.
    bool complementary_mode = false;
};

/// Replace unprotected cells by Null with probability `p`. Deterministic in
/// (table content, seed). Protected columns (keys, join links) are exempt.
Table nullify(const Table& t, const std::vector<std::string>& protected_cols,
              double p, std::uint64_t seed);

/// Replace unprotected cells by globally unique tokens "ERR-<table>-<i>-<j>"
/// with probability `p`; the token can never collide with real data, so
/// leakage is countable by prefix scan.
Table errorize(const Table& t, const std::vector<std::string>& protected_cols,
               double p, std::uint64_t seed);

/**
 * Split a table into two variants so that every unprotected cell is Null in
 * exactly one of them (per column, a seeded shuffle alternates rows between
 * the variants, so each keeps about half of every column). Complementation
 * of the pair reconstructs the original exactly.
 */
std::pair<Table, Table> complementary_split(const Table& t,
                                            const std::vector<std::string>& protected_cols,
                                            std::uint64_t seed);

struct GeneratedBase {
    Table table;
    KeySpec key;
    /// Key columns plus foreign-key link columns; exempt from corruption.
    std::vector<std::string> protected_cols;
    /// Index of the base this table's link column refers to, if any.
    std::optional<std::size_t> fk_parent;
    std::string fk_column;
};

struct GeneratedSource {
    Table table;
    KeySpec key;
    nlohmann::json plan;
    std::vector<std::string> bases_used;
};

/// Random base tables with unique keys and foreign-key links between
/// consecutive tables (joinable chains for multi-table queries).
std::vector<GeneratedBase> generate_bases(const BenchSpec& spec);

/**
 * Random select/project/join/union queries over the base tables, executed
 * with the direct relational operators. Join queries keep every key column
 * along the joined chain (only attribute columns are randomly projected) and
 * declare the chain's root key in complementary mode, the leaf key otherwise.
 * Each output is deduplicated and must satisfy its declared key (unique,
 * non-null); offending plans are resampled a bounded number of times, then
 * skipped with a warning.
 */
std::vector<GeneratedSource> generate_queries(const std::vector<GeneratedBase>& bases,
                                              const BenchSpec& spec,
                                              std::vector<std::string>* warnings = nullptr);

struct BenchmarkLayout {
    std::filesystem::path root;
    std::filesystem::path lake_dir;
    std::filesystem::path source_dir;
    std::filesystem::path manifest_path;
    nlohmann::json manifest;
};

/**
 * Generate and write a full benchmark: lake/ with the variant tables,
 * sources/ with the query outputs, and manifest.json recording the spec,
 * every variant's lineage, every source's plan and key, and which variants
 * are erroneous. Same spec + seed produce byte-identical trees.
 */
BenchmarkLayout write_benchmark(const BenchSpec& spec, const std::filesystem::path& out_dir,
                                const IoOptions& io = {});

}  // namespace reclaim::benchgen
