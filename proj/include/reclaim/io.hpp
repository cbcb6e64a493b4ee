#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "reclaim/table.hpp"

namespace reclaim {

/**
 * CSV dialect and cell interpretation options shared by readers and writers.
 * A cell whose canonicalized text equals one of `null_tokens` becomes Null;
 * text that trims to empty is always Null (atoms are non-empty by invariant).
 */
struct IoOptions {
    char delimiter = ',';
    std::vector<std::string> null_tokens = {"", "NULL", "null", "nan"};
    bool case_fold = false;
    /// Token written for Null cells.
    std::string null_output = "";
};

/**
 * Read a delimited UTF-8 file with a mandatory header row. Quoting follows
 * the usual CSV rules: fields may be wrapped in double quotes, embedded
 * quotes are doubled, and quoted fields may contain delimiters and newlines.
 *
 * Throws IoError if the file cannot be opened, ParseError on structural
 * problems (arity mismatch, unterminated quote) with a line number, and
 * SchemaError on duplicate or empty headers. The table name defaults to the
 * file stem.
 */
Table read_table(const std::filesystem::path& path, const IoOptions& opts = {});

/**
 * Write `t` as CSV. Fields containing the delimiter, quotes, CR or LF are
 * quoted with internal quotes doubled. Labeled nulls are an in-flight
 * integration artifact and must never be serialized: throws ContractError.
 */
void write_table(const Table& t, const std::filesystem::path& path,
                 const IoOptions& opts = {});

}  // namespace reclaim
