#pragma once

#include <string>
#include <utility>
#include <vector>

#include "reclaim/table.hpp"

namespace reclaim::integrate {

struct IntegrationStep {
    std::string op;
    std::vector<std::string> tables;
    /// Error-aware instance similarity of the running result after this step.
    double ise = 0.0;
};

struct IntegrationTrace {
    std::vector<IntegrationStep> steps;
    std::vector<std::string> warnings;
};

/**
 * Project every table onto its intersection with the source columns (in
 * source order) and keep only rows whose key-tuple occurs in the source.
 * Tables lacking any key column are dropped with a warning (they cannot be
 * key-selected).
 */
std::vector<Table> project_select(const std::vector<Table>& tables, const Table& source,
                                  const KeySpec& key, IntegrationTrace* trace = nullptr);

/// Concatenate tables with identical column lists: one table per schema
/// class, classes in first-appearance order. (project_select emits columns
/// in source order, so equal sets imply equal lists here.)
std::vector<Table> inner_union_same_schema(const std::vector<Table>& tables);

/**
 * Replace Nulls that sit where the source itself is Null by labeled nulls,
 * one shared label per (key, column) across all tables, so those positions
 * survive κ/β as agreeing values instead of being treated as absent.
 */
std::vector<Table> label_source_nulls(const std::vector<Table>& tables, const Table& source,
                                      const KeySpec& key);

/**
 * Integration pipeline: project/select, inner-union same schemas, label
 * source nulls, take minimal form per table, then fold with outer union
 * applying κ and β only when they do not lower the predicted score; finally
 * strip labels, pad missing source columns with Null, and order columns as
 * the source does. Output schema equals the source schema exactly; rows for
 * keys outside the source never appear. Throws ContractError on an empty
 * input list.
 */
std::pair<Table, IntegrationTrace> integrate(const std::vector<Table>& tables,
                                             const Table& source, const KeySpec& key);

}  // namespace reclaim::integrate
