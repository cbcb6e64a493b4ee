#include "reclaim/integrate.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "reclaim/errors.hpp"
#include "reclaim/metrics.hpp"
#include "reclaim/relops.hpp"

namespace reclaim::integrate {

namespace {

std::int64_t score_of(const Table& work, const Table& source, const KeySpec& key) {
    // Numerators are comparable directly: the denominator 2 * n * |S| is
    // fixed by the source. aligned_to_schema inside ise_exact lowers labels
    // and pads missing columns, which is exactly the view being optimized.
    return metrics::ise_exact(source, work, key).num;
}

Table strip_labels(const Table& t) {
    Table out(t.name(), t.columns());
    out.reserve(t.row_count());
    for (const Row& row : t.rows()) {
        Row stripped;
        stripped.reserve(row.size());
        for (const Cell& cell : row) {
            stripped.push_back(cell.is_labeled() ? Cell::null() : cell);
        }
        out.add_row(std::move(stripped));
    }
    return out;
}

}  // namespace

std::vector<Table> project_select(const std::vector<Table>& tables, const Table& source,
                                  const KeySpec& key, IntegrationTrace* trace) {
    std::set<KeyTuple> allowed;
    for (const auto& [tuple, rows] : key_projection(source, key)) allowed.insert(tuple);

    std::vector<Table> out;
    out.reserve(tables.size());
    for (const Table& t : tables) {
        const bool keyed = std::all_of(
            key.key_columns.begin(), key.key_columns.end(),
            [&](const std::string& name) { return t.has_column(name); });
        if (!keyed) {
            if (trace) {
                trace->warnings.push_back("table '" + t.name() +
                                          "' dropped: key columns incomplete");
            }
            continue;
        }
        std::vector<std::string> cols;
        for (const auto& name : source.columns()) {
            if (t.has_column(name)) cols.push_back(name);
        }
        Table projected = relops::project(t, cols);
        projected.set_name(t.name());
        Table selected = relops::select(projected, relops::KeyMembership{key, allowed});
        selected.set_name(t.name());
        out.push_back(std::move(selected));
    }
    return out;
}

std::vector<Table> inner_union_same_schema(const std::vector<Table>& tables) {
    std::vector<Table> out;
    std::map<std::vector<std::string>, std::size_t> class_of;
    for (const Table& t : tables) {
        const auto [it, fresh] = class_of.emplace(t.columns(), out.size());
        if (fresh) {
            out.push_back(t);
            continue;
        }
        Table& acc = out[it->second];
        acc.set_name(acc.name() + "+" + t.name());
        for (const Row& row : t.rows()) acc.add_row(row);
    }
    return out;
}

std::vector<Table> label_source_nulls(const std::vector<Table>& tables, const Table& source,
                                      const KeySpec& key) {
    const auto src_pos = key_positions(source, key);
    std::map<KeyTuple, std::size_t> source_row_of;
    for (const auto& [tuple, rows] : key_projection(source, key)) {
        source_row_of.emplace(tuple, rows.front());
    }

    // One shared label per (key, source column): equal labels merge under κ
    // exactly like equal atoms would.
    std::map<std::pair<KeyTuple, std::string>, std::uint64_t> labels;
    std::uint64_t next_label = 1;

    std::vector<Table> out;
    out.reserve(tables.size());
    for (const Table& t : tables) {
        const auto pos = key_positions(t, key);
        Table labeled(t.name(), t.columns());
        labeled.reserve(t.row_count());
        for (const Row& row : t.rows()) {
            KeyTuple tuple;
            bool atoms = true;
            for (std::size_t p : pos) {
                if (!row[p].is_atom()) {
                    atoms = false;
                    break;
                }
                tuple.push_back(row[p].text());
            }
            const auto at = atoms ? source_row_of.find(tuple) : source_row_of.end();
            if (at == source_row_of.end()) {
                labeled.add_row(row);
                continue;
            }
            const Row& s = source.row(at->second);
            Row next = row;
            for (std::size_t c = 0; c < t.column_count(); ++c) {
                if (!next[c].is_null()) continue;
                const auto sc = source.column_index(t.columns()[c]);
                if (!sc || s[*sc].has_value()) continue;
                const auto [it, fresh] =
                    labels.emplace(std::pair{tuple, t.columns()[c]}, next_label);
                if (fresh) ++next_label;
                next[c] = Cell::labeled(it->second);
            }
            labeled.add_row(std::move(next));
        }
        out.push_back(std::move(labeled));
    }
    return out;
}

std::pair<Table, IntegrationTrace> integrate(const std::vector<Table>& tables,
                                             const Table& source, const KeySpec& key) {
    if (tables.empty()) {
        throw ContractError("integrate: empty table list");
    }
    IntegrationTrace trace;

    std::vector<Table> staged = project_select(tables, source, key, &trace);
    if (staged.empty()) {
        throw ContractError("integrate: no table retains the key columns");
    }
    staged = inner_union_same_schema(staged);
    staged = label_source_nulls(staged, source, key);
    for (Table& t : staged) {
        std::string name = t.name();
        t = relops::minimal_form(t);
        t.set_name(std::move(name));
    }

    Table work = staged.front();
    std::int64_t score = score_of(work, source, key);
    trace.steps.push_back({"minimal_form", {work.name()}, metrics::ise(source, work, key)});

    for (std::size_t i = 1; i < staged.size(); ++i) {
        const Table& next = staged[i];
        const std::string left_name = work.name();
        work = relops::outer_union(work, next);
        work.set_name(left_name + "+" + next.name());
        score = score_of(work, source, key);
        trace.steps.push_back({"outer_union", {left_name, next.name()},
                               metrics::ise(source, work, key)});

        Table folded = relops::complement(work);
        folded.set_name(work.name());
        if (const std::int64_t s = score_of(folded, source, key); s >= score) {
            work = std::move(folded);
            score = s;
            trace.steps.push_back({"complement", {work.name()}, metrics::ise(source, work, key)});
        }
        Table trimmed = relops::subsume(work);
        trimmed.set_name(work.name());
        if (const std::int64_t s = score_of(trimmed, source, key); s >= score) {
            work = std::move(trimmed);
            score = s;
            trace.steps.push_back({"subsume", {work.name()}, metrics::ise(source, work, key)});
        }
    }

    // Final shape: labels lowered, every source column present, source order.
    Table lowered = strip_labels(work);
    std::vector<std::string> missing;
    for (const auto& name : source.columns()) {
        if (!lowered.has_column(name)) missing.push_back(name);
    }
    if (!missing.empty()) {
        std::vector<std::string> cols = lowered.columns();
        cols.insert(cols.end(), missing.begin(), missing.end());
        Table padded(lowered.name(), cols);
        padded.reserve(lowered.row_count());
        for (const Row& row : lowered.rows()) {
            Row wide = row;
            wide.resize(cols.size(), Cell::null());
            padded.add_row(std::move(wide));
        }
        lowered = std::move(padded);
    }
    Table result = relops::project(lowered, source.columns());
    result.set_name("reclaimed_" + source.name());
    trace.steps.push_back({"finalize", {result.name()}, metrics::ise(source, result, key)});
    return {std::move(result), std::move(trace)};
}

}  // namespace reclaim::integrate
