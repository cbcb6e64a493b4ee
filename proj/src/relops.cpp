#include "reclaim/relops.hpp"

#include <algorithm>
#include <set>

#include "reclaim/errors.hpp"

namespace reclaim::relops {

namespace {

std::size_t require_column(const Table& t, const std::string& name) {
    auto idx = t.column_index(name);
    if (!idx) {
        throw SchemaError("table '" + t.name() + "': column '" + name + "' not found");
    }
    return *idx;
}

Table dedup(const Table& t) {
    Table out(t.name(), t.columns());
    std::set<Row> seen;
    for (const Row& row : t.rows()) {
        if (seen.insert(row).second) out.add_row(row);
    }
    return out;
}

}  // namespace

Table project(const Table& t, const std::vector<std::string>& cols) {
    std::vector<std::size_t> pos;
    pos.reserve(cols.size());
    for (const auto& name : cols) pos.push_back(require_column(t, name));
    Table out(t.name(), cols);
    out.reserve(t.row_count());
    for (const Row& row : t.rows()) {
        Row projected;
        projected.reserve(pos.size());
        for (std::size_t p : pos) projected.push_back(row[p]);
        out.add_row(std::move(projected));
    }
    return out;
}

Table select(const Table& t, const SelectionPredicate& pred) {
    Table out(t.name(), t.columns());
    if (const auto* km = std::get_if<KeyMembership>(&pred)) {
        const auto pos = key_positions(t, km->key);
        for (const Row& row : t.rows()) {
            KeyTuple tuple;
            tuple.reserve(pos.size());
            bool valid = true;
            for (std::size_t p : pos) {
                if (!row[p].is_atom()) {
                    valid = false;
                    break;
                }
                tuple.push_back(row[p].text());
            }
            if (valid && km->allowed.count(tuple)) out.add_row(row);
        }
        return out;
    }
    const auto& ce = std::get<ColumnEquals>(pred);
    const std::size_t left = require_column(t, ce.left);
    const std::size_t right = require_column(t, ce.right);
    for (const Row& row : t.rows()) {
        const bool keep = ce.non_null ? row[left].matches(row[right])
                                      : row[left] == row[right];
        if (keep) out.add_row(row);
    }
    return out;
}

Table outer_union(const Table& t1, const Table& t2) {
    std::vector<std::string> columns = t1.columns();
    for (const auto& name : t2.columns()) {
        if (!t1.has_column(name)) columns.push_back(name);
    }
    Table out(t1.name() + "+" + t2.name(), columns);
    out.reserve(t1.row_count() + t2.row_count());

    for (const Row& row : t1.rows()) {
        Row padded = row;
        padded.resize(columns.size(), Cell::null());
        out.add_row(std::move(padded));
    }
    std::vector<std::size_t> mapping(columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) {
        auto idx = t2.column_index(columns[c]);
        mapping[c] = idx ? *idx : static_cast<std::size_t>(-1);
    }
    for (const Row& row : t2.rows()) {
        Row padded;
        padded.reserve(columns.size());
        for (std::size_t c = 0; c < columns.size(); ++c) {
            padded.push_back(mapping[c] == static_cast<std::size_t>(-1) ? Cell::null()
                                                                        : row[mapping[c]]);
        }
        out.add_row(std::move(padded));
    }
    return out;
}

bool subsumes(const Row& winner, const Row& loser) {
    bool extra = false;
    for (std::size_t i = 0; i < winner.size(); ++i) {
        if (loser[i].has_value()) {
            if (!(winner[i].has_value() && winner[i] == loser[i])) return false;
        } else if (winner[i].has_value()) {
            extra = true;
        }
    }
    return extra;
}

bool complementary(const Row& a, const Row& b) {
    bool shared = false;
    bool a_fills = false;
    bool b_fills = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const bool av = a[i].has_value();
        const bool bv = b[i].has_value();
        if (av && bv) {
            if (a[i] != b[i]) return false;
            shared = true;
        } else if (av) {
            a_fills = true;
        } else if (bv) {
            b_fills = true;
        }
    }
    return shared && a_fills && b_fills;
}

Row merge_rows(const Row& a, const Row& b) {
    Row merged;
    merged.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        merged.push_back(a[i].has_value() ? a[i] : b[i]);
    }
    return merged;
}

Table subsume(const Table& t) {
    const Table deduped = dedup(t);
    const auto& rows = deduped.rows();
    std::vector<bool> removed(rows.size(), false);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < rows.size(); ++j) {
            if (i == j) continue;
            if (subsumes(rows[j], rows[i])) {
                removed[i] = true;
                break;
            }
        }
    }
    Table out(t.name(), t.columns());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!removed[i]) out.add_row(rows[i]);
    }
    return out;
}

Table complement(const Table& t) {
    std::vector<Row> rows = dedup(t).rows();
    // Round-based closure: merge every complementary pair of this round's
    // rows, then retire the rows that merged. Keeping a row live for the
    // whole round lets it merge with several partners.
    while (true) {
        std::vector<Row> merges;
        std::vector<bool> participated(rows.size(), false);
        std::set<Row> produced;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            for (std::size_t j = i + 1; j < rows.size(); ++j) {
                if (complementary(rows[i], rows[j])) {
                    Row merged = merge_rows(rows[i], rows[j]);
                    participated[i] = true;
                    participated[j] = true;
                    if (produced.insert(merged).second) merges.push_back(std::move(merged));
                }
            }
        }
        if (merges.empty()) break;
        std::vector<Row> next;
        std::set<Row> kept;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (!participated[i] && kept.insert(rows[i]).second) next.push_back(rows[i]);
        }
        for (Row& merged : merges) {
            if (kept.insert(merged).second) next.push_back(std::move(merged));
        }
        rows = std::move(next);
    }
    Table out(t.name(), t.columns());
    for (Row& row : rows) out.add_row(std::move(row));
    return out;
}

Table minimal_form(const Table& t) {
    Table current = dedup(t);
    while (true) {
        Table next = subsume(complement(current));
        if (next.rows() == current.rows()) return next;
        current = std::move(next);
    }
}

Table join_direct(const Table& t1, const Table& t2, const std::vector<std::string>& on) {
    if (on.empty()) {
        throw ContractError("join_direct: empty join column list");
    }
    std::vector<std::size_t> pos1, pos2;
    for (const auto& name : on) {
        pos1.push_back(require_column(t1, name));
        pos2.push_back(require_column(t2, name));
    }
    std::vector<std::string> columns = t1.columns();
    std::vector<std::size_t> rest2;
    for (std::size_t c = 0; c < t2.column_count(); ++c) {
        const auto& name = t2.columns()[c];
        if (std::find(on.begin(), on.end(), name) == on.end()) {
            if (t1.has_column(name)) {
                throw ContractError("join_direct: shared column '" + name +
                                    "' not in join list");
            }
            columns.push_back(name);
            rest2.push_back(c);
        }
    }
    Table out(t1.name() + "*" + t2.name(), columns);
    for (const Row& r1 : t1.rows()) {
        for (const Row& r2 : t2.rows()) {
            bool match = true;
            for (std::size_t k = 0; k < pos1.size(); ++k) {
                if (!r1[pos1[k]].matches(r2[pos2[k]])) {
                    match = false;
                    break;
                }
            }
            if (!match) continue;
            Row joined = r1;
            for (std::size_t c : rest2) joined.push_back(r2[c]);
            out.add_row(std::move(joined));
        }
    }
    return out;
}

namespace {

/// Non-null tuples over `cols`, for the join rewrite's selection.
std::set<std::vector<Cell>> value_tuples(const Table& t, const std::vector<std::string>& cols) {
    std::vector<std::size_t> pos;
    for (const auto& name : cols) pos.push_back(require_column(t, name));
    std::set<std::vector<Cell>> tuples;
    for (const Row& row : t.rows()) {
        std::vector<Cell> tuple;
        tuple.reserve(pos.size());
        bool valid = true;
        for (std::size_t p : pos) {
            if (!row[p].has_value()) {
                valid = false;
                break;
            }
            tuple.push_back(row[p]);
        }
        if (valid) tuples.insert(std::move(tuple));
    }
    return tuples;
}

Table append_constant_column(const Table& t, const std::string& name, const Cell& value) {
    std::vector<std::string> columns = t.columns();
    columns.push_back(name);
    Table out(t.name(), columns);
    for (const Row& row : t.rows()) {
        Row extended = row;
        extended.push_back(value);
        out.add_row(std::move(extended));
    }
    return out;
}

}  // namespace

Table join_via_rewrite(const Table& t1, const Table& t2, const std::vector<std::string>& on) {
    if (on.empty()) {
        throw ContractError("join_via_rewrite: empty join column list");
    }
    // σ(T1.C = T2.C ≠ ⊥, β(κ(T1 ⊎ T2))): the selection keeps rows whose
    // C-tuple is non-null and occurs on both sides.
    const Table merged = subsume(complement(outer_union(t1, t2)));
    const auto left_tuples = value_tuples(t1, on);
    const auto right_tuples = value_tuples(t2, on);

    std::vector<std::size_t> pos;
    for (const auto& name : on) pos.push_back(require_column(merged, name));
    Table out(t1.name() + "*" + t2.name(), merged.columns());
    for (const Row& row : merged.rows()) {
        std::vector<Cell> tuple;
        tuple.reserve(pos.size());
        bool valid = true;
        for (std::size_t p : pos) {
            if (!row[p].has_value()) {
                valid = false;
                break;
            }
            tuple.push_back(row[p]);
        }
        if (valid && left_tuples.count(tuple) && right_tuples.count(tuple)) {
            out.add_row(row);
        }
    }
    return out;
}

Table left_join_via_rewrite(const Table& t1, const Table& t2,
                            const std::vector<std::string>& on) {
    return subsume(outer_union(join_via_rewrite(t1, t2, on), t1));
}

Table full_outer_join_via_rewrite(const Table& t1, const Table& t2,
                                  const std::vector<std::string>& on) {
    return subsume(outer_union(left_join_via_rewrite(t1, t2, on), t2));
}

Table cross_product_via_rewrite(const Table& t1, const Table& t2) {
    for (const auto& name : t2.columns()) {
        if (t1.has_column(name)) {
            throw ContractError("cross_product_via_rewrite: schemas share column '" + name + "'");
        }
    }
    std::vector<std::string> columns = t1.columns();
    columns.insert(columns.end(), t2.columns().begin(), t2.columns().end());
    if (t1.row_count() == 0 || t2.row_count() == 0) {
        return Table(t1.name() + "x" + t2.name(), columns);
    }
    std::string link = "__link";
    while (t1.has_column(link) || t2.has_column(link)) link += "_";
    const Cell tag = Cell::atom("1");
    const Table united = outer_union(append_constant_column(t1, link, tag),
                                     append_constant_column(t2, link, tag));
    Table merged = complement(united);
    Table out = project(merged, columns);
    out.set_name(t1.name() + "x" + t2.name());
    return out;
}

bool rows_equal_multiset(const Table& t1, const Table& t2) {
    if (t1.column_count() != t2.column_count()) return false;
    std::vector<std::size_t> mapping;
    mapping.reserve(t1.column_count());
    for (const auto& name : t1.columns()) {
        auto idx = t2.column_index(name);
        if (!idx) throw SchemaError("rows_equal_multiset: column sets differ ('" + name + "')");
        mapping.push_back(*idx);
    }
    if (t1.row_count() != t2.row_count()) return false;
    std::multiset<Row> left(t1.rows().begin(), t1.rows().end());
    std::multiset<Row> right;
    for (const Row& row : t2.rows()) {
        Row aligned;
        aligned.reserve(mapping.size());
        for (std::size_t p : mapping) aligned.push_back(row[p]);
        right.insert(std::move(aligned));
    }
    return left == right;
}

}  // namespace reclaim::relops
