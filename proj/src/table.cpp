#include "reclaim/table.hpp"

#include <algorithm>

namespace reclaim {

Table::Table(std::string name, std::vector<std::string> columns)
    : name_(std::move(name)), columns_(std::move(columns)) {
    for (std::size_t i = 0; i < columns_.size(); ++i) {
        if (columns_[i].empty()) {
            throw SchemaError("table '" + name_ + "': empty column name");
        }
        auto [it, inserted] = index_.emplace(columns_[i], i);
        (void)it;
        if (!inserted) {
            throw SchemaError("table '" + name_ + "': duplicate column '" + columns_[i] + "'");
        }
    }
}

void Table::add_row(Row row) {
    if (row.size() != columns_.size()) {
        throw ContractError("table '" + name_ + "': row arity " + std::to_string(row.size()) +
                            " != column count " + std::to_string(columns_.size()));
    }
    rows_.push_back(std::move(row));
}

bool Table::has_column(const std::string& name) const { return index_.count(name) != 0; }

std::optional<std::size_t> Table::column_index(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::vector<std::size_t> key_positions(const Table& t, const KeySpec& key) {
    if (key.key_columns.empty()) {
        throw SchemaError("table '" + t.name() + "': empty key specification");
    }
    std::vector<std::size_t> pos;
    pos.reserve(key.key_columns.size());
    for (const auto& name : key.key_columns) {
        auto idx = t.column_index(name);
        if (!idx) {
            throw SchemaError("table '" + t.name() + "': key column '" + name + "' not found");
        }
        pos.push_back(*idx);
    }
    return pos;
}

std::map<KeyTuple, std::vector<std::size_t>> key_projection(const Table& t, const KeySpec& key) {
    const auto pos = key_positions(t, key);
    std::map<KeyTuple, std::vector<std::size_t>> groups;
    for (std::size_t r = 0; r < t.row_count(); ++r) {
        KeyTuple tuple;
        tuple.reserve(pos.size());
        bool valid = true;
        for (std::size_t p : pos) {
            const Cell& cell = t.at(r, p);
            if (!cell.is_atom()) {
                valid = false;
                break;
            }
            tuple.push_back(cell.text());
        }
        if (valid) groups[std::move(tuple)].push_back(r);
    }
    return groups;
}

void validate_source_key(const Table& t, const KeySpec& key) {
    const auto groups = key_projection(t, key);
    std::size_t covered = 0;
    for (const auto& [tuple, rows] : groups) {
        if (rows.size() > 1) {
            std::string shown;
            for (const auto& part : tuple) shown += (shown.empty() ? "" : "|") + part;
            throw SchemaError("table '" + t.name() + "': key tuple '" + shown + "' occurs " +
                              std::to_string(rows.size()) + " times");
        }
        covered += rows.size();
    }
    if (covered != t.row_count()) {
        throw SchemaError("table '" + t.name() + "': " +
                          std::to_string(t.row_count() - covered) +
                          " row(s) with null or non-atom key cells");
    }
}

std::vector<std::string> sorted_distinct_atoms(const Table& t, std::size_t col) {
    std::vector<std::string> atoms;
    atoms.reserve(t.row_count());
    for (std::size_t r = 0; r < t.row_count(); ++r) {
        const Cell& cell = t.at(r, col);
        if (cell.is_atom()) atoms.push_back(cell.text());
    }
    std::sort(atoms.begin(), atoms.end());
    atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
    return atoms;
}

}  // namespace reclaim
