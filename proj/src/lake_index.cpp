#include "reclaim/lake_index.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <unordered_set>

#include "json.hpp"
#include "reclaim/errors.hpp"

namespace reclaim {

namespace fs = std::filesystem;
using nlohmann::json;

std::uint32_t ValuePool::intern(std::string_view text) {
    const auto it = ids_.find(std::string(text));
    if (it != ids_.end()) return it->second;
    const auto id = static_cast<std::uint32_t>(texts_.size());
    texts_.emplace_back(text);
    ids_.emplace(texts_.back(), id);
    return id;
}

std::optional<std::uint32_t> ValuePool::find(std::string_view text) const {
    const auto it = ids_.find(std::string(text));
    if (it == ids_.end()) return std::nullopt;
    return it->second;
}

LakeIndex LakeIndex::build(const fs::path& dir, const IoOptions& opts,
                           std::vector<std::string>* warnings) {
    if (!fs::is_directory(dir)) {
        throw IoError("lake directory not found: " + dir.string());
    }
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".csv") {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end(),
              [](const fs::path& a, const fs::path& b) { return a.filename() < b.filename(); });

    std::vector<Table> tables;
    tables.reserve(files.size());
    for (const auto& file : files) {
        try {
            tables.push_back(read_table(file, opts));
        } catch (const std::exception& e) {
            if (warnings) {
                warnings->push_back("skipped " + file.filename().string() + ": " + e.what());
            }
        }
    }
    if (tables.empty()) {
        throw IoError("no readable tables in lake directory: " + dir.string());
    }
    return build_from_tables(std::move(tables), opts);
}

LakeIndex LakeIndex::build_from_tables(std::vector<Table> tables, const IoOptions& opts) {
    LakeIndex index;
    index.options_ = opts;
    index.tables_ = std::move(tables);
    index.index_tables();
    return index;
}

void LakeIndex::index_tables() {
    table_ids_.clear();
    postings_.clear();
    column_ids_.clear();
    column_ids_.resize(tables_.size());

    for (std::size_t t = 0; t < tables_.size(); ++t) {
        const Table& table = tables_[t];
        if (!table_ids_.emplace(table.name(), t).second) {
            throw SchemaError("duplicate lake table name: '" + table.name() + "'");
        }
        column_ids_[t].resize(table.column_count());
        for (std::size_t c = 0; c < table.column_count(); ++c) {
            std::unordered_set<std::uint32_t> distinct;
            for (const Row& row : table.rows()) {
                if (row[c].is_atom()) distinct.insert(pool_.intern(row[c].text()));
            }
            auto& ids = column_ids_[t][c];
            ids.assign(distinct.begin(), distinct.end());
            std::sort(ids.begin(), ids.end());

            if (postings_.size() < pool_.size()) postings_.resize(pool_.size());
            const ColumnRef ref{static_cast<std::uint32_t>(t), static_cast<std::uint32_t>(c)};
            for (std::uint32_t id : ids) postings_[id].push_back(ref);
        }
    }
}

std::optional<std::size_t> LakeIndex::table_id(const std::string& name) const {
    const auto it = table_ids_.find(name);
    if (it == table_ids_.end()) return std::nullopt;
    return it->second;
}

const std::vector<std::uint32_t>& LakeIndex::column_ids(std::size_t table,
                                                        std::size_t column) const {
    return column_ids_.at(table).at(column);
}

std::size_t LakeIndex::column_cardinality(std::size_t table, std::size_t column) const {
    return column_ids(table, column).size();
}

std::size_t LakeIndex::posting_count() const {
    std::size_t total = 0;
    for (const auto& refs : postings_) total += refs.size();
    return total;
}

ResolvedColumn LakeIndex::resolve(const std::vector<std::string>& distinct_atoms) const {
    ResolvedColumn out;
    out.distinct_count = distinct_atoms.size();
    out.ids.reserve(distinct_atoms.size());
    for (const auto& text : distinct_atoms) {
        if (auto id = pool_.find(text)) out.ids.push_back(*id);
    }
    std::sort(out.ids.begin(), out.ids.end());
    return out;
}

std::vector<ContainmentHit> LakeIndex::column_containment(
    const std::vector<std::string>& source_distinct_atoms) const {
    if (source_distinct_atoms.empty()) {
        throw ContractError("column_containment: source column has no atoms");
    }
    std::vector<ContainmentHit> hits;
    const ResolvedColumn resolved = resolve(source_distinct_atoms);

    // Each posting is one shared atom, so walking the postings of the
    // resolved ids counts the exact overlap per column.
    std::map<ColumnRef, std::size_t> overlap;
    for (std::uint32_t id : resolved.ids) {
        for (const ColumnRef& ref : postings_[id]) ++overlap[ref];
    }
    hits.reserve(overlap.size());
    for (const auto& [ref, count] : overlap) {
        const Table& table = tables_[ref.table];
        hits.push_back({table.name(), table.columns()[ref.column],
                        static_cast<double>(count) / static_cast<double>(resolved.distinct_count),
                        count});
    }
    std::sort(hits.begin(), hits.end(), [](const ContainmentHit& a, const ContainmentHit& b) {
        if (a.fraction != b.fraction) return a.fraction > b.fraction;
        if (a.table != b.table) return a.table < b.table;
        return a.column < b.column;
    });
    return hits;
}

namespace {

json cell_to_json(const Cell& cell) {
    switch (cell.kind()) {
        case CellKind::Null: return nullptr;
        case CellKind::Atom: return cell.text();
        case CellKind::LabeledNull: break;
    }
    throw ContractError("labeled nulls cannot be serialized");
}

Cell cell_from_json(const json& j) {
    if (j.is_null()) return Cell::null();
    if (j.is_string()) {
        auto text = j.get<std::string>();
        if (text.empty()) throw ParseError("index atom must be non-empty");
        return Cell::atom(std::move(text));
    }
    throw ParseError("index cell must be null or string");
}

}  // namespace

void LakeIndex::save(const fs::path& path) const {
    json doc;
    doc["format"] = "reclaim-index";
    doc["version"] = 1;
    doc["options"] = {{"delimiter", std::string(1, options_.delimiter)},
                      {"null_tokens", options_.null_tokens},
                      {"case_fold", options_.case_fold},
                      {"null_output", options_.null_output}};
    json tables = json::array();
    for (const Table& table : tables_) {
        json rows = json::array();
        for (const Row& row : table.rows()) {
            json cells = json::array();
            for (const Cell& cell : row) cells.push_back(cell_to_json(cell));
            rows.push_back(std::move(cells));
        }
        tables.push_back({{"name", table.name()},
                          {"columns", table.columns()},
                          {"rows", std::move(rows)}});
    }
    doc["tables"] = std::move(tables);

    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out << doc.dump(2) << '\n';
    if (!out) throw IoError("write failed: " + path.string());
}

LakeIndex LakeIndex::load(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open index: " + path.string());
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& e) {
        throw ParseError("malformed index file " + path.string() + ": " + e.what());
    }
    if (doc.value("format", "") != "reclaim-index") {
        throw ParseError("not an index file: " + path.string());
    }
    if (doc.value("version", 0) != 1) {
        throw ParseError("unsupported index version in " + path.string());
    }

    IoOptions opts;
    const json& joptions = doc.at("options");
    const auto delim = joptions.at("delimiter").get<std::string>();
    if (delim.size() != 1) throw ParseError("index delimiter must be one character");
    opts.delimiter = delim[0];
    opts.null_tokens = joptions.at("null_tokens").get<std::vector<std::string>>();
    opts.case_fold = joptions.at("case_fold").get<bool>();
    opts.null_output = joptions.at("null_output").get<std::string>();

    std::vector<Table> tables;
    for (const json& jtable : doc.at("tables")) {
        Table table(jtable.at("name").get<std::string>(),
                    jtable.at("columns").get<std::vector<std::string>>());
        for (const json& jrow : jtable.at("rows")) {
            Row row;
            row.reserve(jrow.size());
            for (const json& jcell : jrow) row.push_back(cell_from_json(jcell));
            table.add_row(std::move(row));
        }
        tables.push_back(std::move(table));
    }
    return build_from_tables(std::move(tables), opts);
}

}  // namespace reclaim
