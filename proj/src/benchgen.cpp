#include "reclaim/benchgen.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <set>
#include <unordered_set>
#include <utility>

#include "reclaim/errors.hpp"
#include "reclaim/relops.hpp"

namespace reclaim::benchgen {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Stream seeds are derived, never shared: one generator per (purpose, index)
// keeps every artifact independently reproducible.
enum Salt : std::uint64_t {
    SaltFk = 0xA1,
    SaltSplit = 0xB2,
    SaltNull = 0xC3,
    SaltError = 0xD4,
    SaltQuery = 0xE5,
};

std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
    std::uint64_t z = a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t mix(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    return mix(mix(a, b), c);
}

// mt19937_64 output is pinned by the standard; the scaling below avoids the
// implementation-defined std distributions so streams are portable.
struct Rng {
    explicit Rng(std::uint64_t seed) : gen(seed) {}

    double unit() { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }
    bool chance(double p) { return unit() < p; }
    std::size_t below(std::size_t n) { return static_cast<std::size_t>(gen() % n); }

    std::mt19937_64 gen;
};

void shuffle_indices(std::vector<std::size_t>& idx, Rng& rng) {
    for (std::size_t i = idx.size(); i > 1; --i) {
        std::swap(idx[i - 1], idx[rng.below(i)]);
    }
}

std::string pad_index(std::size_t value, std::size_t width) {
    std::string digits = std::to_string(value);
    if (digits.size() < width) digits.insert(0, width - digits.size(), '0');
    return digits;
}

std::size_t index_width(std::size_t count, std::size_t minimum) {
    std::size_t width = count > 0 ? std::to_string(count - 1).size() : 1;
    return std::max(width, minimum);
}

std::set<std::size_t> protected_positions(const Table& t,
                                          const std::vector<std::string>& protected_cols) {
    std::set<std::size_t> positions;
    for (const auto& name : protected_cols) {
        if (auto pos = t.column_index(name)) positions.insert(*pos);
    }
    return positions;
}

Table copy_named(const Table& t, std::string name) {
    Table out(std::move(name), t.columns());
    out.reserve(t.row_count());
    for (const Row& row : t.rows()) out.add_row(row);
    return out;
}

Table dedup_rows(const Table& t) {
    Table out(t.name(), t.columns());
    std::set<Row> seen;
    for (const Row& row : t.rows()) {
        if (seen.insert(row).second) out.add_row(row);
    }
    return out;
}

std::vector<std::string> shared_columns(const Table& a, const Table& b) {
    std::vector<std::string> shared;
    for (const auto& name : a.columns()) {
        if (b.has_column(name)) shared.push_back(name);
    }
    return shared;
}

bool valid_source(const Table& t, const KeySpec& key) {
    if (t.row_count() == 0) return false;
    bool has_non_key = false;
    for (const auto& name : t.columns()) {
        if (std::find(key.key_columns.begin(), key.key_columns.end(), name) ==
            key.key_columns.end()) {
            has_non_key = true;
            break;
        }
    }
    if (!has_non_key) return false;
    try {
        validate_source_key(t, key);
    } catch (const SchemaError&) {
        return false;
    }
    return true;
}

/// Random key subset of `t` under `key`, each distinct key kept with
/// probability `fraction`.
Table select_key_subset(const Table& t, const KeySpec& key, double fraction, Rng& rng) {
    const auto positions = key_positions(t, key);
    std::set<KeyTuple> allowed;
    std::set<KeyTuple> seen;
    for (const Row& row : t.rows()) {
        KeyTuple tuple;
        tuple.reserve(positions.size());
        bool atoms = true;
        for (std::size_t p : positions) {
            if (!row[p].is_atom()) {
                atoms = false;
                break;
            }
            tuple.push_back(row[p].text());
        }
        if (!atoms || !seen.insert(tuple).second) continue;
        if (rng.chance(fraction)) allowed.insert(std::move(tuple));
    }
    return relops::select(t, relops::KeyMembership{key, std::move(allowed)});
}

/**
 * Random projection of `t`: `forced` columns always kept, the rest kept with
 * probability 0.6, and at least one attribute (a column with no "_key"
 * suffix) retained so every source has reclaimable content.
 */
std::vector<std::string> random_projection(const Table& t,
                                           const std::vector<std::string>& forced, Rng& rng) {
    const std::set<std::string> forced_set(forced.begin(), forced.end());
    const auto is_attr = [](const std::string& name) {
        constexpr std::string_view suffix = "_key";
        return name.size() < suffix.size() ||
               name.compare(name.size() - suffix.size(), suffix.size(), suffix) != 0;
    };

    std::vector<bool> keep(t.column_count(), false);
    bool attr_kept = false;
    for (std::size_t c = 0; c < t.column_count(); ++c) {
        const std::string& name = t.columns()[c];
        if (forced_set.count(name)) {
            keep[c] = true;
        } else if (rng.chance(0.6)) {
            keep[c] = true;
            if (is_attr(name)) attr_kept = true;
        }
    }
    if (!attr_kept) {
        for (std::size_t c = 0; c < t.column_count(); ++c) {
            if (is_attr(t.columns()[c])) {
                keep[c] = true;
                break;
            }
        }
    }
    std::vector<std::string> cols;
    for (std::size_t c = 0; c < t.column_count(); ++c) {
        if (keep[c]) cols.push_back(t.columns()[c]);
    }
    return cols;
}

struct QueryAttempt {
    Table table;
    KeySpec key;
    json plan;
    std::vector<std::string> bases_used;
};

QueryAttempt build_select(const std::vector<GeneratedBase>& bases, Rng& rng) {
    const GeneratedBase& base = bases[rng.below(bases.size())];
    const double fraction = 0.5 + 0.4 * rng.unit();
    Table filtered = select_key_subset(base.table, base.key, fraction, rng);
    const auto cols = random_projection(base.table, base.key.key_columns, rng);

    QueryAttempt attempt;
    attempt.table = dedup_rows(relops::project(filtered, cols));
    attempt.key = base.key;
    attempt.plan = {{"kind", "select"},
                    {"base", base.table.name()},
                    {"key_fraction", fraction},
                    {"projection", cols}};
    attempt.bases_used = {base.table.name()};
    return attempt;
}

QueryAttempt build_union(const std::vector<GeneratedBase>& bases, Rng& rng) {
    const GeneratedBase& base = bases[rng.below(bases.size())];
    const std::size_t parts = 2 + rng.below(3);
    std::vector<double> fractions;
    Table unioned("union", base.table.columns());
    for (std::size_t p = 0; p < parts; ++p) {
        const double fraction = 0.3 + 0.4 * rng.unit();
        fractions.push_back(fraction);
        Table part = select_key_subset(base.table, base.key, fraction, rng);
        for (const Row& row : part.rows()) unioned.add_row(row);
    }
    const auto cols = random_projection(base.table, base.key.key_columns, rng);

    QueryAttempt attempt;
    attempt.table = dedup_rows(relops::project(unioned, cols));
    attempt.key = base.key;
    attempt.plan = {{"kind", "union"},
                    {"base", base.table.name()},
                    {"key_fractions", fractions},
                    {"projection", cols}};
    attempt.bases_used = {base.table.name()};
    return attempt;
}

QueryAttempt build_join(const std::vector<GeneratedBase>& bases, bool complementary_mode,
                        Rng& rng) {
    const std::size_t length = (bases.size() >= 3 && rng.chance(0.5)) ? 3 : 2;
    const std::size_t start = rng.below(bases.size() - length + 1);

    Table joined = bases[start].table;
    std::vector<std::string> chain{bases[start].table.name()};
    std::vector<std::string> chain_keys = bases[start].key.key_columns;
    for (std::size_t k = start + 1; k < start + length; ++k) {
        joined = relops::join_direct(joined, bases[k].table,
                                     shared_columns(joined, bases[k].table));
        chain.push_back(bases[k].table.name());
        chain_keys.insert(chain_keys.end(), bases[k].key.key_columns.begin(),
                          bases[k].key.key_columns.end());
    }

    // Root key stays unique through the one-to-one links; the leaf key is
    // unique regardless and forces key-column expansion during reclamation.
    const KeySpec declared =
        complementary_mode ? bases[start].key : bases[start + length - 1].key;
    const double fraction = 0.5 + 0.4 * rng.unit();
    Table filtered = select_key_subset(joined, declared, fraction, rng);
    const auto cols = random_projection(joined, chain_keys, rng);

    QueryAttempt attempt;
    attempt.table = dedup_rows(relops::project(filtered, cols));
    attempt.key = declared;
    attempt.plan = {{"kind", "join"},
                    {"bases", chain},
                    {"declared_key", declared.key_columns},
                    {"key_fraction", fraction},
                    {"projection", cols}};
    attempt.bases_used = chain;
    return attempt;
}

}  // namespace

Table nullify(const Table& t, const std::vector<std::string>& protected_cols, double p,
              std::uint64_t seed) {
    const auto exempt = protected_positions(t, protected_cols);
    Rng rng(seed);
    Table out(t.name(), t.columns());
    out.reserve(t.row_count());
    for (const Row& row : t.rows()) {
        Row next = row;
        for (std::size_t c = 0; c < next.size(); ++c) {
            if (exempt.count(c)) continue;
            if (rng.chance(p)) next[c] = Cell::null();
        }
        out.add_row(std::move(next));
    }
    return out;
}

Table errorize(const Table& t, const std::vector<std::string>& protected_cols, double p,
               std::uint64_t seed) {
    const auto exempt = protected_positions(t, protected_cols);
    Rng rng(seed);
    Table out(t.name(), t.columns());
    out.reserve(t.row_count());
    for (std::size_t r = 0; r < t.row_count(); ++r) {
        Row next = t.row(r);
        for (std::size_t c = 0; c < next.size(); ++c) {
            if (exempt.count(c)) continue;
            if (rng.chance(p)) {
                next[c] = Cell::atom("ERR-" + t.name() + "-" + std::to_string(r) + "-" +
                                     std::to_string(c));
            }
        }
        out.add_row(std::move(next));
    }
    return out;
}

std::pair<Table, Table> complementary_split(const Table& t,
                                            const std::vector<std::string>& protected_cols,
                                            std::uint64_t seed) {
    const auto exempt = protected_positions(t, protected_cols);
    std::vector<Row> a_rows = t.rows();
    std::vector<Row> b_rows = t.rows();

    // Per column, a seeded shuffle alternates the rows between the halves, so
    // every unprotected cell goes Null in exactly one of them and each half
    // keeps about half of every column.
    for (std::size_t c = 0; c < t.column_count(); ++c) {
        if (exempt.count(c)) continue;
        std::vector<std::size_t> order(t.row_count());
        for (std::size_t r = 0; r < order.size(); ++r) order[r] = r;
        Rng rng(mix(seed, c));
        shuffle_indices(order, rng);
        for (std::size_t i = 0; i < order.size(); ++i) {
            if (i % 2 == 0) {
                b_rows[order[i]][c] = Cell::null();
            } else {
                a_rows[order[i]][c] = Cell::null();
            }
        }
    }

    Table a(t.name() + "_ca", t.columns());
    Table b(t.name() + "_cb", t.columns());
    a.reserve(a_rows.size());
    b.reserve(b_rows.size());
    for (auto& row : a_rows) a.add_row(std::move(row));
    for (auto& row : b_rows) b.add_row(std::move(row));
    return {std::move(a), std::move(b)};
}

std::vector<GeneratedBase> generate_bases(const BenchSpec& spec) {
    const std::size_t count = std::max<std::size_t>(1, spec.base_tables);
    const std::size_t rows = std::max<std::size_t>(1, spec.rows);
    const std::size_t columns = std::max<std::size_t>(2, spec.columns);
    const std::size_t width = index_width(count, 3);

    std::vector<GeneratedBase> bases;
    bases.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const std::string key_col = "t" + std::to_string(i) + "_key";
        const std::string fk_col = i > 0 ? "t" + std::to_string(i - 1) + "_key" : "";

        std::vector<std::string> cols{key_col};
        if (i > 0) cols.push_back(fk_col);
        while (cols.size() < columns) {
            cols.push_back("t" + std::to_string(i) + "_c" + std::to_string(cols.size()));
        }

        // Link values are a seeded permutation of the parent keys: every
        // parent row is referenced exactly once, so a chain join keyed on any
        // table along the chain keeps that key unique.
        std::vector<std::size_t> perm(rows);
        for (std::size_t r = 0; r < rows; ++r) perm[r] = r;
        if (i > 0) {
            Rng rng(mix(spec.seed, SaltFk, i));
            shuffle_indices(perm, rng);
        }

        Table table("base_" + pad_index(i, width), cols);
        table.reserve(rows);
        for (std::size_t r = 0; r < rows; ++r) {
            Row row;
            row.reserve(cols.size());
            row.push_back(Cell::atom("k" + std::to_string(i) + "_" + std::to_string(r)));
            if (i > 0) {
                row.push_back(
                    Cell::atom("k" + std::to_string(i - 1) + "_" + std::to_string(perm[r])));
            }
            // Unique atom per cell: complementary halves end up value-disjoint
            // per column, and no column of one base matches another base's.
            for (std::size_t c = row.size(); c < cols.size(); ++c) {
                row.push_back(Cell::atom("v" + std::to_string(i) + "_" + std::to_string(c) +
                                         "_" + std::to_string(r)));
            }
            table.add_row(std::move(row));
        }

        GeneratedBase base;
        base.key = KeySpec{{key_col}};
        base.protected_cols = {key_col};
        if (i > 0) {
            base.protected_cols.push_back(fk_col);
            base.fk_parent = i - 1;
            base.fk_column = fk_col;
        }
        base.table = std::move(table);
        bases.push_back(std::move(base));
    }
    return bases;
}

std::vector<GeneratedSource> generate_queries(const std::vector<GeneratedBase>& bases,
                                              const BenchSpec& spec,
                                              std::vector<std::string>* warnings) {
    if (bases.empty()) throw ContractError("generate_queries: no base tables");
    constexpr std::size_t max_attempts = 20;
    const std::uint64_t seed = mix(spec.seed, SaltQuery);
    const std::size_t width = index_width(spec.query_count, 2);

    std::vector<GeneratedSource> sources;
    sources.reserve(spec.query_count);
    for (std::size_t q = 0; q < spec.query_count; ++q) {
        const std::string name = "source_" + pad_index(q, width);
        bool produced = false;
        for (std::size_t attempt = 0; attempt < max_attempts && !produced; ++attempt) {
            Rng rng(mix(seed, q, attempt));
            QueryAttempt built;
            switch (q % 3) {
                case 0: built = build_select(bases, rng); break;
                case 1: built = build_union(bases, rng); break;
                default:
                    built = bases.size() >= 2 ? build_join(bases, spec.complementary_mode, rng)
                                              : build_select(bases, rng);
                    break;
            }
            if (!valid_source(built.table, built.key)) continue;
            built.table.set_name(name);
            sources.push_back({std::move(built.table), std::move(built.key),
                               std::move(built.plan), std::move(built.bases_used)});
            produced = true;
        }
        if (!produced && warnings) {
            warnings->push_back("query " + name + " skipped: no valid plan after " +
                                std::to_string(max_attempts) + " attempts");
        }
    }
    return sources;
}

BenchmarkLayout write_benchmark(const BenchSpec& spec, const fs::path& out_dir,
                                const IoOptions& io) {
    BenchmarkLayout layout;
    layout.root = out_dir;
    layout.lake_dir = out_dir / "lake";
    layout.source_dir = out_dir / "sources";
    layout.manifest_path = out_dir / "manifest.json";

    fs::create_directories(layout.root);
    fs::remove_all(layout.lake_dir);
    fs::remove_all(layout.source_dir);
    fs::create_directories(layout.lake_dir);
    fs::create_directories(layout.source_dir);

    const auto bases = generate_bases(spec);
    std::vector<std::string> warnings;

    json jbases = json::array();
    for (const auto& base : bases) {
        json jbase = {{"name", base.table.name()},
                      {"key", base.key.key_columns},
                      {"columns", base.table.columns()},
                      {"protected", base.protected_cols}};
        if (base.fk_parent) {
            jbase["fk_parent"] = bases[*base.fk_parent].table.name();
            jbase["fk_column"] = base.fk_column;
        } else {
            jbase["fk_parent"] = nullptr;
            jbase["fk_column"] = nullptr;
        }
        jbases.push_back(std::move(jbase));
    }

    json jvariants = json::array();
    const auto emit_variant = [&](const Table& variant, const GeneratedBase& origin,
                                  const std::string& kind, bool erroneous) {
        const std::string file = variant.name() + ".csv";
        write_table(variant, layout.lake_dir / file, io);
        jvariants.push_back({{"name", variant.name()},
                             {"origin", origin.table.name()},
                             {"kind", kind},
                             {"erroneous", erroneous},
                             {"file", "lake/" + file}});
    };

    for (std::size_t i = 0; i < bases.size(); ++i) {
        const GeneratedBase& base = bases[i];
        if (spec.complementary_mode) {
            auto [a, b] =
                complementary_split(base.table, base.protected_cols, mix(spec.seed, SaltSplit, i));
            emit_variant(a, base, "complementary_half", false);
            emit_variant(b, base, "complementary_half", false);
        } else {
            for (std::size_t v = 0; v < 2; ++v) {
                Table copy = copy_named(base.table, base.table.name() + "_n" + std::to_string(v + 1));
                emit_variant(nullify(copy, base.protected_cols, spec.null_rate,
                                     mix(spec.seed, SaltNull, 2 * i + v)),
                             base, "nullified", false);
            }
            for (std::size_t v = 0; v < 2; ++v) {
                Table copy = copy_named(base.table, base.table.name() + "_e" + std::to_string(v + 1));
                emit_variant(errorize(copy, base.protected_cols, spec.error_rate,
                                      mix(spec.seed, SaltError, 2 * i + v)),
                             base, "erroneous", true);
            }
        }
    }

    const auto sources = generate_queries(bases, spec, &warnings);
    json jsources = json::array();
    for (const auto& source : sources) {
        const std::string file = source.table.name() + ".csv";
        write_table(source.table, layout.source_dir / file, io);
        jsources.push_back({{"name", source.table.name()},
                            {"key", source.key.key_columns},
                            {"plan", source.plan},
                            {"bases_used", source.bases_used},
                            {"rows", source.table.row_count()},
                            {"file", "sources/" + file}});
    }

    layout.manifest = {{"format", "reclaim-bench"},
                       {"version", 1},
                       {"spec",
                        {{"seed", spec.seed},
                         {"base_tables", spec.base_tables},
                         {"rows", spec.rows},
                         {"columns", spec.columns},
                         {"null_rate", spec.null_rate},
                         {"error_rate", spec.error_rate},
                         {"query_count", spec.query_count},
                         {"complementary_mode", spec.complementary_mode}}},
                       {"bases", std::move(jbases)},
                       {"variants", std::move(jvariants)},
                       {"sources", std::move(jsources)},
                       {"warnings", warnings}};

    std::ofstream out(layout.manifest_path);
    if (!out) throw IoError("cannot write manifest: " + layout.manifest_path.string());
    out << layout.manifest.dump(2) << '\n';
    return layout;
}

}  // namespace reclaim::benchgen
