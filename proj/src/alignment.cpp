#include "reclaim/alignment.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <set>

#include "reclaim/errors.hpp"

namespace reclaim::alignment {

namespace {

struct SourceView {
    std::vector<std::size_t> key_pos;
    std::vector<bool> is_key;
    std::size_t attr_count = 0;

    SourceView(const Table& source, const KeySpec& key) {
        key_pos = key_positions(source, key);
        is_key.assign(source.column_count(), false);
        for (std::size_t p : key_pos) is_key[p] = true;
        attr_count = source.column_count() - key_pos.size();
        if (attr_count == 0) {
            throw ContractError("alignment undefined: no non-key attributes");
        }
    }
};

std::optional<KeyTuple> key_tuple_of(const Row& row, const std::vector<std::size_t>& pos) {
    KeyTuple tuple;
    tuple.reserve(pos.size());
    for (std::size_t p : pos) {
        if (!row[p].is_atom()) return std::nullopt;
        tuple.push_back(row[p].text());
    }
    return tuple;
}

void sort_unique(std::vector<TritRow>& rows) {
    std::sort(rows.begin(), rows.end());
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
}

std::int64_t row_score(const TritRow& row, const SourceView& view) {
    const auto& ops = kernels::active();
    const auto pos = static_cast<std::int64_t>(ops.count_pos(row.data(), row.size()));
    const auto neg = static_cast<std::int64_t>(ops.count_neg(row.data(), row.size()));
    const auto keys = static_cast<std::int64_t>(view.key_pos.size());
    const auto n = static_cast<std::int64_t>(view.attr_count);
    // n + alpha - delta, with key positions (always +1) excluded from alpha.
    return n + (pos - keys) - neg;
}

}  // namespace

AlignmentMatrix initialize_matrix(const Table& candidate, const Table& source,
                                  const KeySpec& key) {
    const SourceView view(source, key);

    std::set<KeyTuple> source_keys;
    std::map<KeyTuple, std::size_t> source_row_of;
    for (std::size_t r = 0; r < source.row_count(); ++r) {
        if (auto tuple = key_tuple_of(source.row(r), view.key_pos)) {
            source_keys.insert(*tuple);
            source_row_of.emplace(*tuple, r);
        }
    }

    std::vector<std::optional<std::size_t>> mapping;
    mapping.reserve(source.column_count());
    for (const auto& name : source.columns()) mapping.push_back(candidate.column_index(name));

    std::vector<std::size_t> cand_key_pos;
    for (std::size_t p : view.key_pos) {
        if (!mapping[p]) {
            throw ContractError("initialize_matrix: candidate '" + candidate.name() +
                                "' lacks key column '" + source.columns()[p] + "'");
        }
        cand_key_pos.push_back(*mapping[p]);
    }

    AlignmentMatrix m;
    m.width = source.column_count();

    for (const Row& row : candidate.rows()) {
        const auto tuple = key_tuple_of(row, cand_key_pos);
        if (!tuple) continue;
        const auto at = source_row_of.find(*tuple);
        if (at == source_row_of.end()) continue;
        const Row& s = source.row(at->second);

        TritRow trits(m.width, 0);
        for (std::size_t c = 0; c < m.width; ++c) {
            if (view.is_key[c]) {
                trits[c] = 1;
                continue;
            }
            // Labeled nulls act as plain nulls for alignment purposes.
            Cell v = mapping[c] ? row[*mapping[c]] : Cell::null();
            if (v.is_labeled()) v = Cell::null();
            if (v == s[c]) {
                trits[c] = 1;           // reproduced (shared Null included)
            } else if (!v.has_value()) {
                trits[c] = 0;           // value missing
            } else {
                trits[c] = -1;          // contradiction
            }
        }
        m.rows_by_key[*tuple].push_back(std::move(trits));
    }
    for (auto& [tuple, rows] : m.rows_by_key) sort_unique(rows);
    return m;
}

AlignmentMatrix combine(const AlignmentMatrix& m1, const AlignmentMatrix& m2) {
    if (m1.width != m2.width) {
        throw ContractError("combine: alignment matrices have different widths");
    }
    const auto& ops = kernels::active();

    AlignmentMatrix out;
    out.width = m1.width;
    for (const auto& [tuple, rows] : m1.rows_by_key) {
        const auto other = m2.rows_by_key.find(tuple);
        if (other == m2.rows_by_key.end()) {
            out.rows_by_key.emplace(tuple, rows);
            continue;
        }
        std::vector<TritRow> merged;
        for (const TritRow& a : rows) {
            for (const TritRow& b : other->second) {
                if (ops.any_conflict(a.data(), b.data(), a.size())) {
                    merged.push_back(a);
                    merged.push_back(b);
                } else {
                    TritRow fused(a.size());
                    ops.elementwise_max(a.data(), b.data(), fused.data(), a.size());
                    merged.push_back(std::move(fused));
                }
            }
        }
        sort_unique(merged);
        out.rows_by_key.emplace(tuple, std::move(merged));
    }
    for (const auto& [tuple, rows] : m2.rows_by_key) {
        if (!m1.rows_by_key.count(tuple)) out.rows_by_key.emplace(tuple, rows);
    }
    return out;
}

metrics::Fraction evaluate_matrix_exact(const AlignmentMatrix& m, const Table& source,
                                        const KeySpec& key) {
    if (source.row_count() == 0) {
        throw ContractError("alignment undefined: empty source table");
    }
    const SourceView view(source, key);
    if (m.width != source.column_count()) {
        throw ContractError("evaluate: matrix width does not match source schema");
    }
    const auto n = static_cast<std::int64_t>(view.attr_count);

    std::int64_t num = 0;
    for (const Row& s : source.rows()) {
        const auto tuple = key_tuple_of(s, view.key_pos);
        const auto it = tuple ? m.rows_by_key.find(*tuple) : m.rows_by_key.end();
        if (!tuple || it == m.rows_by_key.end() || it->second.empty()) {
            num += n;
            continue;
        }
        std::int64_t best = std::numeric_limits<std::int64_t>::min();
        for (const TritRow& row : it->second) {
            best = std::max(best, row_score(row, view));
        }
        num += best;
    }
    return metrics::Fraction{num, 2 * n * static_cast<std::int64_t>(source.row_count())};
}

double evaluate_matrix(const AlignmentMatrix& m, const Table& source, const KeySpec& key) {
    return evaluate_matrix_exact(m, source, key).value();
}

TraversalResult traverse(const std::vector<discovery::Candidate>& candidates,
                         const Table& source, const KeySpec& key) {
    TraversalResult result;
    if (candidates.empty()) return result;

    std::vector<AlignmentMatrix> matrices;
    matrices.reserve(candidates.size());
    for (const auto& cand : candidates) {
        matrices.push_back(initialize_matrix(cand.table, source, key));
    }

    // Numerators share the denominator 2 * n * |S|, so integer comparison of
    // numerators is an exact score comparison.
    std::vector<std::int64_t> solo(candidates.size());
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        solo[i] = evaluate_matrix_exact(matrices[i], source, key).num;
    }
    std::size_t start = 0;
    for (std::size_t i = 1; i < candidates.size(); ++i) {
        if (solo[i] > solo[start]) start = i;
    }

    std::vector<bool> used(candidates.size(), false);
    used[start] = true;
    result.chosen.push_back(start);
    result.combined = matrices[start];
    metrics::Fraction current = evaluate_matrix_exact(result.combined, source, key);
    result.trace.push_back({start, candidates[start].table.name(), current.value()});

    while (true) {
        std::int64_t best_num = current.num;
        std::size_t best_index = candidates.size();
        AlignmentMatrix best_combined;
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            if (used[i]) continue;
            AlignmentMatrix merged = combine(result.combined, matrices[i]);
            const std::int64_t num = evaluate_matrix_exact(merged, source, key).num;
            if (num > best_num) {
                best_num = num;
                best_index = i;
                best_combined = std::move(merged);
            }
        }
        if (best_index == candidates.size()) break;
        used[best_index] = true;
        result.chosen.push_back(best_index);
        result.combined = std::move(best_combined);
        current = evaluate_matrix_exact(result.combined, source, key);
        result.trace.push_back({best_index, candidates[best_index].table.name(), current.value()});
    }
    result.final_score = current.value();
    return result;
}

}  // namespace reclaim::alignment
