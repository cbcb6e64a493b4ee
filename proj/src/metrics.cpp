#include "reclaim/metrics.hpp"

#include <cmath>
#include <limits>
#include <set>

#include "reclaim/errors.hpp"

namespace reclaim::metrics {

namespace {

Cell lowered(const Cell& c) {
    return c.is_labeled() ? Cell::null() : c;
}

struct SchemaView {
    std::vector<std::size_t> key_pos;
    std::vector<std::size_t> attr_pos;  // non-key positions, schema order

    SchemaView(const Table& source, const KeySpec& key) {
        key_pos = key_positions(source, key);
        std::vector<bool> is_key(source.column_count(), false);
        for (std::size_t p : key_pos) is_key[p] = true;
        for (std::size_t c = 0; c < source.column_count(); ++c) {
            if (!is_key[c]) attr_pos.push_back(c);
        }
        if (attr_pos.empty()) {
            throw ContractError("similarity undefined: no non-key attributes");
        }
    }

    std::size_t n() const { return attr_pos.size(); }
};

/// Error-aware counts over the non-key attributes of two same-schema rows.
struct ErrorCounts {
    std::int64_t alpha = 0;  // agreements, shared Null included
    std::int64_t delta = 0;  // non-null cells of t that contradict s
};

ErrorCounts error_counts(const Row& s, const Row& t, const SchemaView& view) {
    ErrorCounts out;
    for (std::size_t p : view.attr_pos) {
        const Cell& sv = s[p];
        const Cell& tv = t[p];
        if (sv == tv) {
            ++out.alpha;
        } else if (tv.has_value()) {
            ++out.delta;
        }
    }
    return out;
}

/// Shared non-null agreements only (a shared Null counts for nothing).
std::int64_t value_agreements(const Row& s, const Row& t, const SchemaView& view) {
    std::int64_t alpha = 0;
    for (std::size_t p : view.attr_pos) {
        if (s[p].has_value() && s[p] == t[p]) ++alpha;
    }
    return alpha;
}

std::optional<KeyTuple> key_tuple_of(const Row& row, const std::vector<std::size_t>& key_pos) {
    KeyTuple tuple;
    tuple.reserve(key_pos.size());
    for (std::size_t p : key_pos) {
        if (!row[p].is_atom()) return std::nullopt;
        tuple.push_back(row[p].text());
    }
    return tuple;
}

/// Row index of the aligned group maximizing n + alpha - delta; first wins ties.
std::size_t best_aligned_row(const Table& aligned, const std::vector<std::size_t>& group,
                             const Row& s, const SchemaView& view) {
    std::size_t best = group.front();
    std::int64_t best_score = std::numeric_limits<std::int64_t>::min();
    for (std::size_t r : group) {
        const ErrorCounts ec = error_counts(s, aligned.row(r), view);
        const std::int64_t score = ec.alpha - ec.delta;
        if (score > best_score) {
            best_score = score;
            best = r;
        }
    }
    return best;
}

void require_rows(const Table& source) {
    if (source.row_count() == 0) {
        throw ContractError("similarity undefined: empty source table");
    }
}

}  // namespace

Table aligned_to_schema(const Table& source, const Table& t) {
    std::vector<std::optional<std::size_t>> mapping;
    mapping.reserve(source.column_count());
    for (const auto& name : source.columns()) mapping.push_back(t.column_index(name));
    Table out(t.name(), source.columns());
    out.reserve(t.row_count());
    for (const Row& row : t.rows()) {
        Row aligned;
        aligned.reserve(mapping.size());
        for (const auto& idx : mapping) {
            aligned.push_back(idx ? lowered(row[*idx]) : Cell::null());
        }
        out.add_row(std::move(aligned));
    }
    return out;
}

double tuple_similarity_error_aware(const Table& source, std::size_t s_row,
                                    const Table& reclaimed, std::size_t t_row,
                                    const KeySpec& key) {
    if (s_row >= source.row_count() || t_row >= reclaimed.row_count()) {
        throw ContractError("tuple similarity: row index out of range");
    }
    const SchemaView view(source, key);
    for (const auto& name : source.columns()) {
        if (!reclaimed.has_column(name)) {
            throw SchemaError("tuple similarity: reclaimed table lacks column '" + name + "'");
        }
    }
    const Table aligned = aligned_to_schema(source, reclaimed);
    const ErrorCounts ec = error_counts(source.row(s_row), aligned.row(t_row), view);
    return static_cast<double>(ec.alpha - ec.delta) / static_cast<double>(view.n());
}

Fraction instance_similarity_exact(const Table& source, const Table& reclaimed,
                                   const KeySpec& key) {
    require_rows(source);
    const SchemaView view(source, key);
    const Table aligned = aligned_to_schema(source, reclaimed);
    const auto groups = key_projection(aligned, key);

    std::int64_t num = 0;
    for (const Row& s : source.rows()) {
        const auto tuple = key_tuple_of(s, view.key_pos);
        if (!tuple) continue;
        const auto it = groups.find(*tuple);
        if (it == groups.end()) continue;
        std::int64_t best = 0;
        for (std::size_t r : it->second) {
            best = std::max(best, value_agreements(s, aligned.row(r), view));
        }
        num += best;
    }
    return Fraction{num, static_cast<std::int64_t>(view.n() * source.row_count())};
}

double instance_similarity(const Table& source, const Table& reclaimed, const KeySpec& key) {
    return instance_similarity_exact(source, reclaimed, key).value();
}

Fraction ise_exact(const Table& source, const Table& reclaimed, const KeySpec& key) {
    require_rows(source);
    const SchemaView view(source, key);
    const Table aligned = aligned_to_schema(source, reclaimed);
    const auto groups = key_projection(aligned, key);
    const auto n = static_cast<std::int64_t>(view.n());

    // Per source tuple: n * (1 + max E) = n + alpha - delta of the best
    // aligned row, or n when no row shares the key. One final division keeps
    // the score exact.
    std::int64_t num = 0;
    for (const Row& s : source.rows()) {
        const auto tuple = key_tuple_of(s, view.key_pos);
        const auto it = tuple ? groups.find(*tuple) : groups.end();
        if (!tuple || it == groups.end()) {
            num += n;
            continue;
        }
        std::int64_t best = std::numeric_limits<std::int64_t>::min();
        for (std::size_t r : it->second) {
            const ErrorCounts ec = error_counts(s, aligned.row(r), view);
            best = std::max(best, n + ec.alpha - ec.delta);
        }
        num += best;
    }
    return Fraction{num, 2 * n * static_cast<std::int64_t>(source.row_count())};
}

double ise(const Table& source, const Table& reclaimed, const KeySpec& key) {
    return ise_exact(source, reclaimed, key).value();
}

double instance_divergence(const Table& source, const Table& reclaimed, const KeySpec& key) {
    return 1.0 - instance_similarity(source, reclaimed, key);
}

std::pair<double, double> recall_precision(const Table& source, const Table& reclaimed) {
    const Table aligned = aligned_to_schema(source, reclaimed);
    const std::set<Row> want(source.rows().begin(), source.rows().end());
    const std::set<Row> got(aligned.rows().begin(), aligned.rows().end());
    std::size_t hit = 0;
    for (const Row& row : got) hit += want.count(row);
    const double recall =
        want.empty() ? 1.0 : static_cast<double>(hit) / static_cast<double>(want.size());
    const double precision =
        got.empty() ? 0.0 : static_cast<double>(hit) / static_cast<double>(got.size());
    return {recall, precision};
}

double conditional_kl(const Table& source, const Table& reclaimed, const KeySpec& key,
                      const KlOptions& opts) {
    require_rows(source);
    const SchemaView view(source, key);
    const Table aligned = aligned_to_schema(source, reclaimed);
    const auto groups = key_projection(aligned, key);

    const double null_cost = -std::log(opts.epsilon);
    const double error_cost = 2.0 * null_cost;

    std::size_t present = 0;
    double total = 0.0;
    for (const Row& s : source.rows()) {
        const auto tuple = key_tuple_of(s, view.key_pos);
        const auto it = tuple ? groups.find(*tuple) : groups.end();
        if (!tuple || it == groups.end()) {
            total += null_cost * static_cast<double>(view.n());
            continue;
        }
        ++present;
        const Row& t = aligned.row(best_aligned_row(aligned, it->second, s, view));
        for (std::size_t p : view.attr_pos) {
            if (s[p] == t[p]) continue;          // full mass on the right value
            if (t[p].is_null()) {
                total += null_cost;              // value absent, mass smoothed
            } else {
                total += error_cost;             // mass committed to a wrong value
            }
        }
    }
    if (present == 0) return std::numeric_limits<double>::infinity();
    // total / (Q(K) * |S|) with Q(K) = present / |S|.
    return total / static_cast<double>(present);
}

MetricReport evaluate_all(const Table& source, const Table& reclaimed, const KeySpec& key,
                          const KlOptions& opts) {
    MetricReport report;
    report.ise = ise(source, reclaimed, key);
    report.instance_similarity = instance_similarity(source, reclaimed, key);
    const auto rp = recall_precision(source, reclaimed);
    report.recall = rp.first;
    report.precision = rp.second;
    report.instance_divergence = 1.0 - report.instance_similarity;
    report.kl_divergence = conditional_kl(source, reclaimed, key, opts);
    return report;
}

}  // namespace reclaim::metrics
