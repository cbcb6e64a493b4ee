#include "reclaim/discovery.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "reclaim/errors.hpp"
#include "reclaim/kernels.hpp"

namespace reclaim::discovery {

namespace {

double containment_fraction(const std::vector<std::uint32_t>& column_ids,
                            const ResolvedColumn& source_col) {
    if (source_col.distinct_count == 0) return 0.0;
    const std::size_t overlap = kernels::active().intersect_count(
        column_ids.data(), column_ids.size(), source_col.ids.data(), source_col.ids.size());
    return static_cast<double>(overlap) / static_cast<double>(source_col.distinct_count);
}

struct TableScore {
    std::string name;
    double sum = 0.0;
    std::size_t matched_columns = 0;
    double avg() const { return sum / static_cast<double>(matched_columns); }
};

/// One lake column's claim on one source column.
struct Claim {
    std::size_t lake_col = 0;
    std::size_t source_col = 0;
    double fraction = 0.0;
    std::size_t overlap = 0;
};

}  // namespace

std::vector<ScoredColumnCandidate> diversify(const std::vector<ColumnCandidate>& ranked,
                                             const ResolvedColumn& source_col, double tau) {
    std::vector<ScoredColumnCandidate> scored;
    scored.reserve(ranked.size());
    const auto& ops = kernels::active();

    for (std::size_t i = 0; i < ranked.size(); ++i) {
        const ColumnCandidate& cand = ranked[i];
        const double raw = cand.column_ids ? containment_fraction(*cand.column_ids, source_col)
                                           : cand.source_overlap;
        // The cut is on raw source overlap; the redundancy penalty only
        // reorders survivors and may push their score below tau or zero.
        if (raw < tau) continue;
        double score = raw;
        if (i > 0) {
            const ColumnCandidate& prev = ranked[i - 1];
            if (cand.column_ids && prev.column_ids && !cand.column_ids->empty()) {
                const std::size_t shared = ops.intersect_count(
                    cand.column_ids->data(), cand.column_ids->size(), prev.column_ids->data(),
                    prev.column_ids->size());
                score -= static_cast<double>(shared) / static_cast<double>(cand.column_ids->size());
            }
        }
        scored.push_back({cand.table, cand.column, score});
    }
    std::stable_sort(scored.begin(), scored.end(),
                     [](const ScoredColumnCandidate& a, const ScoredColumnCandidate& b) {
                         return a.score > b.score;
                     });
    return scored;
}

CandidateSet discover_candidates(const LakeIndex& index, const Table& source,
                                 const KeySpec& key, const DiscoveryConfig& cfg) {
    validate_source_key(source, key);
    CandidateSet out;

    // Resolve every source column once; the id sets drive all overlap math.
    std::vector<ResolvedColumn> resolved;
    resolved.reserve(source.column_count());
    for (std::size_t c = 0; c < source.column_count(); ++c) {
        resolved.push_back(index.resolve(sorted_distinct_atoms(source, c)));
    }

    // Per source column: rank each table's best column by containment, keep
    // the top_k tables, and score them with the redundancy penalty. A table's
    // rank is the mean of its diverse scores over the columns it matched.
    std::map<std::string, TableScore> scores;
    for (std::size_t c = 0; c < source.column_count(); ++c) {
        const auto atoms = sorted_distinct_atoms(source, c);
        if (atoms.empty()) continue;
        const auto hits = index.column_containment(atoms);
        std::vector<ColumnCandidate> ranked;
        std::unordered_set<std::string> seen;
        for (const ContainmentHit& hit : hits) {
            if (!seen.insert(hit.table).second) continue;
            if (cfg.top_k > 0 && ranked.size() == cfg.top_k) break;
            const auto tid = index.table_id(hit.table);
            const auto cid = index.table(*tid).column_index(hit.column);
            ranked.push_back({hit.table, hit.column, hit.fraction,
                              &index.column_ids(*tid, *cid)});
        }
        for (const auto& entry : diversify(ranked, resolved[c], cfg.tau)) {
            TableScore& score = scores[entry.table];
            score.name = entry.table;
            score.sum += entry.score;
            score.matched_columns += 1;
        }
    }

    std::vector<TableScore> ranking;
    ranking.reserve(scores.size());
    for (const auto& [name, score] : scores) ranking.push_back(score);
    std::sort(ranking.begin(), ranking.end(), [](const TableScore& a, const TableScore& b) {
        if (a.avg() != b.avg()) return a.avg() > b.avg();
        return a.name < b.name;
    });

    // Column assignment and materialization per ranked table.
    struct Prepared {
        Candidate candidate;
        /// source column index -> sorted ids retained from the source column.
        std::map<std::size_t, std::vector<std::uint32_t>> retained;
    };
    std::vector<Prepared> prepared;

    for (const TableScore& entry : ranking) {
        const std::size_t tid = *index.table_id(entry.name);
        const Table& lake = index.table(tid);

        // All viable (lake column, source column) claims, strongest first.
        std::vector<Claim> claims;
        for (std::size_t lc = 0; lc < lake.column_count(); ++lc) {
            const auto& ids = index.column_ids(tid, lc);
            for (std::size_t sc = 0; sc < source.column_count(); ++sc) {
                if (resolved[sc].distinct_count == 0) continue;
                const std::size_t overlap = kernels::active().intersect_count(
                    ids.data(), ids.size(), resolved[sc].ids.data(), resolved[sc].ids.size());
                if (overlap == 0) continue;
                const double fraction = static_cast<double>(overlap) /
                                        static_cast<double>(resolved[sc].distinct_count);
                if (fraction < cfg.tau) continue;
                claims.push_back({lc, sc, fraction, overlap});
            }
        }
        std::sort(claims.begin(), claims.end(), [](const Claim& a, const Claim& b) {
            if (a.fraction != b.fraction) return a.fraction > b.fraction;
            if (a.source_col != b.source_col) return a.source_col < b.source_col;
            return a.lake_col < b.lake_col;
        });

        // Greedy one-to-one matching: strongest claim wins, losers fall back
        // to their next unclaimed source column.
        std::vector<std::optional<std::size_t>> assigned(lake.column_count());
        std::vector<bool> source_taken(source.column_count(), false);
        for (const Claim& claim : claims) {
            if (assigned[claim.lake_col] || source_taken[claim.source_col]) continue;
            assigned[claim.lake_col] = claim.source_col;
            source_taken[claim.source_col] = true;
        }
        const bool any_match =
            std::any_of(assigned.begin(), assigned.end(), [](const auto& a) { return bool(a); });
        if (!any_match) continue;

        // Renamed schema: matched columns take the source name; unmatched
        // columns keep theirs unless that would collide with a source column
        // name (which must stay reserved for matched data).
        std::vector<std::string> columns(lake.column_count());
        std::set<std::string> used;
        for (std::size_t lc = 0; lc < lake.column_count(); ++lc) {
            if (assigned[lc]) {
                columns[lc] = source.columns()[*assigned[lc]];
                used.insert(columns[lc]);
            }
        }
        for (std::size_t lc = 0; lc < lake.column_count(); ++lc) {
            if (assigned[lc]) continue;
            std::string name = lake.columns()[lc];
            if (source.has_column(name) || used.count(name)) {
                name = lake.name() + "." + name;
                while (used.count(name)) name += "_";
            }
            columns[lc] = name;
            used.insert(name);
        }

        Prepared prep;
        prep.candidate.lake_name = lake.name();
        prep.candidate.avg_diverse_score = entry.avg();
        Table renamed(lake.name(), columns);
        renamed.reserve(lake.row_count());
        for (const Row& row : lake.rows()) renamed.add_row(row);
        prep.candidate.table = std::move(renamed);
        for (std::size_t lc = 0; lc < lake.column_count(); ++lc) {
            if (!assigned[lc]) continue;
            const std::size_t sc = *assigned[lc];
            prep.candidate.column_map[lake.columns()[lc]] = source.columns()[sc];
            const auto& ids = index.column_ids(tid, lc);
            std::vector<std::uint32_t> kept;
            std::set_intersection(ids.begin(), ids.end(), resolved[sc].ids.begin(),
                                  resolved[sc].ids.end(), std::back_inserter(kept));
            prep.retained.emplace(sc, std::move(kept));
        }

        // Aligned-tuple verification: rows sharing at least one matched value
        // with the source must keep per-column overlap >= tau. Every retained
        // atom's own row is such a row, so the restricted overlap equals the
        // full intersection already held in prep.retained.
        bool verified = true;
        for (const auto& [sc, kept] : prep.retained) {
            const double fraction = static_cast<double>(kept.size()) /
                                    static_cast<double>(resolved[sc].distinct_count);
            if (fraction < cfg.tau) {
                verified = false;
                break;
            }
        }
        if (!verified) {
            out.warnings.push_back("candidate '" + lake.name() +
                                   "' discarded: aligned-tuple overlap below tau");
            continue;
        }
        prepared.push_back(std::move(prep));
    }

    // Drop candidates whose matched source columns and retained values are
    // contained in another candidate's; exact duplicates keep the earlier rank.
    const auto contained_in = [](const Prepared& a, const Prepared& b) {
        bool proper = a.retained.size() < b.retained.size();
        for (const auto& [sc, ids] : a.retained) {
            const auto it = b.retained.find(sc);
            if (it == b.retained.end()) return std::pair{false, false};
            if (!std::includes(it->second.begin(), it->second.end(), ids.begin(), ids.end())) {
                return std::pair{false, false};
            }
            if (ids.size() < it->second.size()) proper = true;
        }
        return std::pair{true, proper};
    };
    std::vector<bool> dropped(prepared.size(), false);
    for (std::size_t i = 0; i < prepared.size(); ++i) {
        for (std::size_t j = 0; j < prepared.size() && !dropped[i]; ++j) {
            if (i == j || dropped[j]) continue;
            const auto [inside, proper] = contained_in(prepared[i], prepared[j]);
            if (inside && (proper || j < i)) {
                dropped[i] = true;
                out.warnings.push_back("candidate '" + prepared[i].candidate.lake_name +
                                       "' dropped: matched values contained in '" +
                                       prepared[j].candidate.lake_name + "'");
            }
        }
    }
    for (std::size_t i = 0; i < prepared.size(); ++i) {
        if (!dropped[i]) out.candidates.push_back(std::move(prepared[i].candidate));
    }
    return out;
}

}  // namespace reclaim::discovery
